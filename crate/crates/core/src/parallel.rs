//! Parallel surfaces `f_t = f + tν` and their swallowtails.

use serde::Serialize;

use crate::config::{Tolerances, DEFAULT_ORDER};
use crate::curvature::{
    bounded_branch, principal_curvature_on_branch, principal_direction, regular_principal, Branch,
    PrincipalData, PrincipalDirection,
};
use crate::error::{GeomError, Result};
use crate::frames::{build_frame, EdgeFrame};
use crate::grid::{edge_crossings, SampleGrid};
use crate::jets::{det3, Jet2, JetVec3};
use crate::poly::Poly2;
use crate::ridge::{
    regular_ridge, ridge_closed_form, ridge_from_parts, sub_parabolic, RidgeOrder, RidgeReport,
};
use crate::singularity::{classify, SingClass, Verdict};
use crate::surface::{extract_normal_form, NormalFormCoeffs, PolySurface};

/// Bisection bracket length for singular-set refinement.
pub const BISECT_TOL: f64 = 1e-10;

/// `f_t = f + tν`, evaluated pointwise; `ν` is not polynomial.
#[derive(Debug, Clone)]
pub struct ParallelSurface {
    pub base: PolySurface,
    pub t: f64,
    pub order: usize,
    /// Branch of the bounded curvature used for `λ̂_t = 1 − tκ̂`; fixed by the
    /// anchor when built with [`make_parallel_t0`].
    pub branch: Option<Branch>,
    /// Set when `t = 1/κ̂(anchor)`.
    pub anchor: Option<[f64; 2]>,
    fu: [Poly2; 3],
    psi: [Poly2; 3],
}

/// Jets of the parallel surface at one point.
#[derive(Debug, Clone)]
pub struct ParallelPoint {
    pub frame: EdgeFrame,
    pub principal: PrincipalData,
    pub direction: PrincipalDirection,
    /// `f_t`, truncated to the order of `ν`.
    pub map: JetVec3,
    /// `det((f_t)_u, (f_t)_v, ν)`.
    pub lambda_t: Jet2,
    /// `1 − tκ̂`.
    pub lambda_hat: Jet2,
}

pub fn make_parallel(p: &PolySurface, t: f64) -> Result<ParallelSurface> {
    if t == 0.0 {
        return Err(GeomError::InvalidOffset);
    }
    let psi = p.psi()?;
    Ok(ParallelSurface {
        base: p.clone(),
        t,
        order: DEFAULT_ORDER,
        branch: None,
        anchor: None,
        fu: p.du(),
        psi,
    })
}

/// The parallel surface through the focal point of `anchor`: `t = 1/κ̂(anchor)`.
pub fn make_parallel_t0(
    p: &PolySurface,
    anchor: [f64; 2],
    tol: &Tolerances,
) -> Result<ParallelSurface> {
    let fr = build_frame(p, anchor, 3, tol)?;
    let branch = bounded_branch(&fr, tol)?;
    let k = principal_curvature_on_branch(&fr, branch, tol)?.kappa_value();
    if k.abs() <= tol.curvature {
        return Err(GeomError::ZeroCurvature { kappa: k });
    }
    let mut ps = make_parallel(p, 1.0 / k)?;
    ps.branch = Some(branch);
    ps.anchor = Some(anchor);
    Ok(ps)
}

fn unit_cross(a: [f64; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let c = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    (n > 0.0).then(|| c.map(|x| x / n))
}

impl ParallelSurface {
    /// Unit normal `f_u × ψ / ‖f_u × ψ‖` from the polynomials.
    pub fn normal(&self, q: [f64; 2]) -> Option<[f64; 3]> {
        let fu = self.fu.each_ref().map(|c| c.eval(q[0], q[1]));
        let psi = self.psi.each_ref().map(|c| c.eval(q[0], q[1]));
        unit_cross(fu, psi)
    }

    pub fn position(&self, q: [f64; 2]) -> Option<[f64; 3]> {
        let f = self.base.eval(q[0], q[1]);
        let n = self.normal(q)?;
        Some([0, 1, 2].map(|k| f[k] + self.t * n[k]))
    }

    pub fn at(&self, q: [f64; 2], tol: &Tolerances) -> Result<ParallelPoint> {
        let frame = build_frame(&self.base, q, self.order, tol)?;
        let branch = match self.branch {
            Some(b) => b,
            None => bounded_branch(&frame, tol)?,
        };
        let principal = principal_curvature_on_branch(&frame, branch, tol)?;
        let direction = principal_direction(&frame, &principal, tol)?;
        let k = frame.nu.order();
        let map = frame.f.truncate(k).add(&frame.nu.scale(self.t));
        let lambda_t = det3(&map.du(), &map.dv(), &frame.nu);
        let lambda_hat = principal.kappa.scale(-self.t).add_const(1.0);
        Ok(ParallelPoint {
            frame,
            principal,
            direction,
            map,
            lambda_t,
            lambda_hat,
        })
    }

    /// `λ̂_t = 1 − tκ̂` at `q` from a cheap order-3 frame.
    pub fn indicator(&self, q: [f64; 2], tol: &Tolerances) -> Option<f64> {
        let fr = build_frame(&self.base, q, 3, tol).ok()?;
        let branch = match self.branch {
            Some(b) => b,
            None => bounded_branch(&fr, tol).ok()?,
        };
        let k = principal_curvature_on_branch(&fr, branch, tol)
            .ok()?
            .kappa_value();
        Some(1.0 - self.t * k)
    }
}

/// The three sides of the factorisation of `λ_t`, at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorisationCheck {
    /// Direct `det((f_t)_u, (f_t)_v, ν)`.
    pub direct: f64,
    /// `[v + t(αv + β̃) + t²(αβ̃ − βα̃)]·det(f_u, ψ, ν)`.
    pub weingarten: f64,
    /// `(v − t·vκ̂_other)(1 − tκ̂)·det(f_u, ψ, ν)`.
    pub factored: f64,
    /// Sum of absolute term magnitudes, the scale for relative comparison.
    pub scale: f64,
}

impl FactorisationCheck {
    pub fn relative_error(&self) -> f64 {
        let d1 = (self.direct - self.weingarten).abs();
        let d2 = (self.direct - self.factored).abs();
        d1.max(d2) / self.scale.max(f64::MIN_POSITIVE)
    }
}

pub fn factorisation_check(
    ps: &ParallelSurface,
    q: [f64; 2],
    tol: &Tolerances,
) -> Result<FactorisationCheck> {
    let pp = ps.at(q, tol)?;
    let fr = &pp.frame;
    let t = ps.t;
    let v = q[1];
    let vol = fr.volume().value();
    let (a, b, at, bt) = (
        fr.alpha.value(),
        fr.beta.value(),
        fr.alpha_t.value(),
        fr.beta_t.value(),
    );
    let weingarten = (v + t * (a * v + bt) + t * t * (a * bt - b * at)) * vol;
    let k = pp.principal.kappa_value();
    let vko = pp.principal.v_kappa_other.value();
    let factored = (v - t * vko) * (1.0 - t * k) * vol;
    let direct = pp.lambda_t.value();
    let scale = vol
        * (v.abs() + (t * k * v).abs() + (t * vko).abs() + (t * t * vko * k).abs())
            .max(v.abs() + (t * (a * v + bt)).abs() + (t * t * (a * bt - b * at)).abs())
        + direct.abs();
    Ok(FactorisationCheck {
        direct,
        weingarten,
        factored,
        scale,
    })
}

/// Points where `λ̂_t` changes sign, one per crossed grid edge.
pub fn parallel_singular_set(
    ps: &ParallelSurface,
    grid: &SampleGrid,
    tol: &Tolerances,
) -> Vec<[f64; 2]> {
    let f = |q: [f64; 2]| ps.indicator(q, tol);
    let values = grid.sample(f);
    edge_crossings(grid, &values, &f, BISECT_TOL)
}

/// `‖df_t(η)‖` with `η = v̂`, at `q`.
pub fn null_residual(ps: &ParallelSurface, q: [f64; 2], tol: &Tolerances) -> Result<f64> {
    let pp = ps.at(q, tol)?;
    let [a, b] = pp.direction.value();
    let (mu, mv) = (pp.map.du().value(), pp.map.dv().value());
    let r = [0, 1, 2].map(|k| a * mu[k] + b * mv[k]);
    Ok((r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct SwallowtailPrediction {
    pub t0: f64,
    /// Classification of `f_{t0}` with `η = v̂`.
    pub direct: SingClass,
    /// `−t0·v̂κ̂` and `−t0·v̂⁽²⁾κ̂`, the derivatives of `λ̂_{t0}` along `η`.
    pub eta_lambda_hat: f64,
    pub eta_eta_lambda_hat: Option<f64>,
    pub ridge: RidgeReport,
    /// Verdict from `dκ̂ ≠ 0` and the ridge order.
    pub predicted: Verdict,
}

impl SwallowtailPrediction {
    pub fn verdict(&self) -> Verdict {
        self.direct.verdict
    }
}

fn predicted_verdict(r: &RidgeReport, tol: &Tolerances) -> Verdict {
    let dk = r.dkappa[0].hypot(r.dkappa[1]);
    if dk <= tol.ridge_at(r.kappa) {
        return Verdict::DegenerateOrUnknown;
    }
    match r.order {
        RidgeOrder::NotRidge => Verdict::CuspidalEdge,
        RidgeOrder::First => Verdict::Swallowtail,
        RidgeOrder::HigherOrUndetermined => Verdict::DegenerateOrUnknown,
    }
}

/// Classifies the focal parallel surface through `q` both directly and from
/// the ridge data of `f`; the two must agree.
pub fn predict_swallowtail(
    p: &PolySurface,
    q: [f64; 2],
    tol: &Tolerances,
) -> Result<SwallowtailPrediction> {
    let ps = make_parallel_t0(p, q, tol)?;
    let pp = ps.at(q, tol)?;
    let t0 = ps.t;
    let mut ridge = ridge_from_parts(&pp.frame, &pp.principal, &pp.direction, tol);
    if q == [0.0, 0.0] {
        ridge.closed_form = extract_normal_form(p, tol)
            .ok()
            .map(|n| ridge_closed_form(&n));
    }
    let direct = classify(
        &pp.map,
        &pp.frame.nu,
        [&pp.direction.xi, &pp.direction.zeta],
        tol,
    )?;
    let predicted = predicted_verdict(&ridge, tol);
    if direct.verdict != predicted {
        return Err(GeomError::ConsistencyFailure(format!(
            "parallel surface at {q:?}: direct classification {} but ridge data predict {predicted}",
            direct.verdict
        )));
    }
    Ok(SwallowtailPrediction {
        t0,
        direct,
        eta_lambda_hat: -t0 * ridge.vk1,
        eta_eta_lambda_hat: ridge.vk2.map(|x| -t0 * x),
        ridge,
        predicted,
    })
}

/// The three normal-form conditions for a swallowtail on the focal parallel
/// surface through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwallowtailConditions {
    /// `(b30 − a20b12, 4b12² + a20b03²)`: not both zero.
    pub nondegenerate: (f64, f64),
    pub cond_nondegenerate: bool,
    /// `4b12³ + b30b03²`: must vanish.
    pub c1: f64,
    pub cond_ridge: bool,
    /// The second condition in its commonly quoted form.
    pub c2: f64,
    /// The exact second-order ridge quantity, `c2 − b20³b03⁴`; must not vanish.
    pub c2_exact: f64,
    pub cond_first_order: bool,
    pub holds: bool,
}

pub fn swallowtail_conditions(
    n: &NormalFormCoeffs,
    tol: &Tolerances,
) -> Result<SwallowtailConditions> {
    let NormalFormCoeffs {
        a20,
        b20,
        b30,
        b12,
        b03,
        ..
    } = *n;
    if b20.abs() <= tol.curvature {
        return Err(GeomError::ZeroCurvature { kappa: b20 });
    }
    let c = ridge_closed_form(n);
    let w1 = b30 - a20 * b12;
    let w2 = 4.0 * b12 * b12 + a20 * b03 * b03;
    let cond_nondegenerate = !tol.is_zero_poly(w1, &[b30, a20 * b12])
        || !tol.is_zero_poly(w2, &[4.0 * b12 * b12, a20 * b03 * b03]);
    let cond_ridge = tol.is_zero_poly(c.c1, &[4.0 * b12.powi(3), b30 * b03 * b03]);
    let s = 4.0 * b12 * b12 + a20 * b03 * b03;
    let mons = [
        3.0 * b20.powi(3) * b03.powi(4),
        3.0 * b20 * s * s,
        24.0 * b03.powi(4) * n.h2_0(),
        96.0 * b12 * b12 * b03 * b03 * n.h3_0(),
        192.0 * b12.powi(3) * b03 * n.h4_0(),
        384.0 * b12.powi(4) * n.h5_0(),
    ];
    let cond_first_order = !tol.is_zero_poly(c.c2_exact, &mons);
    Ok(SwallowtailConditions {
        nondegenerate: (w1, w2),
        cond_nondegenerate,
        c1: c.c1,
        cond_ridge,
        c2: c.c2,
        c2_exact: c.c2_exact,
        cond_first_order,
        holds: cond_nondegenerate && cond_ridge && cond_first_order,
    })
}

/// Swallowtail criterion for the focal parallel surface of a regular surface:
/// a first-order ridge of `κ_i` that is not sub-parabolic relative to `v_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularSwallowtail {
    pub t: f64,
    pub ridge: RidgeOrder,
    pub sub_parabolic: bool,
    pub swallowtail: bool,
}

pub fn regular_parallel_swallowtail(
    g: &PolySurface,
    q: [f64; 2],
    i: usize,
    tol: &Tolerances,
) -> Result<RegularSwallowtail> {
    let j = 1 - i;
    let r = regular_principal(g, q, 3, tol)?;
    let k = r.kappa[i].value();
    if k.abs() <= tol.curvature {
        return Err(GeomError::ZeroCurvature { kappa: k });
    }
    let (_, _, ridge) = regular_ridge(g, q, i, tol)?;
    let sp = sub_parabolic(g, q, i, j, tol)?;
    Ok(RegularSwallowtail {
        t: 1.0 / k,
        ridge,
        sub_parabolic: sp,
        swallowtail: ridge == RidgeOrder::First && !sp,
    })
}

/// Direct classification of `g_t`, `t = 1/κ_i(q)`, with `η = v_i`.
pub fn classify_regular_parallel(
    g: &PolySurface,
    q: [f64; 2],
    i: usize,
    tol: &Tolerances,
) -> Result<SingClass> {
    let r = regular_principal(g, q, DEFAULT_ORDER, tol)?;
    let k = r.kappa[i].value();
    if k.abs() <= tol.curvature {
        return Err(GeomError::ZeroCurvature { kappa: k });
    }
    let n = &r.normal;
    let map = r.map.truncate(n.order()).add(&n.scale(1.0 / k));
    classify(&map, n, [&r.dirs[i][0], &r.dirs[i][1]], tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{example_parallel, from_normal_form, Domain};
    use approx::assert_abs_diff_eq;

    const O: [f64; 2] = [0.0, 0.0];

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn swallowtail_example() {
        let p = example_parallel();
        let s = predict_swallowtail(&p, O, &tol()).unwrap();
        assert_eq!(s.t0, 0.5);
        assert_eq!(s.direct.verdict, Verdict::Swallowtail);
        assert_eq!(s.predicted, Verdict::Swallowtail);
        let ps = make_parallel_t0(&p, O, &tol()).unwrap();
        assert_abs_diff_eq!(ps.indicator(O, &tol()).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_offset_and_zero_curvature() {
        assert_eq!(
            make_parallel(&example_parallel(), 0.0).unwrap_err().name(),
            "InvalidOffset"
        );
        let n = NormalFormCoeffs::new(0.0, 4.0, 0.0, 2.0, 2.0, 1.0);
        let p = from_normal_form(&n).unwrap();
        assert_eq!(
            predict_swallowtail(&p, O, &tol()).unwrap_err().name(),
            "ZeroCurvature"
        );
        assert_eq!(
            swallowtail_conditions(&n, &tol()).unwrap_err().name(),
            "ZeroCurvature"
        );
    }

    #[test]
    fn small_offset_stays_close() {
        let ps = make_parallel(&example_parallel(), 1e-13).unwrap();
        let q = [0.1, -0.2];
        let a = ps.position(q).unwrap();
        let b = example_parallel().eval(q[0], q[1]);
        for k in 0..3 {
            assert_abs_diff_eq!(a[k], b[k], epsilon = 1e-12);
        }
    }

    #[test]
    fn factorisation_identity() {
        let p = example_parallel();
        let ps = make_parallel(&p, 0.37).unwrap();
        for q in [[0.1, 0.05], [-0.2, 0.3], [0.0, -0.15], [0.25, 0.0]] {
            let c = factorisation_check(&ps, q, &tol()).unwrap();
            assert!(c.relative_error() < 1e-10, "{q:?}: {c:?}");
        }
    }

    #[test]
    fn singular_set_passes_through_origin() {
        let ps = make_parallel_t0(&example_parallel(), O, &tol()).unwrap();
        let grid = SampleGrid::new(
            Domain {
                umin: -0.2,
                umax: 0.2,
                vmin: -0.2,
                vmax: 0.2,
            },
            21,
            21,
        );
        let pts = parallel_singular_set(&ps, &grid, &tol());
        assert!(!pts.is_empty());
        let near = pts.iter().any(|p| p[0].abs() <= 0.02 && p[1].abs() <= 0.02);
        assert!(near, "{pts:?}");
        for p in pts {
            assert!(ps.indicator(p, &tol()).unwrap().abs() < 1e-8);
            assert!(null_residual(&ps, p, &tol()).unwrap() < 1e-7);
        }
        let far = make_parallel(&example_parallel(), 0.05).unwrap();
        assert!(parallel_singular_set(&far, &grid, &tol()).is_empty());
    }

    #[test]
    fn swallowtail_condition_examples() {
        let l =
            swallowtail_conditions(&NormalFormCoeffs::new(1.0, 2.0, 2.0, 0.0, 0.0, 2.0), &tol())
                .unwrap();
        assert!(l.holds);
        assert_eq!(l.nondegenerate.1, 4.0);
        assert_eq!(l.c1, 0.0);
        assert_eq!(l.c2, -352.0);
        let l =
            swallowtail_conditions(&NormalFormCoeffs::new(0.0, 0.0, 1.0, 0.0, 0.0, 1.0), &tol())
                .unwrap();
        assert!(!l.cond_nondegenerate && !l.holds);
        let l =
            swallowtail_conditions(&NormalFormCoeffs::new(0.0, 0.0, 1.0, 1.0, 1.0, 1.0), &tol())
                .unwrap();
        assert_eq!(l.c1, 5.0);
        assert!(!l.holds);
    }

    #[test]
    fn generic_parallel_is_cuspidal_edge() {
        let n = NormalFormCoeffs::new(0.3, 0.2, 1.2, 0.9, -0.4, 1.1);
        let s = predict_swallowtail(&from_normal_form(&n).unwrap(), O, &tol()).unwrap();
        assert_eq!(s.verdict(), Verdict::CuspidalEdge);
    }

    #[test]
    fn flat_curvature_gradient_is_degenerate() {
        // b30 = a20 b12 and 4b12² + a20 b03² = 0 with b12 = 0, a20 = 0, b30 = 0
        let n = NormalFormCoeffs::new(0.0, 0.7, 1.5, 0.0, 0.0, 1.3);
        let s = predict_swallowtail(&from_normal_form(&n).unwrap(), O, &tol()).unwrap();
        assert_eq!(s.verdict(), Verdict::DegenerateOrUnknown);
    }

    fn graph(terms: &[(u32, u32, f64)]) -> PolySurface {
        PolySurface::new([
            Poly2::monomial(1, 0, 1.0),
            Poly2::monomial(0, 1, 1.0),
            Poly2::from_terms(terms.iter().copied()),
        ])
    }

    #[test]
    fn regular_surface_criterion_matches_direct_classification() {
        // ridge of κ1 along x at 0; the x²y term decides sub-parabolicity
        let st = graph(&[(2, 0, 0.5), (0, 2, 0.25), (2, 1, 0.3), (4, 0, 0.2)]);
        let c = regular_parallel_swallowtail(&st, O, 0, &tol()).unwrap();
        assert_eq!(c.ridge, RidgeOrder::First);
        assert!(!c.sub_parabolic && c.swallowtail);
        assert_eq!(
            classify_regular_parallel(&st, O, 0, &tol())
                .unwrap()
                .verdict,
            Verdict::Swallowtail
        );

        let sp = graph(&[(2, 0, 0.5), (0, 2, 0.25), (4, 0, 0.2)]);
        let c = regular_parallel_swallowtail(&sp, O, 0, &tol()).unwrap();
        assert!(c.sub_parabolic && !c.swallowtail);
        assert_ne!(
            classify_regular_parallel(&sp, O, 0, &tol())
                .unwrap()
                .verdict,
            Verdict::Swallowtail
        );

        let ce = graph(&[(2, 0, 0.5), (0, 2, 0.25), (3, 0, 0.4)]);
        assert_eq!(
            classify_regular_parallel(&ce, O, 0, &tol())
                .unwrap()
                .verdict,
            Verdict::CuspidalEdge
        );
        assert!(
            !regular_parallel_swallowtail(&ce, O, 0, &tol())
                .unwrap()
                .swallowtail
        );
    }
}
