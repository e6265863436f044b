//! The dual surface `f* = ρν`, `ρ = ⟨f + c, ν⟩`.
//!
//! `f*` is singular exactly where the bounded principal curvature vanishes.
//! Its derivatives `f*_u`, `f*_v` are orthogonal to `f̄ − 2ρν` (with
//! `f̄ = f + c`), and `‖f̄ − 2ρν‖ = ‖f̄‖`, so `ν* = (2ρν − f̄)/‖f̄‖` is a unit
//! normal that stays smooth through the singular set. Away from it, it agrees
//! with `f*_u × f*_v / ‖f*_u × f*_v‖` up to the sign of `λ*`.

use serde::Serialize;

use crate::config::{Tolerances, DEFAULT_ORDER};
use crate::curvature::{bounded_branch, principal_curvature_on_branch, Branch};
use crate::error::{GeomError, Result};
use crate::frames::{build_frame, EdgeFrame};
use crate::grid::{edge_crossings, SampleGrid};
use crate::jets::{det3, Jet2, JetVec3};
use crate::parallel::BISECT_TOL;
use crate::poly::Poly2;
use crate::singularity::{classify, SingClass, Verdict};
use crate::surface::{extract_normal_form, NormalFormCoeffs, PolySurface};

#[derive(Debug, Clone)]
pub struct DualSurface {
    /// `f` as given.
    pub surface: PolySurface,
    /// `f̄ = f + c`.
    pub fbar: PolySurface,
    /// `f̄(0)`: the translation relative to the surface centred at the origin.
    pub c: [f64; 3],
    /// Set when the constant term of `f` was taken as `c`.
    pub notice: Option<String>,
    /// Normal-form coefficients of `f − f(0)`, when it is in normal form.
    pub normal_form: Option<NormalFormCoeffs>,
    pub branch: Branch,
    fu: [Poly2; 3],
    psi: [Poly2; 3],
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Builds the dual of `p` with translation `c`, or the surface's own `C`
/// line, or (failing both) its constant term.
pub fn make_dual(p: &PolySurface, c: Option<[f64; 3]>, tol: &Tolerances) -> Result<DualSurface> {
    let mut notice = None;
    let fbar = match c.or(p.translation) {
        Some(c) => p.translated(c),
        None => {
            let c0 = p.constant_term();
            if c0 != [0.0; 3] {
                notice = Some(format!(
                    "no translation vector given; using the constant term {c0:?} as c"
                ));
            }
            p.clone()
        }
    };
    let origin = [0.0, 0.0];
    let fr = build_frame(p, origin, 3, tol)?;
    let c_eff = fbar.eval(0.0, 0.0);
    let inner = dot(fr.nu.value(), c_eff);
    if inner.abs() <= tol.frame {
        return Err(GeomError::BadTranslationVector { inner });
    }
    let branch = bounded_branch(&fr, tol)?;
    let normal_form = extract_normal_form(&p.centered().0, tol).ok();
    Ok(DualSurface {
        surface: p.clone(),
        fbar,
        c: c_eff,
        notice,
        normal_form,
        branch,
        fu: p.du(),
        psi: p.psi()?,
    })
}

/// Jets of the dual at one point.
#[derive(Debug, Clone)]
pub struct DualPoint {
    pub frame: EdgeFrame,
    pub kappa: Jet2,
    pub rho: Jet2,
    pub fstar: JetVec3,
    pub nustar: JetVec3,
    pub lambda_star: Jet2,
    /// `η* = β̃∂u − β∂v`.
    pub eta: [Jet2; 2],
}

impl DualSurface {
    pub fn at(&self, q: [f64; 2], tol: &Tolerances) -> Result<DualPoint> {
        let frame = build_frame(&self.surface, q, DEFAULT_ORDER, tol)?;
        let kappa = principal_curvature_on_branch(&frame, self.branch, tol)?.kappa;
        let k = frame.nu.order();
        let fbar = JetVec3::lift(&self.fbar.components, q, k);
        let rho = fbar.dot(&frame.nu);
        let fstar = frame.nu.scale_by(&rho);
        let inv = fbar.norm_sq().sqrt(tol)?.recip(tol)?;
        let nustar = frame.nu.scale_by(&rho.scale(2.0)).sub(&fbar).scale_by(&inv);
        let lambda_star = det3(&fstar.du(), &fstar.dv(), &nustar);
        let eta = [frame.beta_t.clone(), -&frame.beta];
        Ok(DualPoint {
            frame,
            kappa,
            rho,
            fstar,
            nustar,
            lambda_star,
            eta,
        })
    }

    fn normal(&self, q: [f64; 2]) -> Option<[f64; 3]> {
        let fu = self.fu.each_ref().map(|c| c.eval(q[0], q[1]));
        let psi = self.psi.each_ref().map(|c| c.eval(q[0], q[1]));
        let c = [
            fu[1] * psi[2] - fu[2] * psi[1],
            fu[2] * psi[0] - fu[0] * psi[2],
            fu[0] * psi[1] - fu[1] * psi[0],
        ];
        let n = norm(c);
        (n > 0.0).then(|| c.map(|x| x / n))
    }

    pub fn position(&self, q: [f64; 2]) -> Option<[f64; 3]> {
        let n = self.normal(q)?;
        let rho = dot(self.fbar.eval(q[0], q[1]), n);
        Some(n.map(|x| rho * x))
    }

    /// The bounded principal curvature at `q`, whose zero set is `S(f*)`.
    pub fn indicator(&self, q: [f64; 2], tol: &Tolerances) -> Option<f64> {
        let fr = build_frame(&self.surface, q, 3, tol).ok()?;
        principal_curvature_on_branch(&fr, self.branch, tol)
            .ok()
            .map(|p| p.kappa_value())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DualVerdict {
    pub verdict: Verdict,
    pub point: [f64; 2],
    pub kappa: f64,
    pub lambda_star: f64,
    pub dlambda_star: [f64; 2],
    /// `4·η*λ*` from the jets.
    pub witness: f64,
    /// `−C1·c3·‖c‖`, at the origin of a normal form with `b20 = 0`.
    pub closed_witness: Option<f64>,
    /// `b20·b03·c3·‖c‖/2`, at the origin of a normal form.
    pub closed_lambda: Option<f64>,
    pub class: Option<SingClass>,
}

pub fn dual_singularity(d: &DualSurface, q: [f64; 2], tol: &Tolerances) -> Result<DualVerdict> {
    let pt = d.at(q, tol)?;
    let kappa = pt.kappa.value();
    let eta_l = pt.lambda_star.directional(&pt.eta[0], &pt.eta[1]).value();
    let witness = 4.0 * eta_l;

    let mut closed_witness = None;
    let mut closed_lambda = None;
    if let (true, Some(n)) = (q == [0.0, 0.0], d.normal_form.as_ref()) {
        let cn = norm(d.c);
        closed_lambda = Some(n.b20 * n.b03 * d.c[2] * cn / 2.0);
    }
    if let (true, Some(n)) = (
        q == [0.0, 0.0],
        d.normal_form
            .as_ref()
            .filter(|n| n.b20.abs() <= tol.on_axis),
    ) {
        let cn = norm(d.c);
        let c1 = 4.0 * n.b12.powi(3) + n.b30 * n.b03 * n.b03;
        let w = -c1 * d.c[2] * cn;
        let scale = (4.0 * n.b12.powi(3)).abs() + (n.b30 * n.b03 * n.b03).abs();
        if (w - witness).abs() > 1e-6 * (scale * d.c[2].abs() * cn).max(f64::MIN_POSITIVE) {
            return Err(GeomError::ConsistencyFailure(format!(
                "4dλ*(η*): closed form {w:e} vs jet {witness:e}"
            )));
        }
        closed_witness = Some(w);
    }

    let (verdict, class) = if kappa.abs() > tol.curvature {
        (Verdict::Regular, None)
    } else {
        let c = classify(&pt.fstar, &pt.nustar, [&pt.eta[0], &pt.eta[1]], tol)?;
        (c.verdict, Some(c))
    };
    Ok(DualVerdict {
        verdict,
        point: q,
        kappa,
        lambda_star: pt.lambda_star.value(),
        dlambda_star: pt.lambda_star.gradient(),
        witness,
        closed_witness,
        closed_lambda,
        class,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullFieldWitness {
    pub point: [f64; 2],
    pub kappa: f64,
    pub rho_u: f64,
    pub rho_v: f64,
    pub alpha: f64,
    pub beta: f64,
    pub alpha_t: f64,
    pub beta_t: f64,
    /// `‖df*(η*)‖`.
    pub residual: f64,
    pub rank: usize,
    /// `‖dν*(η*)‖`, the front certificate of `f*`.
    pub front_witness: f64,
}

fn witness_at(d: &DualSurface, q: [f64; 2], tol: &Tolerances) -> Result<NullFieldWitness> {
    let pt = d.at(q, tol)?;
    let fr = &pt.frame;
    let (a, b) = (pt.eta[0].value(), pt.eta[1].value());
    let (fu, fv) = (pt.fstar.du().value(), pt.fstar.dv().value());
    let df = [0, 1, 2].map(|k| a * fu[k] + b * fv[k]);
    let (nu_u, nu_v) = (pt.nustar.du().value(), pt.nustar.dv().value());
    let dn = [0, 1, 2].map(|k| a * nu_u[k] + b * nu_v[k]);
    let cross = [
        fu[1] * fv[2] - fu[2] * fv[1],
        fu[2] * fv[0] - fu[0] * fv[2],
        fu[0] * fv[1] - fu[1] * fv[0],
    ];
    let (nfu, nfv) = (norm(fu), norm(fv));
    let small = tol.sing * (1.0 + norm(d.c));
    let rank = if nfu.max(nfv) <= small {
        0
    } else if norm(cross) <= tol.sing * (1.0 + nfu) * (1.0 + nfv) {
        1
    } else {
        2
    };
    let [rho_u, rho_v] = pt.rho.gradient();
    Ok(NullFieldWitness {
        point: q,
        kappa: pt.kappa.value(),
        rho_u,
        rho_v,
        alpha: fr.alpha.value(),
        beta: fr.beta.value(),
        alpha_t: fr.alpha_t.value(),
        beta_t: fr.beta_t.value(),
        residual: norm(df),
        rank,
        front_witness: norm(dn),
    })
}

/// The null-field data at a singular point of `f*`; fails when `η*` is not
/// null there.
pub fn dual_nullfield_witness(
    d: &DualSurface,
    q: [f64; 2],
    tol: &Tolerances,
) -> Result<NullFieldWitness> {
    let w = witness_at(d, q, tol)?;
    if w.kappa.abs() <= tol.curvature && w.residual > tol.null_field {
        return Err(GeomError::InconsistentNull {
            residual: w.residual,
        });
    }
    Ok(w)
}

/// A detected point of `S(f*)` and whether `η*` failed to be null there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualSingularPoint {
    pub point: [f64; 2],
    pub residual: f64,
    pub front_witness: f64,
    pub flagged: bool,
}

/// Sign changes of `κ̂` on the grid, refined by bisection, with the null
/// residual of `η*` at each; points with a large residual are flagged rather
/// than rejected.
pub fn dual_singular_set(
    d: &DualSurface,
    grid: &SampleGrid,
    tol: &Tolerances,
) -> Vec<DualSingularPoint> {
    let f = |q: [f64; 2]| d.indicator(q, tol);
    let values = grid.sample(f);
    edge_crossings(grid, &values, &f, BISECT_TOL)
        .into_iter()
        .filter_map(|q| {
            let w = witness_at(d, q, tol).ok()?;
            Some(DualSingularPoint {
                point: q,
                residual: w.residual,
                front_witness: w.front_witness,
                flagged: w.residual > tol.null_field,
            })
        })
        .collect()
}
