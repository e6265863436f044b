//! Cuspidal edge / swallowtail recognition for fronts.
//!
//! The caller supplies the map, its unit normal and a null vector field `η`
//! as jets; this module evaluates the signed area density
//! `λ = det(f_u, f_v, ν)` and its derivatives along `η`.

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{GeomError, Result};
use crate::jets::{det3, Jet2, JetVec3};
use crate::surface::{validate_adapted, AdaptedReport, PolySurface, ProbeGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Regular,
    CuspidalEdge,
    Swallowtail,
    DegenerateOrUnknown,
    NotAFront,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Regular => "Regular",
            Verdict::CuspidalEdge => "CuspidalEdge",
            Verdict::Swallowtail => "Swallowtail",
            Verdict::DegenerateOrUnknown => "DegenerateOrUnknown",
            Verdict::NotAFront => "NotAFront",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SingClass {
    pub verdict: Verdict,
    pub point: [f64; 2],
    pub lambda: f64,
    pub dlambda: [f64; 2],
    pub eta: [f64; 2],
    pub eta_lambda: Option<f64>,
    pub eta_eta_lambda: Option<f64>,
    /// `‖dν(η)‖`, the front certificate.
    pub front_witness: f64,
    /// `‖df(η)‖`.
    pub null_residual: f64,
    /// Threshold used for `λ` itself.
    pub tol_lambda: f64,
}

fn norm(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Classifies the singular point (if any) of `map` at its base point.
///
/// Needs `map` of order ≥ 3, `nu` of order ≥ 2 and `eta` of order ≥ 1.
pub fn classify(
    map: &JetVec3,
    nu: &JetVec3,
    eta: [&Jet2; 2],
    tol: &Tolerances,
) -> Result<SingClass> {
    let (l1, l2) = (eta[0], eta[1]);
    let got = map.order().min(nu.order() + 1).min(eta_order(eta) + 2);
    if got < 3 {
        return Err(GeomError::InsufficientOrder { needed: 3, got });
    }
    let q = map.base();
    let (fu, fv) = (map.du(), map.dv());
    let lambda = det3(&fu, &fv, nu);
    let scale = (1.0 + norm(fu.value())) * (1.0 + norm(fv.value()));
    let tol_lambda = tol.sing * scale;
    let ev = [l1.value(), l2.value()];
    let eta_norm = ev[0].hypot(ev[1]);

    let df_eta = [0, 1, 2].map(|c| ev[0] * fu.0[c].value() + ev[1] * fv.0[c].value());
    let null_residual = norm(df_eta);
    let dnu_eta = [0, 1, 2].map(|c| ev[0] * nu.0[c].partial(1, 0) + ev[1] * nu.0[c].partial(0, 1));
    let front_witness = norm(dnu_eta);

    let mut out = SingClass {
        verdict: Verdict::Regular,
        point: q,
        lambda: lambda.value(),
        dlambda: lambda.gradient(),
        eta: ev,
        eta_lambda: None,
        eta_eta_lambda: None,
        front_witness,
        null_residual,
        tol_lambda,
    };
    if lambda.value().abs() > tol_lambda {
        return Ok(out);
    }
    if null_residual > tol.null * (1.0 + eta_norm) {
        return Err(GeomError::InconsistentNull {
            residual: null_residual,
        });
    }

    let eta_l = lambda.directional(l1, l2);
    let eta_eta_l = eta_l.directional(l1, l2);
    out.eta_lambda = Some(eta_l.value());
    out.eta_eta_lambda = Some(eta_eta_l.value());

    let dl = out.dlambda;
    out.verdict = if dl[0].hypot(dl[1]) <= tol_lambda {
        Verdict::DegenerateOrUnknown
    } else if front_witness <= tol.sing * (1.0 + eta_norm) {
        Verdict::NotAFront
    } else if eta_l.value().abs() > tol_lambda * (1.0 + eta_norm) {
        Verdict::CuspidalEdge
    } else if eta_eta_l.value().abs() > tol_lambda * (1.0 + eta_norm).powi(2) {
        Verdict::Swallowtail
    } else {
        Verdict::DegenerateOrUnknown
    };
    Ok(out)
}

fn eta_order(eta: [&Jet2; 2]) -> usize {
    eta[0].order().min(eta[1].order())
}

/// Transversality of the null direction `∂v` to the singular curve `u`-axis.
#[derive(Debug, Clone, Serialize)]
pub struct FirstKind {
    pub first_kind: bool,
    pub report: AdaptedReport,
}

/// In adapted coordinates every singular point is of the first kind; this
/// reports `false` (with the failing validation) when `p` is not adapted.
pub fn first_kind_check(p: &PolySurface, grid: &ProbeGrid, tol: &Tolerances) -> FirstKind {
    let report = validate_adapted(p, grid, tol);
    FirstKind {
        first_kind: report.passed(),
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::build_frame;
    use crate::poly::Poly2;
    use crate::surface::{example_dual, from_normal_form, NormalFormCoeffs};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn standard_cusp() -> PolySurface {
        PolySurface::new([
            Poly2::monomial(1, 0, 1.0),
            Poly2::monomial(0, 2, 0.5),
            Poly2::monomial(0, 3, 1.0 / 6.0),
        ])
    }

    fn classify_on_f(p: &PolySurface, q: [f64; 2], bump: bool) -> SingClass {
        let fr = build_frame(p, q, 5, &tol()).unwrap();
        let k = fr.order - 2;
        let mut a = Jet2::zero(q, k);
        let mut b = Jet2::constant(q, k, 1.0);
        if bump {
            let w = Jet2::lift(
                &Poly2::from_terms([(0, 0, 1.0), (2, 0, 1.0), (0, 2, 1.0)]),
                q,
                k,
            );
            a = &a * &w;
            b = &b * &w;
        }
        classify(&fr.f, &fr.nu, [&a, &b], &tol()).unwrap()
    }

    #[test]
    fn standard_cusp_is_cuspidal_edge() {
        let c = classify_on_f(&standard_cusp(), [0.0, 0.0], false);
        assert_eq!(c.verdict, Verdict::CuspidalEdge);
        assert!(c.eta_lambda.unwrap().abs() > 0.5);
    }

    #[test]
    fn regular_point() {
        let c = classify_on_f(&standard_cusp(), [0.1, 0.2], false);
        assert_eq!(c.verdict, Verdict::Regular);
    }

    #[test]
    fn verdict_invariant_under_rescaled_null_field() {
        let mut n = NormalFormCoeffs::new(0.4, -0.3, 1.1, 0.5, -0.2, -0.9);
        n.h2 = vec![0.2];
        let p = from_normal_form(&n).unwrap();
        for u in [-0.2, 0.0, 0.15] {
            let a = classify_on_f(&p, [u, 0.0], false);
            let b = classify_on_f(&p, [u, 0.0], true);
            assert_eq!(a.verdict, Verdict::CuspidalEdge);
            assert_eq!(a.verdict, b.verdict);
        }
    }

    #[test]
    fn non_null_field_is_rejected() {
        let p = standard_cusp();
        let fr = build_frame(&p, [0.0, 0.0], 5, &tol()).unwrap();
        let one = Jet2::constant([0.0, 0.0], 3, 1.0);
        let err = classify(&fr.f, &fr.nu, [&one, &one], &tol()).unwrap_err();
        assert_eq!(err.name(), "InconsistentNull");
    }

    #[test]
    fn frontal_that_is_not_a_front() {
        let p = PolySurface::new([
            Poly2::monomial(1, 0, 1.0),
            Poly2::monomial(0, 2, 0.5),
            Poly2::monomial(0, 4, 1.0),
        ]);
        assert_eq!(
            classify_on_f(&p, [0.0, 0.0], false).verdict,
            Verdict::NotAFront
        );
    }

    #[test]
    fn first_kind() {
        let d = example_dual();
        assert!(first_kind_check(&d, &ProbeGrid::default(), &tol()).first_kind);
        let bad = PolySurface::new([
            Poly2::monomial(0, 1, 1.0),
            Poly2::monomial(1, 0, 1.0),
            Poly2::zero(),
        ]);
        assert!(!first_kind_check(&bad, &ProbeGrid::default(), &tol()).first_kind);
    }
}
