//! Ridge points of the bounded principal curvature, and sub-parabolic points
//! of regular surfaces.

use serde::Serialize;

use crate::config::{Tolerances, DEFAULT_ORDER};
use crate::curvature::{principal_curvature_bounded, principal_direction, regular_principal};
use crate::curvature::{PrincipalData, PrincipalDirection};
use crate::error::Result;
use crate::frames::{build_frame, EdgeFrame};
use crate::surface::{extract_normal_form, NormalFormCoeffs, PolySurface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RidgeOrder {
    NotRidge,
    First,
    /// `v̂κ̂₂ = v̂⁽²⁾κ̂₂ = 0`, or the jet order was too low to decide.
    HigherOrUndetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct RidgeReport {
    pub point: [f64; 2],
    pub kappa: f64,
    pub dkappa: [f64; 2],
    pub direction: [f64; 2],
    pub vk1: f64,
    pub vk2: Option<f64>,
    pub order: RidgeOrder,
    pub closed_form: Option<RidgeClosedForm>,
}

/// The ridge report from an already-built frame.
pub fn ridge_from_parts(
    fr: &EdgeFrame,
    pd: &PrincipalData,
    dir: &PrincipalDirection,
    tol: &Tolerances,
) -> RidgeReport {
    let k = &pd.kappa;
    let (xi, zeta) = (&dir.xi, &dir.zeta);
    let vk1 = k.directional(xi, zeta);
    let vk2 = (vk1.order() > 0).then(|| vk1.directional(xi, zeta).value());
    let thr = tol.ridge_at(k.value());
    let order = if vk1.value().abs() > thr {
        RidgeOrder::NotRidge
    } else {
        match vk2 {
            Some(x) if x.abs() > thr => RidgeOrder::First,
            _ => RidgeOrder::HigherOrUndetermined,
        }
    };
    RidgeReport {
        point: fr.base,
        kappa: k.value(),
        dkappa: k.gradient(),
        direction: dir.value(),
        vk1: vk1.value(),
        vk2,
        order,
        closed_form: None,
    }
}

/// Ridge analysis of the bounded principal curvature at `q`.
///
/// When `q` is the origin and `p` is in normal form, the closed-form
/// quantities are attached as well.
pub fn ridge_analyze(p: &PolySurface, q: [f64; 2], tol: &Tolerances) -> Result<RidgeReport> {
    let fr = build_frame(p, q, DEFAULT_ORDER, tol)?;
    let pd = principal_curvature_bounded(&fr, tol)?;
    let dir = principal_direction(&fr, &pd, tol)?;
    let mut r = ridge_from_parts(&fr, &pd, &dir, tol);
    if q == [0.0, 0.0] {
        r.closed_form = extract_normal_form(p, tol)
            .ok()
            .map(|n| ridge_closed_form(&n));
    }
    Ok(r)
}

/// The three second partials in their commonly quoted closed form.
///
/// They differ from the true values by terms proportional to `b20`; see
/// [`RidgeClosedForm`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuotedSecondPartials {
    pub kappa_uu: f64,
    pub kappa_uv: f64,
    pub kappa_vv: f64,
}

/// Closed-form ridge data of a normal form at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RidgeClosedForm {
    /// `4b12³ + b30b03²`; the origin is a ridge point iff this vanishes.
    pub c1: f64,
    /// Left side of the second-order condition in its commonly quoted form.
    pub c2: f64,
    /// `c2 − b20³b03⁴`: under `c1 = 0`, `v̂⁽²⁾κ̂₂(0) = c2_exact / (4b03²)`.
    pub c2_exact: f64,
    pub kappa_u: f64,
    pub kappa_v: f64,
    pub xi: f64,
    pub zeta: f64,
    pub xi_u: f64,
    pub xi_v: f64,
    pub zeta_u: f64,
    pub zeta_v: f64,
    pub kappa_uu: f64,
    pub kappa_uv: f64,
    pub kappa_vv: f64,
    pub quoted: QuotedSecondPartials,
    /// `v̂κ̂₂(0) = c1 / (2b03)`.
    pub vk1: f64,
    /// `v̂⁽²⁾κ̂₂(0)` assembled from the partials above (valid for any `c1`).
    pub vk2: f64,
}

pub fn ridge_closed_form(n: &NormalFormCoeffs) -> RidgeClosedForm {
    let NormalFormCoeffs {
        a20,
        a30,
        b20,
        b30,
        b12,
        b03,
        ..
    } = *n;
    let (h2, h3, h4, h5) = (n.h2_0(), n.h3_0(), n.h4_0(), n.h5_0());
    let c1 = 4.0 * b12.powi(3) + b30 * b03 * b03;
    let s = 4.0 * b12 * b12 + a20 * b03 * b03;
    let tail = b03.powi(4) * h2 + 4.0 * b12 * b12 * b03 * b03 * h3 - 8.0 * b12.powi(3) * b03 * h4
        + 16.0 * b12.powi(4) * h5;
    let c2 = -2.0 * b20.powi(3) * b03.powi(4) - 3.0 * b20 * s * s + 24.0 * tail;
    let c2_exact = c2 - b20.powi(3) * b03.powi(4);

    let kappa_u = b30 - a20 * b12;
    let kappa_v = -s / (2.0 * b03);
    let (xi, zeta) = (b03 / 2.0, -b12);
    let (xi_u, xi_v) = (3.0 * h4, -b20 + 8.0 * h5);
    let (zeta_u, zeta_v) = (a20 * b20 - 4.0 * h3, -3.0 * h4);

    let quoted = QuotedSecondPartials {
        kappa_uu: -2.0 * (a20 * a20 * b20 + b20.powi(3) + a30 * b12 - 12.0 * h2 + 2.0 * a20 * h3),
        kappa_uv: (-a30 * b03.powi(3)
            + 8.0 * b12 * (-4.0 * b03 * h3 + 3.0 * b12 * h4)
            + 2.0 * a20 * b03 * (4.0 * b20 * b12 - 3.0 * b03 * h4))
            / (2.0 * b03 * b03),
        kappa_vv: 4.0 / (b03 * b03)
            * (-2.0 * b20 * b12 * b12 - 6.0 * b12 * b03 * h4
                + 16.0 * b12 * b12 * h5
                + b03 * b03 * (h3 - 2.0 * a20 * h5)),
    };
    let kappa_uu = quoted.kappa_uu - b20 * (b12 * b12 + b20 * b20);
    let kappa_uv = quoted.kappa_uv - b03 * b12 * b20 / 2.0;
    let kappa_vv = quoted.kappa_vv - b03 * b03 * b20 / 4.0;

    let vk2 = (xi * xi_u + zeta * xi_v) * kappa_u
        + (xi * zeta_u + zeta * zeta_v) * kappa_v
        + xi * xi * kappa_uu
        + 2.0 * xi * zeta * kappa_uv
        + zeta * zeta * kappa_vv;

    RidgeClosedForm {
        c1,
        c2,
        c2_exact,
        kappa_u,
        kappa_v,
        xi,
        zeta,
        xi_u,
        xi_v,
        zeta_u,
        zeta_v,
        kappa_uu,
        kappa_uv,
        kappa_vv,
        quoted,
        vk1: c1 / (2.0 * b03),
        vk2,
    }
}

/// Derivative of `κ_i` along the unit principal direction `v_j` of a regular
/// surface.
pub fn cross_derivative(
    g: &PolySurface,
    q: [f64; 2],
    i: usize,
    j: usize,
    tol: &Tolerances,
) -> Result<f64> {
    let r = regular_principal(g, q, 3, tol)?;
    let [a, b] = [r.dirs[j][0].value(), r.dirs[j][1].value()];
    let grad = r.kappa[i].gradient();
    Ok((a * grad[0] + b * grad[1]) / a.hypot(b))
}

/// Whether `q` is a sub-parabolic point of `g`: `v_j κ_i (q) = 0`, `i ≠ j`.
pub fn sub_parabolic(
    g: &PolySurface,
    q: [f64; 2],
    i: usize,
    j: usize,
    tol: &Tolerances,
) -> Result<bool> {
    let r = regular_principal(g, q, 3, tol)?;
    let d = cross_derivative(g, q, i, j, tol)?;
    Ok(d.abs() <= tol.ridge_at(r.kappa[i].value()))
}

/// Ridge classification of `κ_i` along its own direction on a regular surface.
pub fn regular_ridge(
    g: &PolySurface,
    q: [f64; 2],
    i: usize,
    tol: &Tolerances,
) -> Result<(f64, f64, RidgeOrder)> {
    let r = regular_principal(g, q, 4, tol)?;
    let [a, b] = &r.dirs[i];
    let vk1 = r.kappa[i].directional(a, b);
    let vk2 = vk1.directional(a, b).value();
    let thr = tol.ridge_at(r.kappa[i].value());
    let order = if vk1.value().abs() > thr {
        RidgeOrder::NotRidge
    } else if vk2.abs() > thr {
        RidgeOrder::First
    } else {
        RidgeOrder::HigherOrUndetermined
    };
    Ok((vk1.value(), vk2, order))
}
