//! Contact of a cuspidal edge with spheres and planes: the restricted
//! distance-squared function `φ` and height function `h̃`, and the D4 test on
//! their cubic parts.

use std::fmt;

use serde::Serialize;

use crate::config::{Tolerances, DEFAULT_ORDER};
use crate::curvature::principal_curvature_bounded;
use crate::error::{GeomError, Result};
use crate::frames::build_frame;
use crate::jets::{Jet2, JetVec3};
use crate::surface::{from_normal_form, NormalFormCoeffs, PolySurface};

/// Jet order for `φ` and `h̃`; the cubic part is all that is inspected.
pub const CONTACT_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ContactKind {
    DistanceSquared,
    Height,
}

/// Right-equivalence class of the cubic part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum D4Type {
    /// `u³ + uv²`, discriminant positive.
    Plus,
    /// `u³ − uv²`, discriminant negative.
    Minus,
    NotD4,
}

impl fmt::Display for D4Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            D4Type::Plus => "D4, type u^3+uv^2",
            D4Type::Minus => "D4, type u^3-uv^2",
            D4Type::NotD4 => "not D4",
        })
    }
}

/// `(A, B, C, D) = (g_uuu, g_uuv, g_uvv, g_vvv)` at the base point.
pub fn third_derivatives(j: &Jet2) -> [f64; 4] {
    [
        j.partial(3, 0),
        j.partial(2, 1),
        j.partial(1, 2),
        j.partial(0, 3),
    ]
}

/// `A²D² − 6ABCD − 3B²C² + 4B³D + 4AC³`, and its monomials' magnitudes.
///
/// Positive exactly when the cubic `Au³/6 + Bu²v/2 + Cuv²/2 + Dv³/6` has a
/// single real linear factor (the `u³ + uv²` class).
pub fn cubic_discriminant(t: [f64; 4]) -> (f64, [f64; 5]) {
    let [a, b, c, d] = t;
    let m = [
        a * a * d * d,
        -6.0 * a * b * c * d,
        -3.0 * b * b * c * c,
        4.0 * b.powi(3) * d,
        4.0 * a * c.powi(3),
    ];
    (m.iter().sum(), m)
}

fn d4_of(delta: f64, monomials: &[f64], tol: &Tolerances) -> D4Type {
    if tol.is_zero_poly(delta, monomials) {
        D4Type::NotD4
    } else if delta > 0.0 {
        D4Type::Plus
    } else {
        D4Type::Minus
    }
}

/// `φ = −½(‖q − f‖² − t0²)` with `q = f(p) + t0ν(p)` and `t0 = 1/κ̂(p)`.
#[derive(Debug, Clone)]
pub struct PhiJet {
    pub jet: Jet2,
    pub t0: f64,
    pub center: [f64; 3],
}

pub fn phi_jet(p: &PolySurface, anchor: [f64; 2], tol: &Tolerances) -> Result<PhiJet> {
    let fr = build_frame(p, anchor, DEFAULT_ORDER, tol)?;
    let k = principal_curvature_bounded(&fr, tol)?.kappa_value();
    if k.abs() <= tol.curvature {
        return Err(GeomError::ZeroCurvature { kappa: k });
    }
    let t0 = 1.0 / k;
    let f0 = fr.f.value();
    let n0 = fr.nu.value();
    let center = [0, 1, 2].map(|c| f0[c] + t0 * n0[c]);
    let f = JetVec3::lift(&p.components, anchor, CONTACT_ORDER);
    let d = JetVec3::constant(anchor, CONTACT_ORDER, center).sub(&f);
    let jet = d.norm_sq().add_const(-t0 * t0).scale(-0.5);
    Ok(PhiJet { jet, t0, center })
}

#[derive(Debug, Clone, Serialize)]
pub struct ContactReport {
    pub kind: ContactKind,
    /// Closed-form discriminant.
    pub delta: f64,
    /// Discriminant of the computed cubic jet.
    pub delta_jet: f64,
    pub d4: D4Type,
    pub kappa: f64,
    /// Edge inflectional curvature.
    pub b30: f64,
    pub c1: f64,
    pub ridge: bool,
    /// `(A, B, C, D)` of the computed jet.
    pub third: [f64; 4],
}

fn c1_and_monomials(n: &NormalFormCoeffs) -> (f64, [f64; 2]) {
    let m = [4.0 * n.b12.powi(3), n.b30 * n.b03 * n.b03];
    (m[0] + m[1], m)
}

fn cross_check(closed: f64, jet: f64, monomials: &[f64], what: &str) -> Result<()> {
    let scale = monomials.iter().fold(closed.abs(), |m, x| m + x.abs());
    if (closed - jet).abs() > 1e-7 * scale.max(f64::MIN_POSITIVE) {
        return Err(GeomError::ConsistencyFailure(format!(
            "{what}: closed form {closed:e} vs jet {jet:e}"
        )));
    }
    Ok(())
}

/// Discriminant of `φ` at the origin of a normal form, `b30·C1/b20⁴`, checked
/// against the jet.
pub fn delta_phi(n: &NormalFormCoeffs, tol: &Tolerances) -> Result<ContactReport> {
    let b20 = n.b20;
    if b20.abs() <= tol.curvature {
        return Err(GeomError::ZeroCurvature { kappa: b20 });
    }
    let p = from_normal_form(n)?;
    let phi = phi_jet(&p, [0.0, 0.0], tol)?;
    let third = third_derivatives(&phi.jet);
    let (delta_jet, jet_monomials) = cubic_discriminant(third);
    let (c1, _) = c1_and_monomials(n);
    let b4 = b20.powi(4);
    let monomials = [
        n.b30 * n.b30 * n.b03 * n.b03 / b4,
        4.0 * n.b30 * n.b12.powi(3) / b4,
    ];
    let delta = n.b30 * c1 / b4;
    cross_check(delta, delta_jet, &jet_monomials, "Δ_φ")?;
    Ok(ContactReport {
        kind: ContactKind::DistanceSquared,
        delta,
        delta_jet,
        d4: d4_of(delta, &monomials, tol),
        kappa: b20,
        b30: n.b30,
        c1,
        ridge: tol.is_zero_poly(c1, &c1_and_monomials(n).1),
        third,
    })
}

/// D4 test for the distance-squared function: `b30 ≠ 0` and not a ridge,
/// cross-checked against the sign of `Δ_φ`.
pub fn classify_umbilic(n: &NormalFormCoeffs, tol: &Tolerances) -> Result<ContactReport> {
    let r = delta_phi(n, tol)?;
    let conj = n.b30.abs() > tol.zero_poly && !r.ridge;
    if conj != (r.d4 != D4Type::NotD4) {
        return Err(GeomError::ConsistencyFailure(format!(
            "D4 conditions say {conj} but Δ_φ = {:e}",
            r.delta
        )));
    }
    Ok(r)
}

/// `h̃ = ⟨n0, f + c⟩ − ⟨n0, f(p) + c⟩` with `n0 = ν(p)`.
pub fn height_jet(
    p: &PolySurface,
    c: [f64; 3],
    anchor: [f64; 2],
    tol: &Tolerances,
) -> Result<Jet2> {
    let fr = build_frame(p, anchor, 3, tol)?;
    let n0 = fr.nu.value();
    let f = JetVec3::lift(&p.translated(c).components, anchor, CONTACT_ORDER);
    let h = f.dot(&JetVec3::constant(anchor, CONTACT_ORDER, n0));
    Ok(h.add_const(-h.value()))
}

/// Height-function contact at the origin of a normal form with `b20 = 0`.
pub fn height_jet_and_delta(
    n: &NormalFormCoeffs,
    tol: &Tolerances,
) -> Result<(Jet2, ContactReport)> {
    if n.b20.abs() > tol.on_axis {
        return Err(GeomError::NonzeroCurvature { b20: n.b20 });
    }
    let p = from_normal_form(n)?;
    let h = height_jet(&p, [0.0, 0.0, 1.0], [0.0, 0.0], tol)?;
    let low = h.truncate(2).max_abs_coeff();
    if low > 1e-12 {
        return Err(GeomError::ConsistencyFailure(format!(
            "2-jet of h̃ is {low:e}, not zero"
        )));
    }
    let third = third_derivatives(&h);
    let (delta_jet, jet_monomials) = cubic_discriminant(third);
    let (c1, c1m) = c1_and_monomials(n);
    let delta = n.b30 * c1;
    cross_check(delta, delta_jet, &jet_monomials, "Δ_h")?;
    let ridge = tol.is_zero_poly(c1, &c1m);
    let d4 = d4_of(delta, &[n.b30 * c1m[0], n.b30 * c1m[1]], tol);
    let conj = n.b30.abs() > tol.zero_poly && !ridge;
    if conj != (d4 != D4Type::NotD4) {
        return Err(GeomError::ConsistencyFailure(format!(
            "height D4 conditions say {conj} but Δ_h = {delta:e}"
        )));
    }
    let report = ContactReport {
        kind: ContactKind::Height,
        delta,
        delta_jet,
        d4,
        kappa: n.b20,
        b30: n.b30,
        c1,
        ridge,
        third,
    };
    Ok((h, report))
}
