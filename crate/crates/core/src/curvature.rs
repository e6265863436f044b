//! Principal curvatures of cuspidal edges and of regular surfaces.
//!
//! With `Q = L̂N̂ − vM̂²`, `Â = ÊN̂ − 2vF̂M̂ + vĜL̂` and
//! `B̂ = √(Â² − 4vDQ)` (`D = ÊĜ − F̂²`), the two principal curvatures of a
//! frontal off its singular curve are `(Â ± B̂)/(2vD)`. Exactly one of them
//! stays bounded across `v = 0`; its rationalised form `2Q/(Â ± B̂)` is what
//! [`principal_curvature_bounded`] returns. Which sign is bounded depends on
//! the sign of `N̂` on the axis.

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{GeomError, Result};
use crate::frames::EdgeFrame;
use crate::jets::{Jet2, JetVec3};
use crate::surface::PolySurface;

/// Which classical curvature the bounded one is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `N̂ > 0`: the bounded curvature is `κ̂₂ = 2Q/(Â + B̂)`.
    Kappa2,
    /// `N̂ < 0`: the bounded curvature is `κ̂₁ = 2Q/(Â − B̂)`.
    Kappa1,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Kappa2 => 1.0,
            Branch::Kappa1 => -1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PrincipalData {
    pub base: [f64; 2],
    pub branch: Branch,
    /// The bounded principal curvature, as a jet.
    pub kappa: Jet2,
    /// `v` times the unbounded principal curvature; smooth across `v = 0`.
    pub v_kappa_other: Jet2,
    pub a_hat: Jet2,
    pub b_hat: Jet2,
    /// `L̂N̂ − vM̂²`.
    pub q: Jet2,
}

impl PrincipalData {
    pub fn kappa_value(&self) -> f64 {
        self.kappa.value()
    }

    /// The unbounded principal curvature, only defined off the `u`-axis.
    pub fn kappa_other(&self) -> Option<f64> {
        let v = self.base[1];
        (v != 0.0).then(|| self.v_kappa_other.value() / v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussMean {
    pub k: f64,
    pub h: f64,
}

fn q_and_a(fr: &EdgeFrame) -> (Jet2, Jet2) {
    let v = &fr.v;
    let q = &(&fr.l * &fr.n) - &(&(v * &fr.m) * &fr.m);
    let a = &(&(&fr.e * &fr.n) - &(&(v * &fr.f_hat) * &fr.m).scale(2.0)) + &(&(v * &fr.g) * &fr.l);
    (q, a)
}

/// Gaussian and mean curvature at an off-axis point.
pub fn gauss_mean(fr: &EdgeFrame, tol: &Tolerances) -> Result<GaussMean> {
    let v = fr.base[1];
    if v.abs() < tol.on_axis {
        return Err(GeomError::OnSingularCurve { v });
    }
    let (q, a) = q_and_a(fr);
    let vd = v * fr.det.value();
    Ok(GaussMean {
        k: q.value() / vd,
        h: a.value() / (2.0 * vd),
    })
}

/// The branch that is bounded at `fr.base`, decided by the sign of `N̂`
/// (falling back to the sign of `Â` off the axis where `N̂` vanishes).
pub fn bounded_branch(fr: &EdgeFrame, tol: &Tolerances) -> Result<Branch> {
    let n = fr.n.value();
    if n.abs() > tol.curvature {
        return Ok(if n > 0.0 {
            Branch::Kappa2
        } else {
            Branch::Kappa1
        });
    }
    if fr.base[1].abs() < tol.on_axis {
        return Err(GeomError::NotAFront {
            point: fr.base,
            n_hat: n,
        });
    }
    let (_, a) = q_and_a(fr);
    Ok(if a.value() >= 0.0 {
        Branch::Kappa2
    } else {
        Branch::Kappa1
    })
}

/// The bounded principal curvature and its companions.
pub fn principal_curvature_bounded(fr: &EdgeFrame, tol: &Tolerances) -> Result<PrincipalData> {
    let branch = bounded_branch(fr, tol)?;
    principal_curvature_on_branch(fr, branch, tol)
}

/// As [`principal_curvature_bounded`] but with the branch fixed by the caller,
/// so that a field sampled over a patch follows one anchor's choice.
pub fn principal_curvature_on_branch(
    fr: &EdgeFrame,
    branch: Branch,
    tol: &Tolerances,
) -> Result<PrincipalData> {
    if fr.base[1].abs() < tol.on_axis && fr.n.value().abs() <= tol.curvature {
        return Err(GeomError::NotAFront {
            point: fr.base,
            n_hat: fr.n.value(),
        });
    }
    let (q, a) = q_and_a(fr);
    let radicand = &(&a * &a) - &(&(&fr.v * &fr.det) * &q).scale(4.0);
    let r0 = radicand.value();
    if r0 < -tol.clamp {
        return Err(GeomError::ConsistencyFailure(format!(
            "negative discriminant {r0:e} at {:?}",
            fr.base
        )));
    }
    if r0 <= tol.sqrt.max(tol.clamp) {
        return Err(GeomError::UmbilicPoint { point: fr.base });
    }
    let b = radicand.sqrt(tol)?;
    let s = branch.sign();
    let denom = &a + &b.scale(s);
    let kappa = q.scale(2.0).div_jet(&denom, tol)?;
    let v_kappa_other = denom.div_jet(&fr.det.scale(2.0), tol)?;
    Ok(PrincipalData {
        base: fr.base,
        branch,
        kappa,
        v_kappa_other,
        a_hat: a,
        b_hat: b,
        q,
    })
}

/// The principal direction `ξ∂u + ζ∂v` of the bounded curvature.
#[derive(Debug, Clone)]
pub struct PrincipalDirection {
    pub xi: Jet2,
    pub zeta: Jet2,
    /// Relative residual of the characteristic equation `Q − κÂ + vDκ² = 0`.
    pub residual: f64,
}

impl PrincipalDirection {
    pub fn value(&self) -> [f64; 2] {
        [self.xi.value(), self.zeta.value()]
    }
}

pub fn principal_direction(
    fr: &EdgeFrame,
    pd: &PrincipalData,
    tol: &Tolerances,
) -> Result<PrincipalDirection> {
    let k = &pd.kappa;
    let xi = &fr.n - &(&(&fr.v * k) * &fr.g);
    let zeta = &(k * &fr.f_hat) - &fr.m;

    // first row of (II − κI) applied to (ξ, ζ), after factoring v out of the
    // second row
    let t1 = &(&fr.l - &(k * &fr.e)) * &xi;
    let mk = &fr.m - &(k * &fr.f_hat);
    let t2 = &(&fr.v * &mk) * &zeta;
    let r = &t1 + &t2;
    let scale = 1.0 + t1.max_abs_coeff() + t2.max_abs_coeff();
    let residual = r.max_abs_coeff() / scale;
    if residual > tol.consistency {
        return Err(GeomError::ConsistencyFailure(format!(
            "principal direction residual {residual:e} at {:?}",
            fr.base
        )));
    }
    Ok(PrincipalDirection { xi, zeta, residual })
}

/// Principal data of a regular surface.
#[derive(Debug, Clone)]
pub struct RegularPrincipal {
    pub base: [f64; 2],
    /// `κ1 = (A + B)/(2W)`, `κ2 = (A − B)/(2W)` with `W = EG − F²`.
    pub kappa: [Jet2; 2],
    /// Direction fields `(ξ_i, ζ_i)` for `κ_i`.
    pub dirs: [[Jet2; 2]; 2],
    pub map: JetVec3,
    pub normal: JetVec3,
}

impl RegularPrincipal {
    pub fn values(&self) -> ([f64; 2], [[f64; 2]; 2]) {
        (
            [self.kappa[0].value(), self.kappa[1].value()],
            [
                [self.dirs[0][0].value(), self.dirs[0][1].value()],
                [self.dirs[1][0].value(), self.dirs[1][1].value()],
            ],
        )
    }
}

/// Principal curvatures and directions of a regular parametrised surface.
pub fn regular_principal(
    g: &PolySurface,
    q: [f64; 2],
    order: usize,
    tol: &Tolerances,
) -> Result<RegularPrincipal> {
    if order < 2 {
        return Err(GeomError::InsufficientOrder {
            needed: 2,
            got: order,
        });
    }
    let x = JetVec3::lift(&g.components, q, order);
    let xu = x.du();
    let xv = x.dv();
    let cross = xu.cross(&xv);
    let c0 = cross.norm_sq().value().max(0.0).sqrt();
    if c0 <= tol.frame {
        return Err(GeomError::NotRegular {
            point: q,
            cross: c0,
        });
    }
    let n = cross.normalized(tol)?;
    let (nu, nv) = (n.du(), n.dv());
    let e = xu.dot(&xu);
    let f = xu.dot(&xv);
    let gg = xv.dot(&xv);
    let l = -xu.dot(&nu);
    let m = -xu.dot(&nv);
    let nn = -xv.dot(&nv);
    let w = &(&e * &gg) - &(&f * &f);
    let a = &(&(&e * &nn) - &(&f * &m).scale(2.0)) + &(&gg * &l);
    let radicand = &(&a * &a) - &(&w * &(&(&l * &nn) - &(&m * &m))).scale(4.0);
    if radicand.value() <= tol.sqrt.max(tol.clamp) {
        return Err(GeomError::UmbilicPoint { point: q });
    }
    let b = radicand.sqrt(tol)?;
    let w2 = w.scale(2.0);
    let k1 = (&a + &b).div_jet(&w2, tol)?;
    let k2 = (&a - &b).div_jet(&w2, tol)?;

    let dir = |k: &Jet2| -> [Jet2; 2] {
        let c1 = [&nn - &(k * &gg), &(k * &f) - &m];
        let c2 = [&m - &(k * &f), &(k * &e) - &l];
        let n1 = c1[0].value().hypot(c1[1].value());
        let n2 = c2[0].value().hypot(c2[1].value());
        if n1 >= n2 {
            c1
        } else {
            c2
        }
    };
    let dirs = [dir(&k1), dir(&k2)];
    Ok(RegularPrincipal {
        base: q,
        kappa: [k1, k2],
        dirs,
        map: x,
        normal: n,
    })
}
