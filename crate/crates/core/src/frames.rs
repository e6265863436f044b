//! The singular frame `{f_u, ψ, ν}` of a frontal in adapted coordinates.
//!
//! Everything is carried as jets so downstream modules can keep
//! differentiating. With a construction order `k`:
//!
//! | quantity            | jet order |
//! |---------------------|-----------|
//! | `f`                 | `k`       |
//! | `f_u`, `f_v`        | `k - 1`   |
//! | `ψ`, `ν`, `Ê F̂ Ĝ`   | `k - 2`   |
//! | `ν_u`, `ν_v`, `L̂ M̂ N̂`, `α β α̃ β̃` | `k - 3` |

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{GeomError, Result};
use crate::jets::{det3, Jet2, JetVec3};
use crate::surface::PolySurface;

/// Lowest construction order for which `L̂, M̂, N̂` exist as jets.
pub const MIN_FRAME_ORDER: usize = 3;

#[derive(Debug, Clone)]
pub struct EdgeFrame {
    pub base: [f64; 2],
    pub order: usize,
    /// The coordinate function `v`, as a jet.
    pub v: Jet2,
    pub f: JetVec3,
    pub f_u: JetVec3,
    pub f_v: JetVec3,
    pub psi: JetVec3,
    pub nu: JetVec3,
    pub nu_u: JetVec3,
    pub nu_v: JetVec3,
    /// `‖f_u × ψ‖`.
    pub area: Jet2,
    pub e: Jet2,
    pub f_hat: Jet2,
    pub g: Jet2,
    pub l: Jet2,
    pub m: Jet2,
    pub n: Jet2,
    /// `ÊĜ − F̂²`.
    pub det: Jet2,
    pub alpha: Jet2,
    pub beta: Jet2,
    pub alpha_t: Jet2,
    pub beta_t: Jet2,
}

/// Base-point values, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameValues {
    pub point: [f64; 2],
    pub f_u: [f64; 3],
    pub psi: [f64; 3],
    pub nu: [f64; 3],
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub alpha: f64,
    pub beta: f64,
    pub alpha_t: f64,
    pub beta_t: f64,
}

impl EdgeFrame {
    pub fn values(&self) -> FrameValues {
        FrameValues {
            point: self.base,
            f_u: self.f_u.value(),
            psi: self.psi.value(),
            nu: self.nu.value(),
            e: self.e.value(),
            f: self.f_hat.value(),
            g: self.g.value(),
            l: self.l.value(),
            m: self.m.value(),
            n: self.n.value(),
            alpha: self.alpha.value(),
            beta: self.beta.value(),
            alpha_t: self.alpha_t.value(),
            beta_t: self.beta_t.value(),
        }
    }

    /// `det(f_u, ψ, ν)`, which equals `‖f_u × ψ‖`.
    pub fn volume(&self) -> Jet2 {
        det3(&self.f_u, &self.psi, &self.nu)
    }
}

/// Builds the frame of an adapted surface at `q` with jets of order `order`.
pub fn build_frame(
    p: &PolySurface,
    q: [f64; 2],
    order: usize,
    tol: &Tolerances,
) -> Result<EdgeFrame> {
    if order < MIN_FRAME_ORDER {
        return Err(GeomError::InsufficientOrder {
            needed: MIN_FRAME_ORDER,
            got: order,
        });
    }
    // ψ must be an exact polynomial quotient; off the axis the jet division
    // below cannot tell, so check once on the coefficients.
    p.psi()?;

    let f = JetVec3::lift(&p.components, q, order);
    let f_u = f.du();
    let f_v = f.dv();
    let psi = f_v.try_map(|c| c.over_v(tol))?;
    let cross = f_u.cross(&psi);
    let area_sq = cross.norm_sq();
    let area_val = area_sq.value().max(0.0).sqrt();
    if area_val <= tol.frame {
        return Err(GeomError::DegenerateFrame {
            point: q,
            detail: format!("‖f_u × ψ‖ = {area_val:e}"),
        });
    }
    let area = area_sq.sqrt(tol)?;
    let inv_area = area.recip(tol)?;
    let nu = cross.scale_by(&inv_area);
    let nu_u = nu.du();
    let nu_v = nu.dv();

    let e = f_u.dot(&f_u);
    let f_hat = f_u.dot(&psi);
    let g = psi.dot(&psi);
    let l = -f_u.dot(&nu_u);
    let m = -psi.dot(&nu_u);
    let n = -psi.dot(&nu_v);
    let det = &(&e * &g) - &(&f_hat * &f_hat);
    if det.value() <= tol.frame {
        return Err(GeomError::DegenerateFrame {
            point: q,
            detail: format!("ÊĜ − F̂² = {:e}", det.value()),
        });
    }
    let v = Jet2::var_v(q, order);
    let inv_det = det.recip(tol)?;
    let alpha = &(&(&f_hat * &m) - &(&g * &l)) * &inv_det;
    let beta = &(&(&f_hat * &l) - &(&e * &m)) * &inv_det;
    let alpha_t = &(&(&f_hat * &n) - &(&(&v * &g) * &m)) * &inv_det;
    let beta_t = &(&(&(&v * &f_hat) * &m) - &(&e * &n)) * &inv_det;

    Ok(EdgeFrame {
        base: q,
        order,
        v,
        f,
        f_u,
        f_v,
        psi,
        nu,
        nu_u,
        nu_v,
        area,
        e,
        f_hat,
        g,
        l,
        m,
        n,
        det,
        alpha,
        beta,
        alpha_t,
        beta_t,
    })
}

/// Outcome of checking the closed Weingarten coefficients against `ν_u`, `ν_v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeingartenCheck {
    pub alpha: f64,
    pub beta: f64,
    pub alpha_t: f64,
    pub beta_t: f64,
    /// Largest jet-coefficient residual of `ν_u − αf_u − βψ`, relative.
    pub residual_u: f64,
    /// Same for `ν_v − α̃f_u − β̃ψ`.
    pub residual_v: f64,
    /// Residual of `−⟨f_u, ν_v⟩ = vM̂`, relative.
    pub residual_fu_nuv: f64,
}

fn relative_residual(lhs: &JetVec3, terms: &[&JetVec3]) -> f64 {
    let mut sum = lhs.clone();
    let mut scale = lhs.0.iter().map(Jet2::max_abs_coeff).fold(0.0, f64::max);
    for t in terms {
        sum = sum.sub(t);
        scale += t.0.iter().map(Jet2::max_abs_coeff).fold(0.0, f64::max);
    }
    let r = sum.0.iter().map(Jet2::max_abs_coeff).fold(0.0, f64::max);
    r / scale.max(1.0)
}

/// Verifies the closed forms for `ν_u` and `ν_v` against the differentiated
/// normal, coefficient by coefficient.
pub fn weingarten(frame: &EdgeFrame, tol: &Tolerances) -> Result<WeingartenCheck> {
    let fr = frame;
    let residual_u = relative_residual(
        &fr.nu_u,
        &[&fr.f_u.scale_by(&fr.alpha), &fr.psi.scale_by(&fr.beta)],
    );
    let residual_v = relative_residual(
        &fr.nu_v,
        &[&fr.f_u.scale_by(&fr.alpha_t), &fr.psi.scale_by(&fr.beta_t)],
    );
    let lhs = -fr.f_u.dot(&fr.nu_v);
    let rhs = &fr.v * &fr.m;
    let residual_fu_nuv =
        lhs.max_abs_diff(&rhs) / (1.0 + lhs.max_abs_coeff() + rhs.max_abs_coeff());

    let check = WeingartenCheck {
        alpha: fr.alpha.value(),
        beta: fr.beta.value(),
        alpha_t: fr.alpha_t.value(),
        beta_t: fr.beta_t.value(),
        residual_u,
        residual_v,
        residual_fu_nuv,
    };
    let worst = residual_u.max(residual_v).max(residual_fu_nuv);
    if worst > tol.consistency {
        return Err(GeomError::ConsistencyFailure(format!(
            "Weingarten closed forms disagree with ν derivatives at {:?}: residual {worst:e}",
            fr.base
        )));
    }
    Ok(check)
}

/// The front-detecting function along the singular curve, in both forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiCcr {
    /// `det(f_u, ν, ν_v)` at `(u, 0)`.
    pub determinant: f64,
    /// `‖f_u‖² N̂ / ‖f_u × ψ‖` at `(u, 0)`.
    pub closed_form: f64,
}

pub fn psi_ccr(p: &PolySurface, u: f64, tol: &Tolerances) -> Result<PsiCcr> {
    let fr = build_frame(p, [u, 0.0], MIN_FRAME_ORDER, tol)?;
    let determinant = det3(&fr.f_u, &fr.nu, &fr.nu_v).value();
    let closed_form = fr.e.value() * fr.n.value() / fr.area.value();
    Ok(PsiCcr {
        determinant,
        closed_form,
    })
}
