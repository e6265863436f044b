//! Numerical thresholds shared by every module.

use serde::{Deserialize, Serialize};

/// Environment variable holding a multiplier applied to every tolerance.
pub const TOL_ENV: &str = "FRONTLAB_TOL";

/// Default jet order for frame construction.
pub const DEFAULT_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Smallest admissible |constant term| of a jet divisor.
    pub div: f64,
    /// Smallest admissible constant term of a jet radicand.
    pub sqrt: f64,
    /// Largest admissible `c_i0` when dividing by `v`.
    pub divv: f64,
    /// Lower bound on `‖f_u × ψ‖` and on `ÊĜ − F̂²`.
    pub frame: f64,
    /// Internal consistency checks between two routes to the same quantity.
    pub consistency: f64,
    /// Base threshold for ridge tests, scaled by `1 + |κ̂₂|`.
    pub ridge: f64,
    /// Base threshold for singular-point tests, scaled by frame magnitudes.
    pub sing: f64,
    /// Largest admissible |value| of a coefficient forbidden by the normal form.
    pub normal_form: f64,
    /// Radicands in `[-clamp, 0)` are treated as zero.
    pub clamp: f64,
    /// Threshold for `|N̂|` (front test) and for `|κ̂₂|` (zero curvature).
    pub curvature: f64,
    /// Relative threshold for zero tests on discriminant-like polynomials.
    pub zero_poly: f64,
    /// Largest admissible `‖df(η)‖` at a singular point.
    pub null: f64,
    /// Threshold on `|v|` below which a point counts as on the singular curve.
    pub on_axis: f64,
    /// Largest admissible `‖df*(η*)‖` along the dual singular set.
    pub null_field: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            div: 1e-12,
            sqrt: 1e-12,
            divv: 1e-9,
            frame: 1e-9,
            consistency: 1e-8,
            ridge: 1e-9,
            sing: 1e-9,
            normal_form: 1e-9,
            clamp: 1e-12,
            curvature: 1e-9,
            zero_poly: 1e-9,
            null: 1e-6,
            on_axis: 1e-12,
            null_field: 1e-7,
        }
    }
}

impl Tolerances {
    /// Every threshold multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            div: self.div * s,
            sqrt: self.sqrt * s,
            divv: self.divv * s,
            frame: self.frame * s,
            consistency: self.consistency * s,
            ridge: self.ridge * s,
            sing: self.sing * s,
            normal_form: self.normal_form * s,
            clamp: self.clamp * s,
            curvature: self.curvature * s,
            zero_poly: self.zero_poly * s,
            null: self.null * s,
            on_axis: self.on_axis * s,
            null_field: self.null_field * s,
        }
    }

    /// Defaults scaled by `FRONTLAB_TOL`, if set to a positive number.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(TOL_ENV) {
            Err(_) => Ok(Self::default()),
            Ok(s) => match s.trim().parse::<f64>() {
                Ok(x) if x > 0.0 && x.is_finite() => Ok(Self::default().scaled(x)),
                _ => Err(format!("{TOL_ENV} must be a positive number, got {s:?}")),
            },
        }
    }

    /// Zero test for a polynomial expression, scaled by its largest monomial.
    pub fn is_zero_poly(&self, value: f64, monomials: &[f64]) -> bool {
        let scale = monomials.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        value.abs() <= self.zero_poly * scale
    }

    /// Threshold for ridge tests at curvature `kappa`.
    pub fn ridge_at(&self, kappa: f64) -> f64 {
        self.ridge * (1.0 + kappa.abs())
    }
}
