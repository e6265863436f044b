use thiserror::Error;

use crate::jets::JetError;
use crate::surface::SurfaceError;

/// Errors raised by the geometric modules.
///
/// The `Display` output starts with the variant name so callers (the CLI in
/// particular) can report it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("DegenerateFrame at {point:?}: {detail}")]
    DegenerateFrame { point: [f64; 2], detail: String },
    #[error("ConsistencyFailure: {0}")]
    ConsistencyFailure(String),
    #[error("OnSingularCurve: |v| = {v:e} is on the singular curve")]
    OnSingularCurve { v: f64 },
    #[error("NotAFront at {point:?}: N̂ = {n_hat:e}")]
    NotAFront { point: [f64; 2], n_hat: f64 },
    #[error("UmbilicPoint at {point:?}: principal curvatures coincide")]
    UmbilicPoint { point: [f64; 2] },
    #[error("NotRegular at {point:?}: ‖g_u × g_v‖ = {cross:e}")]
    NotRegular { point: [f64; 2], cross: f64 },
    #[error("ZeroCurvature: bounded principal curvature {kappa:e} is zero")]
    ZeroCurvature { kappa: f64 },
    #[error("NonzeroCurvature: b20 = {b20:e}, the height-function construction needs b20 = 0")]
    NonzeroCurvature { b20: f64 },
    #[error("InconsistentNull: ‖df(η)‖ = {residual:e} at a singular point")]
    InconsistentNull { residual: f64 },
    #[error("BadTranslationVector: ⟨ν(0), c⟩ = {inner:e}")]
    BadTranslationVector { inner: f64 },
    #[error("InsufficientOrder: jet order {got} is below the required {needed}")]
    InsufficientOrder { needed: usize, got: usize },
    #[error("InvalidOffset: the parallel offset must be non-zero")]
    InvalidOffset,
}

impl GeomError {
    /// Short variant name, e.g. `"DegenerateFrame"`.
    pub fn name(&self) -> &'static str {
        use crate::jets::JetError as J;
        use crate::surface::SurfaceError as S;
        match self {
            GeomError::Jet(J::DivisionNearZero { .. }) => "DivisionNearZero",
            GeomError::Jet(J::SqrtOfNonpositive { .. }) => "SqrtOfNonpositive",
            GeomError::Jet(J::NotDivisibleByV { .. }) => "NotDivisibleByV",
            GeomError::Surface(S::Parse { .. }) => "ParseError",
            GeomError::Surface(S::Constraint(_)) => "ConstraintError",
            GeomError::Surface(S::NotInNormalForm { .. }) => "NotInNormalForm",
            GeomError::Surface(S::NotAdapted { .. }) => "NotAdapted",
            GeomError::DegenerateFrame { .. } => "DegenerateFrame",
            GeomError::ConsistencyFailure(_) => "ConsistencyFailure",
            GeomError::OnSingularCurve { .. } => "OnSingularCurve",
            GeomError::NotAFront { .. } => "NotAFront",
            GeomError::UmbilicPoint { .. } => "UmbilicPoint",
            GeomError::NotRegular { .. } => "NotRegular",
            GeomError::ZeroCurvature { .. } => "ZeroCurvature",
            GeomError::NonzeroCurvature { .. } => "NonzeroCurvature",
            GeomError::InconsistentNull { .. } => "InconsistentNull",
            GeomError::BadTranslationVector { .. } => "BadTranslationVector",
            GeomError::InsufficientOrder { .. } => "InsufficientOrder",
            GeomError::InvalidOffset => "InvalidOffset",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
