//! Differential geometry of cuspidal edges, their parallel and dual surfaces.
//!
//! The crate is built bottom-up: [`jets`] provides exact truncated Taylor
//! arithmetic, [`frames`] the singular frame of an adapted surface, and the
//! remaining modules the curvature, ridge, singularity and contact theory on
//! top of it.

pub mod cli;
pub mod config;
pub mod contact;
pub mod curvature;
pub mod dual;
pub mod error;
pub mod frames;
pub mod grid;
pub mod jets;
pub mod mesh;
pub mod parallel;
pub mod poly;
pub mod report;
pub mod ridge;
pub mod singularity;
pub mod surface;
pub mod sweep;
pub mod verify;

pub use config::Tolerances;
pub use error::GeomError;
pub use jets::{Jet2, JetVec3};
pub use poly::Poly2;
pub use surface::{NormalFormCoeffs, PolySurface};
