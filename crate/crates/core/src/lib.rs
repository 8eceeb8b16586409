//! Invariant-manifold reduction of linear stochastic systems with
//! fluctuation–dissipation noise calibration, exact Gaussian laws of the
//! original and reduced dynamics, and Wasserstein-2 error certificates.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod gaussian;
pub mod grid;
pub mod linalg2;
pub mod linear_sde;
pub mod models;
pub mod montecarlo;
pub mod reduction;

pub use error::{Error, Result};
pub use gaussian::{Gaussian, Gaussian1, Gaussian2};
pub use linalg2::Mat2;
pub use linear_sde::LinearModel;
pub use models::ModelParams;
pub use reduction::{CoupledParams, OscillatorParams, ReducedModel};
