//! Birman–Schwinger threshold analysis for the relativistic operator
//! `√(−Δ+m²) − m + λV` in three dimensions.
//!
//! The crate evaluates the coordinate-space kernel of `(√(−Δ+m²) − m − E)⁻¹`
//! and its small-`α` expansion (`E = −α²`), discretizes the Birman–Schwinger
//! operator for radial wells, and computes the coefficients of
//! `λ(α)⁻¹ = μ₀ + aα + bα²` that decide how a bound state leaves the
//! threshold. [`verify`] checks every closed form against an independent
//! quadrature oracle from [`oracle`].

// NaN must fail every guard, hence `!(x > 0.0)`; reference constants keep
// all their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod fourierb;
pub mod kernel;
pub mod oracle;
pub mod quad;
pub mod specfun;
pub mod spectral;
pub mod threshold;
pub mod verify;

pub use error::{Error, Result};
pub use fourierb::HankelParams;
pub use kernel::PhysParams;
pub use specfun::Tolerance;
pub use spectral::{BsMatrix, PotentialFamily, QuadGrid, RadialPotential, SpectralResult, Table};
pub use threshold::{BCoefficient, Branch, MomentumMode, ThresholdExpansion};
pub use verify::{Check, Suite, SuiteReport, VerifyOptions};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
