//! Special functions: modified Bessel functions of the second kind, the
//! integrals of `K₀` that appear in the Green's function, the Gamma
//! function and a restricted `₃F₂`.
//!
//! Everything here works in units where the mass is one; callers rescale.

mod bessel;
mod gamma;
mod hyper;
mod incomplete;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bessel::{bessel_k, k0, k0e, k1, k1e, k2};
pub use gamma::{gamma, rgamma};
pub use hyper::hyp3f2_neg;
pub use incomplete::{
    f1_moment, int_k0, int_z2k0, int_zk0, k0_moment_full, k0_weighted_integral, tail_exp_k0,
    tail_k0, tail_k1_over_z, tail_z2k0, tail_zk0, K0Integral,
};

pub use incomplete::cosh_int_k0;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

/// Absolute/relative accuracy request for adaptive routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 200,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions == 0 {
            return Err(Error::Invalid(format!(
                "tolerances must be positive (abs {abs_tol}, rel {rel_tol}, subdivisions {max_subdivisions})"
            )));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }
}
