//! Three-dimensional Fourier transforms of `|x|^{−α} ∫ z^β K₀(z) dz` and the
//! assembled transform of the second-order profile.
//!
//! For `f(x) = |x|^{−α} ∫₀^{m|x|} z^β K₀` the transform is
//!
//! ```text
//! (2π)^{α−3/2} k^{α−3} [ 2^{β+1/2−α} Γ((β+1)/2)² Γ((3−α)/2)/Γ(α/2)
//!                        − w^{3−α} 2^{β+3/2−α} Γ(a₂)²/((3−α)Γ(3/2)) ₃F₂(a₁,a₂,a₂; 3/2, a₁+1; −w²) ]
//! ```
//!
//! with `w = 2πk/m`, `a₁ = (3−α)/2`, `a₂ = (β+4−α)/2`. The tail version
//! `|x|^{−α} ∫_{m|x|}^∞ z^β K₀` is the second term without its sign.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::{gamma, hyp3f2_neg, rgamma};

/// Exponents of a Hankel-transform family in three dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HankelParams {
    /// The power in `|x|^{−α}`, one of −1, 0, 1.
    pub alpha_exp: i32,
    /// The power in `z^β K₀(z)`, one of 0, 1, 2.
    pub beta_exp: u32,
    /// Space dimension; only 3 is supported.
    pub n_dim: u32,
    /// Mass `m` fixing `w = 2πk/m`.
    pub m: f64,
}

impl HankelParams {
    pub fn new(alpha_exp: i32, beta_exp: u32, m: f64) -> Result<Self> {
        let hp = Self {
            alpha_exp,
            beta_exp,
            n_dim: 3,
            m,
        };
        hp.validate()?;
        Ok(hp)
    }

    fn validate(&self) -> Result<()> {
        if self.n_dim != 3 {
            return Err(domain(
                "HankelParams",
                format!("only n = 3 is supported, got {}", self.n_dim),
            ));
        }
        if !(-1..=1).contains(&self.alpha_exp) {
            return Err(Error::Pole(format!(
                "alpha = {} is outside the supported set {{-1, 0, 1}}",
                self.alpha_exp
            )));
        }
        if self.beta_exp > 2 {
            return Err(domain(
                "HankelParams",
                format!("beta must be 0, 1 or 2, got {}", self.beta_exp),
            ));
        }
        if !(self.m > 0.0) {
            return Err(domain(
                "HankelParams",
                format!("mass must be positive, got {}", self.m),
            ));
        }
        Ok(())
    }

    /// `w = 2πk/m`.
    pub fn w(&self, k: f64) -> f64 {
        2.0 * PI * k / self.m
    }
}

fn check_k(func: &'static str, k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(domain(
            func,
            format!("wavenumber must be positive, got {k}"),
        ))
    }
}

fn prefactor(alpha: f64, k: f64) -> f64 {
    (2.0 * PI).powf(alpha - 1.5) * k.powf(alpha - 3.0)
}

/// The `Γ`-only bracket term; zero at `α = 0` where `1/Γ(α/2)` vanishes.
fn gamma_term(alpha: f64, beta: f64) -> f64 {
    let g = gamma(0.5 * (beta + 1.0));
    2f64.powf(beta + 0.5 - alpha) * g * g * gamma(0.5 * (3.0 - alpha)) * rgamma(0.5 * alpha)
}

fn hyper_term(alpha: f64, beta: f64, w: f64) -> Result<f64> {
    let a1 = 0.5 * (3.0 - alpha);
    let a2 = 0.5 * (beta + 4.0 - alpha);
    let g = gamma(a2);
    let f = hyp3f2_neg(a1, a2, a2, 1.5, a1 + 1.0, w)?;
    Ok(
        w.powf(3.0 - alpha) * 2f64.powf(beta + 1.5 - alpha) * g * g / ((3.0 - alpha) * gamma(1.5))
            * f,
    )
}

/// Transform of `|x|^{−α} ∫₀^{m|x|} z^β K₀(z) dz` at wavenumber `k`.
pub fn hankel_incomplete(hp: &HankelParams, k: f64) -> Result<f64> {
    hp.validate()?;
    check_k("hankel_incomplete", k)?;
    let (a, b) = (f64::from(hp.alpha_exp), f64::from(hp.beta_exp));
    Ok(prefactor(a, k) * (gamma_term(a, b) - hyper_term(a, b, hp.w(k))?))
}

/// Transform of `|x|^{−α} ∫_{m|x|}^∞ z^β K₀(z) dz` at wavenumber `k`.
pub fn hankel_tail(hp: &HankelParams, k: f64) -> Result<f64> {
    hp.validate()?;
    check_k("hankel_tail", k)?;
    let (a, b) = (f64::from(hp.alpha_exp), f64::from(hp.beta_exp));
    Ok(prefactor(a, k) * hyper_term(a, b, hp.w(k))?)
}

/// Transform of `|x|^{−α}` for `k > 0`: `1/(πk²)`, `0`, `−1/(2π³k⁴)` for
/// `α = 1, 0, −1` (the last as a finite part).
pub fn power_transform(alpha_exp: i32, k: f64) -> Result<f64> {
    check_k("power_transform", k)?;
    match alpha_exp {
        1 => Ok(1.0 / (PI * k * k)),
        0 => Ok(0.0),
        -1 => Ok(-1.0 / (2.0 * PI.powi(3) * k.powi(4))),
        other => Err(Error::Pole(format!(
            "alpha = {other} is outside the supported set"
        ))),
    }
}

/// Closed form of the `α = 1, β = 0` incomplete case,
/// `(1/2k²)(1+w²)^{−1/2}`.
pub fn special_incomplete_1_0(k: f64, m: f64) -> Result<f64> {
    check_k("special_incomplete_1_0", k)?;
    let w = 2.0 * PI * k / m;
    Ok(0.5 / (k * k) / (1.0 + w * w).sqrt())
}

/// Closed form of the `α = 0, β = 1` tail case,
/// `(3/4π) k^{−3} w³ (1+w²)^{−5/2}`.
pub fn special_tail_0_1(k: f64, m: f64) -> Result<f64> {
    check_k("special_tail_0_1", k)?;
    let w = 2.0 * PI * k / m;
    Ok(3.0 / (4.0 * PI) / k.powi(3) * w.powi(3) * (1.0 + w * w).powf(-2.5))
}

/// The `α = 0, β = 1` tail case as it is usually quoted, with an extra
/// factor `2^{3/2}`. Kept for comparison only; see [`special_tail_0_1`].
pub fn special_tail_0_1_quoted(k: f64, m: f64) -> Result<f64> {
    Ok(2f64.powf(1.5) * special_tail_0_1(k, m)?)
}

/// Individual terms of [`b_hat`]: the single positive term and the sum of
/// the negative ones.
pub fn b_hat_terms(sigma: f64) -> Result<(f64, f64)> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(domain(
            "b_hat",
            format!("sigma must be positive, got {sigma}"),
        ));
    }
    let w = 2.0 * PI * sigma;
    let w2 = w * w;
    let s2 = sigma * sigma;
    let s4 = s2 * s2;
    let q = 1.0 + w2;
    let q52 = q.powf(2.5);
    let positive = 3.0 / (2.0 * PI * PI * sigma * s2) * w * w2 / q52;
    let negative = -1.0 / (2.0 * PI * s2)
        - 1.0 / (4.0 * PI.powi(3) * s4)
        - (1.0 / (8.0 * PI * PI * s4) * (6.0 * w2 * w2 + 5.0 * w2 + 2.0) / q52
            + 1.0 / (s2 * q.sqrt()))
            / PI
        - (2.0 * w2 - 1.0) / (2.0 * PI * s2 * q52);
    Ok((positive, negative))
}

/// Transform of the unit-mass second-order profile at `σ = k/m`.
pub fn b_hat(sigma: f64) -> Result<f64> {
    let (p, n) = b_hat_terms(sigma)?;
    Ok(p + n)
}

/// `b_hat(σ) + 1/(2π³σ⁴)`, the part left once the `|x|` finite part is
/// split off; integrable against `σ²` at the origin.
pub fn b_hat_regular(sigma: f64) -> Result<f64> {
    let s = sigma;
    if !(s > 0.0) {
        return Err(domain("b_hat", format!("sigma must be positive, got {s}")));
    }
    // The two σ⁻⁴ terms cancel at small σ; expand them together there.
    let w = 2.0 * PI * s;
    let w2 = w * w;
    let q = 1.0 + w2;
    let q52 = q.powf(2.5);
    let s2 = s * s;
    // −1/(4π³σ⁴) − (2+5w²+6w⁴)/(8π³σ⁴ q^{5/2}) + 1/(2π³σ⁴)
    //   = [2q^{5/2} − (2+5w²+6w⁴)] / (8π³σ⁴ q^{5/2})
    let num = if w2 < 1e-3 {
        // 2q^{5/2} = 2 + 5w² + (15/4)w⁴ + (5/8)w⁶ − (5/64)w⁸ + (3/128)w¹⁰ − ...
        w2 * w2 * (-2.25 + w2 * (0.625 + w2 * (-5.0 / 64.0 + w2 * (3.0 / 128.0))))
    } else {
        2.0 * q52 - (2.0 + 5.0 * w2 + 6.0 * w2 * w2)
    };
    let quartic = num / (8.0 * PI.powi(3) * s2 * s2 * q52);
    Ok(
        -1.0 / (2.0 * PI * s2) + quartic - 1.0 / (PI * s2 * q.sqrt())
            + 3.0 / (2.0 * PI * PI * s * s2) * w * w2 / q52
            - (2.0 * w2 - 1.0) / (2.0 * PI * s2 * q52),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_case_matches_general_formula() {
        let m = 1.0;
        let hp = HankelParams::new(1, 0, m).unwrap();
        for &k in &[0.02, 0.1, 0.5, 1.5] {
            let a = hankel_incomplete(&hp, k).unwrap();
            let b = special_incomplete_1_0(k, m).unwrap();
            assert!((a / b - 1.0).abs() < 1e-9, "k={k}: {a} vs {b}");
        }
        let hp = HankelParams::new(0, 1, 2.0).unwrap();
        for &k in &[0.05, 0.3, 1.0] {
            let a = hankel_tail(&hp, k).unwrap();
            let b = special_tail_0_1(k, 2.0).unwrap();
            assert!((a / b - 1.0).abs() < 1e-9, "k={k}: {a} vs {b}");
        }
    }

    #[test]
    fn sum_rule() {
        for alpha in [-1, 0, 1] {
            for beta in 0..3 {
                let hp = HankelParams::new(alpha, beta, 1.0).unwrap();
                let k = 0.37;
                let total = hankel_incomplete(&hp, k).unwrap() + hankel_tail(&hp, k).unwrap();
                let want =
                    crate::specfun::k0_moment_full(beta) * power_transform(alpha, k).unwrap();
                assert!(
                    (total - want).abs() <= 1e-10 * want.abs().max(1e-12),
                    "({alpha},{beta})"
                );
            }
        }
    }

    #[test]
    fn vanishing_hypergeometric_term_at_small_w() {
        let hp = HankelParams::new(1, 2, 1.0).unwrap();
        let k = 1e-6;
        let full = hankel_incomplete(&hp, k).unwrap();
        let gamma_only = prefactor(1.0, k) * gamma_term(1.0, 2.0);
        assert!((full / gamma_only - 1.0).abs() < 1e-9);
    }

    #[test]
    fn b_hat_is_negative_and_split_is_consistent() {
        for i in 0..200 {
            let s = 10f64.powf(-3.0 + 6.0 * i as f64 / 199.0);
            let v = b_hat(s).unwrap();
            assert!(v < 0.0);
            let reg = b_hat_regular(s).unwrap();
            let back = reg - 1.0 / (2.0 * PI.powi(3) * s.powi(4));
            assert!((back / v - 1.0).abs() < 1e-8, "sigma={s}: {back} vs {v}");
        }
        assert!(b_hat(0.0).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(HankelParams::new(2, 0, 1.0).is_err());
        assert!(HankelParams::new(1, 3, 1.0).is_err());
        assert!(power_transform(0, 1.0).unwrap() == 0.0);
    }
}
