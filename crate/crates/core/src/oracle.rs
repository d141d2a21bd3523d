//! Independent numerical references for the closed forms in [`kernel`] and
//! [`fourierb`], built only from quadrature transforms and textbook pairs.
//!
//! [`kernel`]: crate::kernel
//! [`fourierb`]: crate::fourierb

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::fourierb::{power_transform, HankelParams};
use crate::kernel::PhysParams;
use crate::quad::{radial_fourier3, RadialFunction};
use crate::specfun::{k0_moment_full, k1, tail_k0, tail_z2k0, Tolerance};

fn oracle_tol() -> Tolerance {
    Tolerance {
        abs_tol: 1e-300,
        rel_tol: 1e-11,
        max_subdivisions: 400,
    }
}

/// Coordinate-space kernel of `1/(√(4π²p²+m²) − m − E)` by transforming the
/// symbol. It splits as
///
/// ```text
/// (m+E)/(q+μ²) + 1/√(q+m²) + (m+E)²/(√(q+m²)(q+μ²)),   q = 4π²p²,
/// ```
///
/// whose first two pieces are the Yukawa and `K₁` pairs; the last decays like
/// `p⁻³` and is transformed numerically.
pub fn green_oracle(r: f64, p: &PhysParams) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(
            "green_oracle",
            format!("radius must be positive, got {r}"),
        ));
    }
    let (m, mu) = (p.m, p.mu);
    let cm = m + p.energy;
    let yukawa = cm * (-mu * r).exp() / (4.0 * PI * r);
    let bessel = m / (2.0 * PI * PI * r) * k1(m * r);
    let rest = move |k: f64| {
        let q = 4.0 * PI * PI * k * k;
        cm * cm / ((q + m * m).sqrt() * (q + mu * mu))
    };
    let order = if mu == 0.0 { 2.0 } else { 0.0 };
    let f = RadialFunction::new(rest, order)?;
    Ok(yukawa + bessel + radial_fourier3(&f, r, &oracle_tol())?)
}

/// `r·(𝓑₁(r) − r + 1/r)` at unit mass, written with tail integrals so it
/// decays without cancellation; tends to `1/2` at the origin.
fn b_profile_regular_scaled(x: f64) -> f64 {
    (-(x * x - 2.0) * tail_k0(x) + 2.0 * x * x * k1(x) - tail_z2k0(x)) / PI
}

/// Unit-mass transform of the second-order profile. The `r − 1/r` growth is
/// split off and transformed as `|x|` (finite part) and `|x|⁻¹`; the rest is
/// transformed numerically.
pub fn b_hat_oracle(sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(domain(
            "b_hat_oracle",
            format!("sigma must be positive, got {sigma}"),
        ));
    }
    let f = RadialFunction::new(|r: f64| b_profile_regular_scaled(r) / r, 1.0)?;
    let rest = radial_fourier3(&f, sigma, &oracle_tol())?;
    Ok(-1.0 / (2.0 * PI.powi(3) * sigma.powi(4)) - 1.0 / (PI * sigma * sigma) + rest)
}

/// Transform of `|x|^{−α} ∫_{m|x|}^∞ z^β K₀` by direct quadrature.
pub fn hankel_tail_oracle(hp: &HankelParams, k: f64) -> Result<f64> {
    let m = hp.m;
    let alpha = hp.alpha_exp;
    let beta = hp.beta_exp;
    let tail = move |x: f64| match beta {
        0 => tail_k0(x),
        1 => x * k1(x),
        _ => tail_z2k0(x),
    };
    let f = RadialFunction::new(
        move |r: f64| r.powi(-alpha) * tail(m * r),
        f64::from(alpha.max(0)),
    )?;
    radial_fourier3(&f, k, &oracle_tol())
}

/// Transform of `|x|^{−α} ∫₀^{m|x|} z^β K₀`, as the full moment times the
/// power-law transform minus [`hankel_tail_oracle`].
pub fn hankel_incomplete_oracle(hp: &HankelParams, k: f64) -> Result<f64> {
    let full = k0_moment_full(hp.beta_exp) * power_transform(hp.alpha_exp, k)?;
    Ok(full - hankel_tail_oracle(hp, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourierb::{b_hat, hankel_tail};
    use crate::kernel::green_function;

    #[test]
    fn green_matches_at_a_few_points() {
        let p = PhysParams::from_mu(1.0, 0.3).unwrap();
        for &r in &[0.1, 1.0, 4.0] {
            let a = green_function(r, &p).unwrap();
            let b = green_oracle(r, &p).unwrap();
            assert!((a / b - 1.0).abs() < 1e-8, "r={r}: {a} vs {b}");
        }
    }

    #[test]
    fn b_hat_matches_at_one_point() {
        let a = b_hat(0.5).unwrap();
        let b = b_hat_oracle(0.5).unwrap();
        assert!((a / b - 1.0).abs() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn regular_part_limit() {
        assert!((b_profile_regular_scaled(1e-8) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn tail_matches_closed_form() {
        let hp = HankelParams::new(1, 2, 1.0).unwrap();
        let a = hankel_tail(&hp, 0.4).unwrap();
        let b = hankel_tail_oracle(&hp, 0.4).unwrap();
        assert!((a / b - 1.0).abs() < 1e-8, "{a} vs {b}");
    }
}
