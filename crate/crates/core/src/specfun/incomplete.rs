//! Incomplete and tail integrals of `K₀` (and one of `K₁`).
//!
//! Below `x = 2` everything comes from term-by-term integration of the `K₀`
//! series, which is exact in the logarithm. Above, the tails are integrated
//! with a fixed rule once the exponential is factored out, and the incomplete
//! integrals follow from the closed full moments.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use super::bessel::{k0, k0e, k1, k1e};
use super::gamma::gamma;
use super::EULER_GAMMA;
use crate::error::{domain, Result};
use crate::quad::gauss_legendre;

const SWITCH: f64 = 2.0;

/// Which weighted integral of `K₀` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum K0Integral {
    /// `∫₀^x z^β K₀(z) dz`, `β ∈ {0, 1, 2}`.
    IncompletePlain { beta: u32 },
    /// `∫₀^x cosh(νz) K₀(z) dz`, `0 ≤ ν < 1`.
    IncompleteCosh { nu: f64 },
    /// `∫_x^∞ e^{−νz} K₀(z) dz`, `0 ≤ ν < 1`.
    TailExp { nu: f64 },
    /// `∫_x^∞ K₁(z)/z dz`, `x > 0`.
    TailK1OverZ,
    /// `∫_x^∞ z K₀(z) dz`.
    TailZK0,
}

/// `∫₀^∞ z^β K₀(z) dz = 2^{β−1} Γ((β+1)/2)²`.
pub fn k0_moment_full(beta: u32) -> f64 {
    let g = gamma(0.5 * (f64::from(beta) + 1.0));
    2f64.powi(beta as i32 - 1) * g * g
}

/// `∫₀^∞ cosh(μz) K₀(z) dz = π / (2√(1−μ²))`.
pub fn f1_moment(mu: f64) -> Result<f64> {
    if !(mu.abs() < 1.0) {
        return Err(domain(
            "f1_moment",
            format!("|mu| must be below 1, got {mu}"),
        ));
    }
    Ok(FRAC_PI_2 / (1.0 - mu * mu).sqrt())
}

pub fn k0_weighted_integral(kind: K0Integral, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(domain(
            "k0_weighted_integral",
            format!("x must be nonnegative, got {x}"),
        ));
    }
    let check_nu = |nu: f64| {
        if (0.0..1.0).contains(&nu) {
            Ok(())
        } else {
            Err(domain(
                "k0_weighted_integral",
                format!("nu must lie in [0, 1), got {nu}"),
            ))
        }
    };
    match kind {
        K0Integral::IncompletePlain { beta: 0 } => Ok(int_k0(x)),
        K0Integral::IncompletePlain { beta: 1 } => Ok(int_zk0(x)),
        K0Integral::IncompletePlain { beta: 2 } => Ok(int_z2k0(x)),
        K0Integral::IncompletePlain { beta } => Err(domain(
            "k0_weighted_integral",
            format!("beta must be 0, 1 or 2, got {beta}"),
        )),
        K0Integral::IncompleteCosh { nu } => {
            check_nu(nu)?;
            Ok(cosh_int_k0(x, nu))
        }
        K0Integral::TailExp { nu } => {
            check_nu(nu)?;
            Ok(tail_exp_k0(x, nu))
        }
        K0Integral::TailK1OverZ => {
            if x == 0.0 {
                Err(domain(
                    "k0_weighted_integral",
                    "K1(z)/z is not integrable at 0",
                ))
            } else {
                Ok(tail_k1_over_z(x))
            }
        }
        K0Integral::TailZK0 => Ok(tail_zk0(x)),
    }
}

/// `∫₀^x z^p K₀(z) dz` by integrating the series term by term. Accurate for
/// `x` up to about 3.
pub(crate) fn int_zpow_k0_series(x: f64, p: u32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let lx = (0.5 * x).ln() + EULER_GAMMA;
    let y = 0.25 * x * x;
    let pf = f64::from(p);
    let mut coeff = x.powi(p as i32 + 1); // x^{p+1} y^k/(k!)²
    let mut harm = 0.0;
    let mut sum = 0.0;
    for k in 0..80 {
        let q = 2.0 * k as f64 + pf + 1.0;
        let term = coeff / q * (harm - lx + 1.0 / q);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() && k > 2 {
            break;
        }
        let kf = k as f64 + 1.0;
        coeff *= y / (kf * kf);
        harm += 1.0 / kf;
    }
    sum
}

/// `∫₀^∞ e^{−t} g(t) dt` for a `g` that is smooth on the half line with its
/// nearest singularity at `t = −d`. Twelve Gauss–Legendre nodes on each of
/// the doubling panels `0, w, 2w, 4w, …` with `w = min(d, 1)` give about
/// 1e-15 relative for every tail used here; `e^{−48}` bounds what is dropped.
fn tail_quad(g: impl Fn(f64) -> f64, d: f64) -> f64 {
    static BASE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (x, w) = BASE.get_or_init(|| gauss_legendre(12, -1.0, 1.0));
    let mut total = 0.0;
    let (mut a, mut b) = (0.0, d.min(1.0));
    while a < 48.0 {
        let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
        total += half
            * x.iter()
                .zip(w)
                .map(|(&xi, &wi)| {
                    let t = mid + half * xi;
                    wi * (-t).exp() * g(t)
                })
                .sum::<f64>();
        a = b;
        b *= 2.0;
    }
    total
}

/// `∫_x^∞ K₀(z) dz`.
pub fn tail_k0(x: f64) -> f64 {
    if x <= SWITCH {
        FRAC_PI_2 - int_zpow_k0_series(x, 0)
    } else {
        (-x).exp() * tail_quad(|t| k0e(x + t), x)
    }
}

/// `∫₀^x K₀(z) dz`.
pub fn int_k0(x: f64) -> f64 {
    if x <= SWITCH {
        int_zpow_k0_series(x, 0)
    } else {
        FRAC_PI_2 - tail_k0(x)
    }
}

/// `∫₀^x z K₀(z) dz`.
pub fn int_zk0(x: f64) -> f64 {
    if x <= SWITCH {
        int_zpow_k0_series(x, 1)
    } else {
        1.0 - x * k1(x)
    }
}

/// `∫₀^x z² K₀(z) dz`.
pub fn int_z2k0(x: f64) -> f64 {
    if x <= SWITCH {
        int_zpow_k0_series(x, 2)
    } else {
        FRAC_PI_2 - tail_z2k0(x)
    }
}

/// `∫_x^∞ z K₀(z) dz = x K₁(x)`.
pub fn tail_zk0(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x * k1(x)
    }
}

/// `∫_x^∞ z² K₀(z) dz = x² K₁(x) + x K₀(x) + ∫_x^∞ K₀`.
pub fn tail_z2k0(x: f64) -> f64 {
    if x == 0.0 {
        FRAC_PI_2
    } else {
        x * x * k1(x) + x * k0(x) + tail_k0(x)
    }
}

/// `∫_x^∞ K₁(z)/z dz`, `x > 0`.
pub fn tail_k1_over_z(x: f64) -> f64 {
    if x <= SWITCH {
        // K₁(x) + ∫₀^x K₀ = π/2 + ∫_x^∞ K₁(z)/z dz
        k1(x) - tail_k0(x)
    } else {
        (-x).exp() * tail_quad(|t| k1e(x + t) / (x + t), x)
    }
}

/// `∫_x^∞ e^{−νz} K₀(z) dz` for `|ν| < 1`.
pub fn tail_exp_k0(x: f64, nu: f64) -> f64 {
    if x <= SWITCH {
        let full = if nu == 0.0 {
            FRAC_PI_2
        } else {
            nu.acos() / (1.0 - nu * nu).sqrt()
        };
        full - exp_int_k0_series(x, -nu)
    } else {
        let rate = 1.0 + nu;
        (-rate * x).exp() / rate * tail_quad(|t| k0e(x + t / rate), rate * x)
    }
}

/// `∫₀^x e^{cz} K₀(z) dz` for `x ≤ 2`, by expanding the exponential.
fn exp_int_k0_series(x: f64, c: f64) -> f64 {
    let mut sum = 0.0;
    let mut fac = 1.0;
    for j in 0..80u32 {
        let term = fac * int_zpow_k0_series(x, j);
        sum += term;
        if j > 2 && term.abs() < 1e-18 * sum.abs() {
            break;
        }
        fac *= c / f64::from(j + 1);
    }
    sum
}

/// `∫₀^x cosh(νz) K₀(z) dz` for `|ν| < 1`.
pub fn cosh_int_k0(x: f64, nu: f64) -> f64 {
    if nu == 0.0 {
        return int_k0(x);
    }
    if x <= SWITCH {
        let mut sum = 0.0;
        let mut fac = 1.0;
        let n2 = nu * nu;
        for j in (0..160u32).step_by(2) {
            let term = fac * int_zpow_k0_series(x, j);
            sum += term;
            if j > 2 && term.abs() < 1e-18 * sum {
                break;
            }
            fac *= n2 / f64::from((j + 1) * (j + 2));
        }
        sum
    } else {
        FRAC_PI_2 / (1.0 - nu * nu).sqrt() - 0.5 * (tail_exp_k0(x, nu) + tail_exp_k0(x, -nu))
    }
}

#[cfg(test)]
mod tests {
    use super::super::Tolerance;
    use super::*;
    use crate::quad::{integrate_adaptive, integrate_to_infinity, RadialFunction};

    fn quad_oracle(f: impl Fn(f64) -> f64 + Send + Sync, a: f64, b: f64) -> f64 {
        let rf = RadialFunction::new(f, 0.0).unwrap();
        let tol = Tolerance::new(1e-300, 1e-13, 400).unwrap();
        integrate_adaptive(&rf, a, b, &tol).unwrap().value
    }

    #[test]
    fn tails_match_adaptive_quadrature() {
        let tol = Tolerance::new(1e-300, 1e-14, 2000).unwrap();
        let tail =
            |f: &dyn Fn(f64) -> f64, x: f64| integrate_to_infinity(f, x, &tol).unwrap().value;
        for &x in &[2.0000001, 2.5, 3.0, 6.0, 20.0] {
            for &nu in &[-0.999, -0.9, -0.5, 0.0, 0.5, 0.9, 0.99] {
                let want = tail(&|z| (-(1.0 + nu) * z).exp() * k0e(z), x);
                assert!(
                    (tail_exp_k0(x, nu) / want - 1.0).abs() < 1e-14,
                    "x={x} nu={nu}"
                );
            }
            assert!(
                (tail_k0(x) / tail(&|z| k0(z), x) - 1.0).abs() < 1e-14,
                "x={x}"
            );
            assert!(
                (tail_k1_over_z(x) / tail(&|z| k1(z) / z, x) - 1.0).abs() < 1e-14,
                "x={x}"
            );
        }
    }

    #[test]
    fn full_moments() {
        assert!((k0_moment_full(0) - FRAC_PI_2).abs() < 1e-15);
        assert!((k0_moment_full(1) - 1.0).abs() < 1e-15);
        assert!((k0_moment_full(2) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn incomplete_against_quadrature() {
        for &x in &[0.01, 0.3, 1.0, 1.99, 2.01, 3.5, 8.0] {
            for beta in 0..3 {
                let got = k0_weighted_integral(K0Integral::IncompletePlain { beta }, x).unwrap();
                let want = quad_oracle(move |z| z.powi(beta as i32) * k0(z), 0.0, x);
                assert!(
                    (got / want - 1.0).abs() < 1e-12,
                    "beta={beta} x={x}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn tails_against_quadrature() {
        for &x in &[0.05, 0.7, 2.0, 2.5, 6.0, 20.0] {
            let want = quad_oracle(|z| k1(z) / z, x, f64::INFINITY);
            let got = tail_k1_over_z(x);
            assert!((got / want - 1.0).abs() < 1e-11, "x={x}: {got} vs {want}");
            for &nu in &[0.0, 0.3, 0.9, -0.6] {
                let want = quad_oracle(move |z| (-(nu + 1.0) * z).exp() * k0e(z), x, f64::INFINITY);
                let got = tail_exp_k0(x, nu);
                assert!(
                    (got / want - 1.0).abs() < 1e-11,
                    "x={x} nu={nu}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn cosh_integral_limits() {
        for &nu in &[0.0, 0.4, 0.8] {
            let full = f1_moment(nu).unwrap();
            let big = cosh_int_k0(200.0, nu);
            assert!((big / full - 1.0).abs() < 1e-10, "nu={nu}: {big} vs {full}");
            let x = 1.3;
            let want = quad_oracle(move |z| (nu * z).cosh() * k0(z), 0.0, x);
            assert!((cosh_int_k0(x, nu) / want - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(f1_moment(1.0).is_err());
        assert!(k0_weighted_integral(K0Integral::IncompleteCosh { nu: 1.0 }, 1.0).is_err());
        assert!(k0_weighted_integral(K0Integral::TailK1OverZ, 0.0).is_err());
        assert!(k0_weighted_integral(K0Integral::IncompletePlain { beta: 3 }, 1.0).is_err());
        assert!(k0_weighted_integral(K0Integral::TailZK0, -1.0).is_err());
    }
}
