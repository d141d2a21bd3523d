//! Expansion of the leading Birman–Schwinger eigenvalue near threshold,
//! `λ(α)⁻¹ = μ₀ + aα + bα² + …` with `E = −α²`, and its inversion to `E(λ)`.
//!
//! With `ψ` the unit eigenvector of the Nyström matrix, `vᵢ = √wᵢ rᵢ |Vᵢ|^{1/2}`
//! and the kernel expansion `K = L₀ + √(2m)αA + 2mα²B`, perturbation theory
//! gives
//!
//! ```text
//! a = −2√2 m^{3/2} (v·ψ)² = −(m^{3/2}/√2π) (∫ |V|^{1/2} φ)²
//! b = 2m ψᵀBψ + Σ_{n≠0} (ψₙᵀ A' ψ)² / (μ₀ − μₙ),   A' = −2√2 m^{3/2} v vᵀ
//! ```
//!
//! The sum vanishes when `a = 0`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::fourierb::b_hat_regular;
use crate::kernel::{short_range_antiderivative, PhysParams};
use crate::quad::gk21;
use crate::specfun::tail_k1_over_z;
use crate::spectral::{
    eigen_continuation, leading_eigenpair, pair_matrix, s_wave_reduce, QuadGrid, RadialPotential,
    SecondOrderKernel, SpectralResult, Table,
};

/// Default classification threshold for `|a|`, relative to `μ₀`.
pub const A_ZERO_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    ANonzero,
    AZero,
}

/// Coefficients of `λ⁻¹(α) = μ₀ + aα + bα² + cα³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdExpansion {
    pub mu0: f64,
    pub lambda0: f64,
    pub a: f64,
    pub b: f64,
    /// Third-order coefficient, when fitted from continuation data.
    pub c: Option<f64>,
    pub branch: Branch,
    pub a_zero_tol: f64,
}

impl ThresholdExpansion {
    /// Classifies the branch with `a_zero_tol = 1e-8 μ₀`.
    pub fn new(mu0: f64, a: f64, b: f64) -> Result<Self> {
        Self::with_tol(mu0, a, b, A_ZERO_REL_TOL * mu0.abs())
    }

    pub fn with_tol(mu0: f64, a: f64, b: f64, a_zero_tol: f64) -> Result<Self> {
        if !(mu0 > 0.0) {
            return Err(domain(
                "ThresholdExpansion",
                format!("mu0 must be positive, got {mu0}"),
            ));
        }
        if a > 0.0 {
            return Err(domain(
                "ThresholdExpansion",
                format!("a must be <= 0, got {a}"),
            ));
        }
        let branch = if a.abs() < a_zero_tol {
            Branch::AZero
        } else {
            Branch::ANonzero
        };
        Ok(Self {
            mu0,
            lambda0: 1.0 / mu0,
            a,
            b,
            c: None,
            branch,
            a_zero_tol,
        })
    }
}

/// The vector `vᵢ = √wᵢ rᵢ |V(rᵢ)|^{1/2}`, so that `∫|V|^{1/2}φ = √(4π) v·ψ`.
pub fn overlap_vector(potential: &RadialPotential, grid: &QuadGrid) -> DVector<f64> {
    DVector::from_iterator(
        grid.size(),
        grid.nodes
            .iter()
            .zip(&grid.weights)
            .map(|(&r, &w)| w.sqrt() * r * potential.sqrt_abs(r)),
    )
}

/// `∫_Ω |V|^{1/2} φ d³y` on the grid.
pub fn overlap(psi: &[f64], potential: &RadialPotential, grid: &QuadGrid) -> f64 {
    let v = overlap_vector(potential, grid);
    (4.0 * PI).sqrt() * v.iter().zip(psi).map(|(a, b)| a * b).sum::<f64>()
}

/// `a = −(m^{3/2}/√2π) (∫|V|^{1/2}φ)²`.
pub fn coefficient_a(
    res: &SpectralResult,
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
) -> f64 {
    let o = overlap(&res.psi, potential, grid);
    -(m.powf(1.5) / (2f64.sqrt() * PI)) * o * o
}

/// How the momentum-space route treats the `k → 0` end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentumMode {
    /// Only defined when `a = 0`; otherwise a divergent-integral error.
    Strict,
    /// Reads the `k⁻⁴` part as the finite-part transform of `|x|`, which is
    /// defined for any `f`.
    FinitePart,
}

/// The pieces of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BCoefficient {
    /// `b` itself: the direct expectation plus the correction.
    pub b: f64,
    /// `2m ψᵀBψ` from the coordinate-space kernel.
    pub expectation_direct: f64,
    /// The same from the momentum-space transform, if requested.
    pub expectation_momentum: Option<f64>,
    /// Second-order perturbation sum through the `α` term.
    pub correction: f64,
}

/// `2m ψᵀBψ` in coordinate space.
pub fn b_expectation_direct(
    psi: &[f64],
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
) -> Result<f64> {
    let mb = pair_matrix(&SecondOrderKernel { m }, potential, grid)?;
    let p = DVector::from_column_slice(psi);
    Ok(2.0 * m * p.dot(&(&mb * &p)))
}

/// `sin(x)/x − 1`, accurate at small `x`.
fn sinc_minus_one(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let y = x * x;
        y * (-1.0 / 6.0 + y * (1.0 / 120.0 + y * (-1.0 / 5040.0 + y / 362_880.0)))
    } else {
        x.sin() / x - 1.0
    }
}

/// `2m ψᵀBψ` from `∫ B̂(k) |f̂(k)|² d³k` with `f = |V|^{1/2}φ`.
///
/// The transform is taken on the grid and the `k` integral stops where it
/// can no longer resolve `f̂`, at `k = n/(8R)`.
pub fn b_expectation_momentum(
    psi: &[f64],
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
    mode: MomentumMode,
    a_zero_tol: f64,
) -> Result<f64> {
    let v = overlap_vector(potential, grid);
    let vp: f64 = v.iter().zip(psi).map(|(a, b)| a * b).sum();
    let a = -2.0 * 2f64.sqrt() * m.powf(1.5) * vp * vp;
    if mode == MomentumMode::Strict && a.abs() >= a_zero_tol {
        return Err(Error::DivergentMomentum { a, tol: a_zero_tol });
    }
    // point masses 4π wⱼ rⱼ² fⱼ at radius rⱼ
    let (r, c): (Vec<f64>, Vec<f64>) = grid
        .nodes
        .iter()
        .zip(&grid.weights)
        .zip(psi)
        .map(|((&r, &w), &p)| {
            let f = potential.sqrt_abs(r) * p / ((4.0 * PI * w).sqrt() * r);
            (r, 4.0 * PI * w * r * r * f)
        })
        .unzip();
    let f0: f64 = c.iter().sum();
    let integrand = |k: f64| {
        if k == 0.0 {
            return 0.0;
        }
        let mut fh = 0.0;
        let mut dfh = 0.0;
        for (rj, cj) in r.iter().zip(&c) {
            let d = sinc_minus_one(2.0 * PI * k * rj);
            fh += cj * (1.0 + d);
            dfh += cj * d;
        }
        let g = fh * fh;
        let dg = dfh * (fh + f0);
        // m-scaled transform: B̂_m(k) = m⁻⁴ b̂(k/m)
        let reg = b_hat_regular(k / m).unwrap_or(f64::NAN) / m.powi(4);
        let fp = -1.0 / (2.0 * PI.powi(3) * m.powi(4)) * (m / k).powi(4);
        4.0 * PI * (k * k * reg * g + k * k * fp * dg)
    };
    let rr = potential.support_radius;
    let k_max = grid.size() as f64 / (8.0 * rr);
    let panel = 0.25 / rr;
    let panels = (k_max / panel).ceil() as usize;
    let mut total = 0.0;
    for j in 0..panels {
        total += gk21(&integrand, j as f64 * panel, (j + 1) as f64 * panel).0;
    }
    // past k_max only the subtracted f̂(0)² survives: ∫ (2/π²) f̂(0)² k⁻² dk
    total += 2.0 * f0 * f0 / (PI * PI * panels as f64 * panel);
    if !total.is_finite() {
        return Err(Error::Evaluation {
            func: "b_expectation_momentum",
            msg: "momentum integral is not finite".into(),
        });
    }
    // (f, 𝓑_m f) → 2m · m/4π · (f, 𝓑_m f)
    Ok(2.0 * m * m / (4.0 * PI) * total)
}

/// `Σ_{n≠0} (ψₙᵀA'ψ)²/(μ₀ − μₙ)`.
pub fn b_correction(
    res: &SpectralResult,
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
) -> f64 {
    let v = overlap_vector(potential, grid);
    let p = DVector::from_column_slice(&res.psi);
    let vp = v.dot(&p);
    let scale = 8.0 * m.powi(3) * vp * vp;
    (1..res.eigenvalues.len())
        .map(|n| {
            let vn = v.dot(&res.eigenvectors.column(n));
            vn * vn / (res.mu0 - res.eigenvalues[n])
        })
        .sum::<f64>()
        * scale
}

/// `b` with both expectation routes when `mode` is given.
pub fn coefficient_b(
    res: &SpectralResult,
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
    mode: Option<MomentumMode>,
) -> Result<BCoefficient> {
    let expectation_direct = b_expectation_direct(&res.psi, potential, grid, m)?;
    let expectation_momentum = match mode {
        Some(md) => Some(b_expectation_momentum(
            &res.psi,
            potential,
            grid,
            m,
            md,
            A_ZERO_REL_TOL * res.mu0,
        )?),
        None => None,
    };
    let correction = b_correction(res, potential, grid, m);
    Ok(BCoefficient {
        b: expectation_direct + correction,
        expectation_direct,
        expectation_momentum,
        correction,
    })
}

/// Spectrum, `a` and `b` for a potential at mass `m`.
pub fn analyze(
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
) -> Result<(SpectralResult, ThresholdExpansion, BCoefficient)> {
    let p = PhysParams::from_alpha(m, 0.0)?;
    let res = leading_eigenpair(&s_wave_reduce(potential, &p, grid)?)?;
    let a = coefficient_a(&res, potential, grid, m);
    let bc = coefficient_b(&res, potential, grid, m, None)?;
    let exp = ThresholdExpansion::new(res.mu0, a, bc.b)?;
    Ok((res, exp, bc))
}

/// `λ(α) = 1/(μ₀ + aα + bα² [+ cα³])`.
pub fn lambda_of_alpha(exp: &ThresholdExpansion, alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(domain(
            "lambda_of_alpha",
            format!("alpha must be >= 0, got {alpha}"),
        ));
    }
    let inv = exp.mu0 + alpha * (exp.a + alpha * (exp.b + alpha * exp.c.unwrap_or(0.0)));
    if !(inv > 0.0) {
        return Err(domain(
            "lambda_of_alpha",
            format!("mu0 + a alpha + b alpha^2 = {inv} is not positive at alpha = {alpha}"),
        ));
    }
    Ok(1.0 / inv)
}

/// `E(λ) = −α(λ)²` from the inverted series.
///
/// On the `a ≠ 0` branch `α = −δ/(λ₀²a) + ((λ₀a²−b)/(λ₀⁴a³))δ²` with
/// `δ = λ − λ₀`. On the `a = 0` branch `α = s − (c/2b)s²` with
/// `s = √(δ/(λ₀²(−b)))`, the second term only when `c` is known.
pub fn energy_of_lambda(exp: &ThresholdExpansion, lambda: f64) -> Result<f64> {
    let l0 = exp.lambda0;
    if lambda < l0 {
        return Err(Error::BelowThreshold {
            lambda,
            lambda0: l0,
        });
    }
    let d = lambda - l0;
    let alpha = match exp.branch {
        Branch::ANonzero => {
            let a = exp.a;
            -d / (l0 * l0 * a) + (l0 * a * a - exp.b) / (l0.powi(4) * a.powi(3)) * d * d
        }
        Branch::AZero => {
            if !(exp.b < 0.0) {
                return Err(domain(
                    "energy_of_lambda",
                    format!("the a = 0 branch needs b < 0, got b = {}", exp.b),
                ));
            }
            let s = (d / (l0 * l0 * -exp.b)).sqrt();
            s - exp.c.map_or(0.0, |c| c / (2.0 * exp.b)) * s * s
        }
    };
    Ok(-alpha * alpha)
}

/// `E(λ)` without the series: solves `μ(α) = 1/λ` for the leading
/// eigenvalue of the full kernel by the secant method, starting from the
/// series estimate.
pub fn energy_bruteforce(
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
    exp: &ThresholdExpansion,
    lambda: f64,
) -> Result<f64> {
    let target = 1.0 / lambda;
    let mu_at = |alpha: f64| -> Result<f64> {
        let p = PhysParams::from_alpha(m, alpha)?;
        Ok(leading_eigenpair(&s_wave_reduce(potential, &p, grid)?)?.mu0 - target)
    };
    let guess = (-energy_of_lambda(exp, lambda)?).sqrt();
    let (mut x0, mut x1) = (guess * 0.9, guess * 1.1);
    let (mut f0, mut f1) = (mu_at(x0)?, mu_at(x1)?);
    for _ in 0..30 {
        if f1 == f0 {
            break;
        }
        let x2 = (x1 - f1 * (x1 - x0) / (f1 - f0)).max(0.0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = mu_at(x1)?;
        if (x1 - x0).abs() <= 1e-13 * x1.abs() || f1 == 0.0 {
            return Ok(-x1 * x1);
        }
    }
    if f1.abs() <= 1e-12 * target {
        Ok(-x1 * x1)
    } else {
        Err(Error::Evaluation {
            func: "energy_bruteforce",
            msg: format!("secant iteration did not converge (residual {f1:e})"),
        })
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.abs().ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Result of the `E = 0` eigenvalue test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroEnergyReport {
    pub overlap: f64,
    pub holds: bool,
    /// Fitted decay exponent of `u` over `[5R, 50R]`.
    pub decay_exponent: f64,
}

/// Whether `∫|V|^{1/2}φ` vanishes within `tol`, with the decay of `u` as a
/// diagnostic.
pub fn zero_energy_condition(
    res: &SpectralResult,
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
    tol: f64,
) -> Result<ZeroEnergyReport> {
    let o = overlap(&res.psi, potential, grid);
    let rr = potential.support_radius;
    let radii = far_radii(rr);
    let u = u_reconstruct(res, potential, grid, m, &radii)?;
    Ok(ZeroEnergyReport {
        overlap: o,
        holds: o.abs() < tol,
        decay_exponent: u.gamma,
    })
}

/// Twenty log-spaced radii over `[5R, 50R]`.
pub fn far_radii(radius: f64) -> Vec<f64> {
    (0..20)
        .map(|i| 5.0 * radius * 10f64.powf(i as f64 / 19.0))
        .collect()
}

/// Far-field values of `u = 𝒪⁻¹|V|^{1/2}φ` at `E = 0` and the fitted decay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub radii: Vec<f64>,
    pub u: Vec<f64>,
    /// `γ` in `u ~ r^{−γ}`.
    pub gamma: f64,
    /// `(m/2π) ∫|V|^{1/2}φ`, the `1/r` coefficient.
    pub prefactor: f64,
    /// `∫|V| u` from `|V|u = μ₀|V|^{1/2}φ`.
    pub v_u_integral: f64,
}

/// `u(r)` for `r ≥ R`, splitting the `E = 0` kernel into `m/2π|x−y|` (whose
/// angular average is `2m/r` outside the source) and a short-range rest.
pub fn u_reconstruct(
    res: &SpectralResult,
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
    r_far: &[f64],
) -> Result<DecayReport> {
    let rr = potential.support_radius;
    if let Some(&bad) = r_far.iter().find(|&&r| !(r > rr)) {
        return Err(domain(
            "u_reconstruct",
            format!("radius {bad} is not outside the support {rr}"),
        ));
    }
    // 4π wⱼ ρⱼ² fⱼ
    let src: Vec<(f64, f64)> = grid
        .nodes
        .iter()
        .zip(&grid.weights)
        .zip(&res.psi)
        .map(|((&rho, &w), &p)| {
            let f = potential.sqrt_abs(rho) * p / ((4.0 * PI * w).sqrt() * rho);
            (rho, 4.0 * PI * w * rho * rho * f)
        })
        .collect();
    let q: f64 = src.iter().map(|s| s.1).sum();
    let u: Vec<f64> = r_far
        .iter()
        .map(|&r| {
            let short: f64 = src
                .iter()
                .map(|&(rho, c)| {
                    c / (2.0 * r * rho)
                        * (short_range_antiderivative(r + rho, m)
                            - short_range_antiderivative(r - rho, m))
                })
                .sum();
            m / (2.0 * PI * r) * q + short
        })
        .collect();
    let gamma = -loglog_slope(r_far, &u);
    Ok(DecayReport {
        radii: r_far.to_vec(),
        u,
        gamma,
        prefactor: m / (2.0 * PI) * q,
        v_u_integral: res.mu0 * q,
    })
}

/// `A₁ = ∫|y|⁻¹|V|u` and `A₂ = ∫|y|⁻¹|V|u ∫_{m|y|}^∞ K₁(z)/z dz`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmallXConstants {
    pub a1: f64,
    pub a2: f64,
    pub a1_finite: bool,
    pub a2_finite: bool,
}

pub fn small_x_constants(
    res: &SpectralResult,
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
) -> SmallXConstants {
    let mut a1 = 0.0;
    let mut a2 = 0.0;
    for ((&r, &w), &p) in grid.nodes.iter().zip(&grid.weights).zip(&res.psi) {
        // |V|u = μ₀|V|^{1/2}φ, so 4π w r² r⁻¹ |V|u = μ₀ √(4πw) |V|^{1/2} ψ
        let term = res.mu0 * (4.0 * PI * w).sqrt() * potential.sqrt_abs(r) * p;
        a1 += term;
        a2 += term * tail_k1_over_z(m * r);
    }
    SmallXConstants {
        a1,
        a2,
        a1_finite: a1.is_finite(),
        a2_finite: a2.is_finite(),
    }
}

/// A unit vector orthogonal to the overlap vector: the second eigenvector
/// with `v` projected out. Standing in for an eigenfunction with `a = 0`,
/// since a positive ground state always has a positive overlap.
pub fn synthetic_zero_overlap(
    res: &SpectralResult,
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
) -> Result<SpectralResult> {
    if res.eigenvalues.len() < 2 {
        return Err(Error::Invalid("need at least two eigenvectors".into()));
    }
    let v = overlap_vector(potential, grid);
    let vv = v.dot(&v);
    if !(vv > 0.0) {
        return Err(Error::Invalid("potential vanishes on the grid".into()));
    }
    let mut psi: DVector<f64> = res.eigenvectors.column(1).into_owned();
    psi -= &v * (v.dot(&psi) / vv);
    psi /= psi.norm();
    // a second pass removes what the first left at rounding level
    psi -= &v * (v.dot(&psi) / vv);
    psi /= psi.norm();
    let mu = rayleigh_quotient(psi.as_slice(), potential, grid, m, 0.0)?;
    let phi = psi
        .iter()
        .zip(grid.nodes.iter().zip(&grid.weights))
        .map(|(q, (r, w))| q / ((4.0 * PI * w).sqrt() * r))
        .collect();
    let n = psi.len();
    let mut vectors = DMatrix::<f64>::zeros(n, 1);
    vectors.set_column(0, &psi);
    Ok(SpectralResult {
        mu0: mu,
        lambda0: 1.0 / mu,
        phi,
        psi: psi.iter().copied().collect(),
        gap: f64::NAN,
        residual: f64::NAN,
        eigenvalues: vec![mu],
        eigenvectors: vectors,
    })
}

/// `ψᵀK(α)ψ` for a unit vector `ψ`: the continuation of a trial vector
/// that is not an eigenvector.
pub fn rayleigh_quotient(
    psi: &[f64],
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
    alpha: f64,
) -> Result<f64> {
    let mat = s_wave_reduce(potential, &PhysParams::from_alpha(m, alpha)?, grid)?;
    let v = DVector::from_column_slice(psi);
    Ok(v.dot(&(&mat.entries * &v)))
}

/// Taylor coefficients at `α = 0` of the interpolating polynomial through
/// continuation data, lowest order first.
pub fn continuation_taylor(data: &[(f64, f64)]) -> Result<Vec<f64>> {
    let n = data.len();
    if n < 3 {
        return Err(Error::Invalid(
            "need at least three continuation points".into(),
        ));
    }
    let h = data.iter().map(|d| d.0.abs()).fold(0.0f64, f64::max);
    let a = DMatrix::from_fn(n, n, |i, j| (data[i].0 / h).powi(j as i32));
    let y = DVector::from_iterator(n, data.iter().map(|d| d.1));
    let c = a
        .lu()
        .solve(&y)
        .ok_or_else(|| Error::Invalid("continuation abscissae are not distinct".into()))?;
    Ok(c.iter()
        .enumerate()
        .map(|(k, v)| v / h.powi(k as i32))
        .collect())
}

/// First and half the second derivative at `α = 0`.
pub fn continuation_derivatives(data: &[(f64, f64)]) -> Result<(f64, f64)> {
    let c = continuation_taylor(data)?;
    Ok((c[1], c[2]))
}

/// Samples `(α, μ(α))` with the first and second derivatives at zero.
pub type Continuation = (Vec<(f64, f64)>, f64, f64);

/// Continuation of `μ(α)` on `α = 0, h, …, 5h` and its derivatives at zero.
pub fn continuation_check(
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
    h: f64,
) -> Result<Continuation> {
    let alphas: Vec<f64> = (0..6).map(|k| k as f64 * h).collect();
    let data = eigen_continuation(potential, grid, m, &alphas)?;
    let (d1, d2) = continuation_derivatives(&data)?;
    Ok((data, d1, d2))
}

/// Two concentric wells, `−d₁` inside and `−d₂` on a shell, as a tabulated
/// profile on `(0, R)`.
pub fn two_well_potential(inner: f64, outer: f64, radius: f64) -> Result<RadialPotential> {
    let bump = |x: f64, c: f64, w: f64| {
        let t = (x - c) / w;
        if t.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - t * t)).exp()
        }
    };
    let n = 801;
    let r: Vec<f64> = (0..n).map(|i| radius * i as f64 / (n - 1) as f64).collect();
    let v: Vec<f64> = r
        .iter()
        .map(|&x| {
            let s = x / radius;
            -(inner * bump(s, 0.0, 0.35) + outer * bump(s, 0.7, 0.25))
        })
        .collect();
    Ok(RadialPotential::tabulated(Table::new(r, v)?))
}

/// Ground-state overlap `∫|V|^{1/2}φ` over a range of shell depths.
pub fn two_well_scan(
    outer_depths: &[f64],
    radius: f64,
    n: usize,
    m: f64,
) -> Result<Vec<(f64, f64)>> {
    let grid = QuadGrid::gauss_legendre(n, radius)?;
    let p = PhysParams::from_alpha(m, 0.0)?;
    outer_depths
        .iter()
        .map(|&d| {
            let v = two_well_potential(1.0, d, radius)?;
            let res = leading_eigenpair(&s_wave_reduce(&v, &p, &grid)?)?;
            Ok((d, overlap(&res.psi, &v, &grid)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_arithmetic() {
        let e = ThresholdExpansion::new(1.0, -1.0, -1.0).unwrap();
        let l = lambda_of_alpha(&e, 0.1).unwrap();
        assert!((l - 1.0 / 0.89).abs() < 1e-14);
        assert_eq!(lambda_of_alpha(&e, 0.0).unwrap(), 1.0);
        assert_eq!(energy_of_lambda(&e, 1.0).unwrap(), 0.0);
        assert!(matches!(
            energy_of_lambda(&e, 0.9),
            Err(Error::BelowThreshold { .. })
        ));
    }

    #[test]
    fn energy_round_trips_through_series() {
        let e = ThresholdExpansion::new(0.8, -0.3, -0.5).unwrap();
        for &alpha in &[1e-3, 1e-2] {
            let l = lambda_of_alpha(&e, alpha).unwrap();
            let en = energy_of_lambda(&e, l).unwrap();
            assert!(
                (en / (-alpha * alpha) - 1.0).abs() < 50.0 * alpha * alpha,
                "{alpha}: {en}"
            );
        }
        let z = ThresholdExpansion::new(0.8, 0.0, -0.5).unwrap();
        assert_eq!(z.branch, Branch::AZero);
        let l = lambda_of_alpha(&z, 1e-3).unwrap();
        let en = energy_of_lambda(&z, l).unwrap();
        assert!((en / -1e-6 - 1.0).abs() < 1e-2);
        let bad = ThresholdExpansion::new(0.8, 0.0, 0.5).unwrap();
        assert!(energy_of_lambda(&bad, 1.3).is_err());
    }

    #[test]
    fn polynomial_derivatives() {
        let data: Vec<(f64, f64)> = (0..6)
            .map(|k| {
                let x = 0.01 * k as f64;
                (x, 2.0 - 0.5 * x + 3.0 * x * x + x.powi(5))
            })
            .collect();
        let (d1, d2) = continuation_derivatives(&data).unwrap();
        assert!((d1 + 0.5).abs() < 1e-9 && (d2 - 3.0).abs() < 1e-6);
    }

    #[test]
    fn sinc_branches_meet() {
        let x = 0.1f64 * (1.0 - 1e-12);
        let direct = x.sin() / x - 1.0;
        assert!((sinc_minus_one(x) / direct - 1.0).abs() < 1e-12);
    }
}
