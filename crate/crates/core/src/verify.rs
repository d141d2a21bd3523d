//! Verification suites: every closed form against an independent oracle.
//!
//! Each check records the value, the reference, the residual and the
//! tolerance it was held to, so a report is useful even when it passes.
//! Checks marked `informational` document a known discrepancy and do not
//! affect the suite verdict.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourierb::{
    b_hat, b_hat_terms, hankel_incomplete, hankel_tail, special_incomplete_1_0, special_tail_0_1,
    special_tail_0_1_quoted, HankelParams,
};
use crate::kernel::{
    b_profile, f_profile_plus_variant, green_function, h3_residual, h3_root, l0_profile,
    series_remainder, series_remainder_with, within_envelope, PhysParams, H3_ROOT,
};
use crate::oracle::{b_hat_oracle, green_oracle, hankel_incomplete_oracle, hankel_tail_oracle};
use crate::quad::{integrate, integrate_to_infinity};
use crate::specfun::{f1_moment, k0, k0e, k1, Tolerance};
use crate::spectral::{leading_eigenpair, s_wave_reduce, QuadGrid, RadialPotential};
use crate::threshold::{
    b_expectation_direct, b_expectation_momentum, coefficient_a, coefficient_b, continuation_check,
    loglog_slope, synthetic_zero_overlap, MomentumMode, A_ZERO_REL_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Specfun,
    AppendixA,
    AppendixB,
    AppendixC,
    Series,
    Continuation,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Specfun,
        Suite::AppendixA,
        Suite::AppendixB,
        Suite::AppendixC,
        Suite::Series,
        Suite::Continuation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::AppendixA => "appendix_a",
            Suite::AppendixB => "appendix_b",
            Suite::AppendixC => "appendix_c",
            Suite::Series => "series",
            Suite::Continuation => "continuation",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

/// One comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Documents a discrepancy; does not count toward the verdict.
    pub informational: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Check {
    /// Passes when `residual ≤ tolerance`.
    fn new(
        name: impl Into<String>,
        value: f64,
        reference: f64,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            name: name.into(),
            value,
            reference,
            residual,
            tolerance,
            passed: residual <= tolerance,
            informational: false,
            note: String::new(),
        }
    }

    fn rel(name: impl Into<String>, value: f64, reference: f64, tolerance: f64) -> Self {
        Self::new(name, value, reference, rel_err(value, reference), tolerance)
    }

    fn abs(name: impl Into<String>, value: f64, reference: f64, tolerance: f64) -> Self {
        Self::new(name, value, reference, (value - reference).abs(), tolerance)
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a / b - 1.0).abs()
    }
}

/// Worst relative error over a set of `(value, reference)` pairs; NaN if
/// any value is not finite.
fn worst(pairs: &[(f64, f64)]) -> (f64, f64, f64) {
    let mut out = (0.0, 0.0, 0.0);
    for &(v, r) in pairs {
        let e = rel_err(v, r);
        if !(e <= out.2) {
            out = (v, r, e);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

/// Inputs for the suites that need a potential.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub potential: RadialPotential,
    pub m: f64,
    pub n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            potential: RadialPotential::bump(1.0, 1.0).expect("valid default potential"),
            m: 1.0,
            n: 200,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let checks = match suite {
        Suite::Specfun => specfun_checks()?,
        Suite::AppendixA => appendix_a_checks()?,
        Suite::AppendixB => appendix_b_checks()?,
        Suite::AppendixC => appendix_c_checks()?,
        Suite::Series => series_checks()?,
        Suite::Continuation => continuation_checks(opts)?,
    };
    let passed = checks.iter().filter(|c| !c.informational).all(|c| c.passed);
    Ok(SuiteReport {
        suite,
        passed,
        checks,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn oracle_tol() -> Tolerance {
    Tolerance {
        abs_tol: 1e-300,
        rel_tol: 1e-12,
        max_subdivisions: 400,
    }
}

/// `K₀` and `K₁` from `∫₀^∞ e^{−x cosh t} cosh(νt) dt`.
fn bessel_integral(nu: f64, x: f64) -> Result<f64> {
    let f = |t: f64| {
        let e = x * t.cosh();
        if e > 745.0 {
            0.0
        } else {
            (-e).exp() * (nu * t).cosh()
        }
    };
    Ok(integrate_to_infinity(&f, 0.0, &oracle_tol())?.value)
}

/// Points `w ∈ [0.1, 10]`, log-spaced.
pub fn w_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.1 * 100f64.powf(i as f64 / (n - 1) as f64))
        .collect()
}

/// Moment identities and Bessel values against quadrature.
pub fn specfun_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let m0 = integrate_to_infinity(
        &|z: f64| {
            if z > 0.0 && z < 700.0 {
                k0e(z) * (-z).exp()
            } else {
                0.0
            }
        },
        0.0,
        &oracle_tol(),
    )?
    .value;
    out.push(Check::rel("k0_full_moment_is_half_pi", m0, FRAC_PI_2, 1e-8));
    let mut pairs = Vec::new();
    for i in 0..20 {
        let mu = 0.05 * i as f64;
        let f = move |z: f64| {
            if z <= 0.0 || !z.is_finite() {
                return 0.0;
            }
            0.5 * ((mu - 1.0) * z).exp() * k0e(z) + 0.5 * (-(mu + 1.0) * z).exp() * k0e(z)
        };
        let q = integrate(&f, 0.0, 1.0, &oracle_tol())?.value
            + integrate_to_infinity(&f, 1.0, &oracle_tol())?.value;
        pairs.push((f1_moment(mu)?, q));
    }
    let (v, r, e) = worst(&pairs);
    out.push(
        Check::new("cosh_moment_vs_quadrature", v, r, e, 1e-8).note("mu in {0, 0.05, ..., 0.95}"),
    );
    let mut pk = Vec::new();
    for &x in &[0.05, 0.5, 1.0, 2.0, 3.0, 8.0, 20.0] {
        pk.push((k0(x), bessel_integral(0.0, x)?));
        pk.push((k1(x), bessel_integral(1.0, x)?));
    }
    let (v, r, e) = worst(&pk);
    out.push(Check::new(
        "bessel_k_vs_integral_representation",
        v,
        r,
        e,
        1e-11,
    ));
    Ok(out)
}

/// Radii for the Green's function comparison.
pub fn green_radii(m: f64) -> Vec<f64> {
    (0..30)
        .map(|i| 0.05 * 200f64.powf(i as f64 / 29.0) / m)
        .collect()
}

/// Green's function against the transform oracle, and the sign of the
/// tail term.
pub fn appendix_a_checks() -> Result<Vec<Check>> {
    let m = 1.0;
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    let mut l0 = Vec::new();
    for &mu in &[0.0, 0.3, 0.8] {
        let p = PhysParams::from_mu(m, mu)?;
        for &r in &green_radii(m) {
            let oracle = green_oracle(r, &p)?;
            minus.push((green_function(r, &p)?, oracle));
            // the same Green's function built from the other sign
            let f = f_profile_plus_variant(r, &p)?;
            let c = p.yukawa_weight();
            let g = m / (4.0 * PI * r) * (c * (-mu * r).exp() + f / FRAC_PI_2);
            plus.push((g, oracle));
            if mu == 0.0 {
                l0.push((l0_profile(r, m)?, oracle));
            }
        }
    }
    let (v, r, e) = worst(&minus);
    let mut out = vec![
        Check::new("green_function_vs_transform_oracle", v, r, e, 1e-6)
            .note("30 radii in [0.05, 10]/m, mu in {0, 0.3, 0.8}"),
    ];
    let (v, r, e) = worst(&plus);
    let mut c = Check::new("plus_sign_variant_rejected", v, r, e, 1e-6);
    // this check passes when the variant fails
    c.passed = e > 1e-6;
    out.push(c.note("the plus-sign tail term must disagree with the oracle"));
    let (v, r, e) = worst(&l0);
    out.push(Check::new("zeroth_order_kernel_vs_oracle", v, r, e, 1e-6));
    Ok(out)
}

/// σ points for the transform comparison.
pub const SIGMA_POINTS: [f64; 7] = [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0];

/// Hankel-transform closed forms and the assembled transform.
pub fn appendix_b_checks() -> Result<Vec<Check>> {
    let m = 1.0;
    let ws = w_grid(15);
    let mut out = Vec::new();

    let hp10 = HankelParams::new(1, 0, m)?;
    let hp01 = HankelParams::new(0, 1, m)?;
    let mut s10 = Vec::new();
    let mut s01 = Vec::new();
    let mut quoted = Vec::new();
    for &w in &ws {
        let k = w * m / (2.0 * PI);
        s10.push((
            special_incomplete_1_0(k, m)?,
            hankel_incomplete_oracle(&hp10, k)?,
        ));
        let o = hankel_tail_oracle(&hp01, k)?;
        s01.push((special_tail_0_1(k, m)?, o));
        quoted.push((special_tail_0_1_quoted(k, m)?, o));
    }
    let (v, r, e) = worst(&s10);
    out.push(Check::new("special_case_1_0_vs_oracle", v, r, e, 1e-5).note("w in [0.1, 10]"));
    let (v, r, e) = worst(&s01);
    out.push(Check::new("special_case_0_1_vs_oracle", v, r, e, 1e-5).note("w in [0.1, 10]"));
    let ratio = quoted[0].0 / quoted[0].1;
    let (v, r, e) = worst(&quoted);
    out.push(
        Check::new("special_case_0_1_quoted_form_vs_oracle", v, r, e, 1e-5)
            .note(format!(
                "quoted form carries an extra factor {ratio:.7} = 2^(3/2)"
            ))
            .informational(),
    );

    for alpha in [-1, 0, 1] {
        for beta in 0..3 {
            let hp = HankelParams::new(alpha, beta, m)?;
            let mut t = Vec::new();
            let mut inc = Vec::new();
            for &w in &[0.3, 1.0, 3.0] {
                let k = w * m / (2.0 * PI);
                t.push((hankel_tail(&hp, k)?, hankel_tail_oracle(&hp, k)?));
                inc.push((
                    hankel_incomplete(&hp, k)?,
                    hankel_incomplete_oracle(&hp, k)?,
                ));
            }
            let (v, r, e) = worst(&t);
            out.push(Check::new(
                format!("hankel_tail_{alpha}_{beta}_vs_oracle"),
                v,
                r,
                e,
                1e-5,
            ));
            let (v, r, e) = worst(&inc);
            out.push(Check::new(
                format!("hankel_incomplete_{alpha}_{beta}_vs_oracle"),
                v,
                r,
                e,
                1e-5,
            ));
        }
    }

    let mut bh = Vec::new();
    for &s in &SIGMA_POINTS {
        bh.push((b_hat(s)?, b_hat_oracle(s)?));
    }
    let (v, r, e) = worst(&bh);
    out.push(
        Check::new("b_hat_vs_transform_of_profile", v, r, e, 1e-5)
            .note("7 sigma points in [0.05, 5]"),
    );

    let mut max_b = f64::NEG_INFINITY;
    let mut max_ratio = 0.0f64;
    for i in 0..1000 {
        let s = 10f64.powf(-3.0 + 6.0 * i as f64 / 999.0);
        max_b = max_b.max(b_hat(s)?);
        let (p, n) = b_hat_terms(s)?;
        max_ratio = max_ratio.max(p / n.abs());
    }
    out.push(
        Check::new(
            "b_hat_negative_on_log_grid",
            max_b,
            0.0,
            max_b.max(0.0),
            0.0,
        )
        .note("largest value over 1000 sigma in [1e-3, 1e3]; must be < 0"),
    );
    out.last_mut().expect("just pushed").passed = max_b < 0.0;
    out.push(
        Check::new(
            "positive_term_dominated",
            max_ratio,
            1.0,
            max_ratio,
            1.0 - 1e-12,
        )
        .note("largest |positive term| / |negative terms| on the grid"),
    );
    for &s in &[1e-2, 1e-3] {
        let asym = -1.0 / (PI * s * s) - 1.0 / (2.0 * PI.powi(3) * s.powi(4));
        let resid = (b_hat(s)? - asym).abs() * s * s;
        out.push(
            Check::new(
                format!("small_sigma_asymptote_{s:e}"),
                b_hat(s)?,
                asym,
                resid,
                10.0 * s,
            )
            .note("residual is sigma^2 |b_hat - asymptote|, must vanish with sigma"),
        );
    }
    Ok(out)
}

/// The transcendental root and the envelope bound.
pub fn appendix_c_checks() -> Result<Vec<Check>> {
    let z = h3_root();
    let mut out = vec![
        Check::abs("h3_root", z, H3_ROOT, 1e-6),
        Check::abs("h3_residual_at_root", h3_residual(z), 0.0, 1e-14),
    ];
    let mut worst_ratio = 0.0f64;
    let mut ok = true;
    for &mu in &[0.05, 0.3, 0.8] {
        let p = PhysParams::from_mu(1.0, mu)?;
        for i in 0..40 {
            let r = 0.01 * 2000f64.powf(i as f64 / 39.0);
            ok &= within_envelope(r, &p, H3_ROOT)?;
            let g = green_function(r, &p)?.abs();
            let b = crate::kernel::envelope_bound(r, &p, H3_ROOT)?;
            worst_ratio = worst_ratio.max(g / b);
        }
    }
    let mut c = Check::new("green_within_envelope", worst_ratio, 1.0, worst_ratio, 1.0);
    c.passed = ok;
    out.push(c.note("largest |G|/bound over r in [0.01, 20], mu in {0.05, 0.3, 0.8}"));
    Ok(out)
}

pub const SERIES_ALPHAS: [f64; 6] = [0.005, 0.0075, 0.01, 0.015, 0.02, 0.04];

/// Fitted exponent of the remainder at each of 10 radii in `[0.2, 5]/m`.
pub fn remainder_exponents(second: &dyn Fn(f64, f64) -> Result<f64>, m: f64) -> Result<Vec<f64>> {
    let radii: Vec<f64> = (0..10)
        .map(|i| 0.2 * 25f64.powf(i as f64 / 9.0) / m)
        .collect();
    radii
        .iter()
        .map(|&r| {
            let rem: Vec<f64> = SERIES_ALPHAS
                .iter()
                .map(|&a| series_remainder_with(r, a, m, second))
                .collect::<Result<_>>()?;
            Ok(loglog_slope(&SERIES_ALPHAS, &rem))
        })
        .collect()
}

fn exponent_check(name: &str, ex: &[f64]) -> Check {
    let lo = ex.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ex.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let far = if (lo - 3.0).abs() > (hi - 3.0).abs() {
        lo
    } else {
        hi
    };
    Check::new(name, far, 3.0, (far - 3.0).abs(), 0.3).note(format!(
        "fitted exponents over alpha in [0.005, 0.04] at 10 radii range over [{lo:.4}, {hi:.4}]"
    ))
}

/// Order of the small-α remainder.
pub fn series_checks() -> Result<Vec<Check>> {
    let mut out = vec![Check::abs(
        "remainder_at_alpha_zero",
        series_remainder(1.0, 0.0, 1.0)?,
        0.0,
        1e-9,
    )];
    out.push(exponent_check(
        "remainder_exponent",
        &remainder_exponents(&crate::kernel::b_kernel, 1.0)?,
    ));
    out.push(exponent_check(
        "remainder_exponent_mass_1.7",
        &remainder_exponents(&crate::kernel::b_kernel, 1.7)?,
    ));
    let ex = remainder_exponents(&b_profile, 1.0)?;
    let mean = ex.iter().sum::<f64>() / ex.len() as f64;
    out.push(
        Check::new(
            "remainder_exponent_unnormalized_profile",
            mean,
            3.0,
            (mean - 3.0).abs(),
            0.3,
        )
        .note("second-order profile without the m/4pi factor")
        .informational(),
    );
    Ok(out)
}

/// Threshold coefficients against brute-force continuation.
pub fn continuation_checks(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let VerifyOptions { potential, m, n } = opts;
    let (m, n) = (*m, *n);
    let grid = QuadGrid::gauss_legendre(n, potential.support_radius)?;
    let p = PhysParams::from_alpha(m, 0.0)?;
    let res = leading_eigenpair(&s_wave_reduce(potential, &p, &grid)?)?;
    let a = coefficient_a(&res, potential, &grid, m);
    let bc = coefficient_b(&res, potential, &grid, m, Some(MomentumMode::FinitePart))?;
    let (_, d1, d2) = continuation_check(potential, &grid, m, 0.01)?;
    let mut out = vec![
        Check::rel("a_vs_continuation_slope", a, d1, 1e-3),
        Check::rel("b_vs_continuation_curvature", bc.b, d2, 1e-2),
        Check::rel(
            "b_expectation_dual_route",
            bc.expectation_momentum.unwrap_or(f64::NAN),
            bc.expectation_direct,
            1e-3,
        )
        .note("momentum route with the finite-part reading of the k^-4 term"),
        Check::rel(
            "b_expectation_only_vs_curvature",
            bc.expectation_direct,
            d2,
            1e-2,
        )
        .note("b without the rank-one correction")
        .informational(),
    ];
    let syn = synthetic_zero_overlap(&res, potential, &grid, m)?;
    let bs = b_expectation_direct(&syn.psi, potential, &grid, m)?;
    let bm = b_expectation_momentum(
        &syn.psi,
        potential,
        &grid,
        m,
        MomentumMode::Strict,
        A_ZERO_REL_TOL * res.mu0,
    )?;
    out.push(Check::rel("b_dual_route_zero_overlap", bm, bs, 1e-3));
    let mut c = Check::new("b_negative_zero_overlap", bs, 0.0, bs.max(0.0), 0.0);
    c.passed = bs < 0.0;
    out.push(c);
    Ok(out)
}
