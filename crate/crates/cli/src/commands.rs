//! One function per subcommand; each returns a [`Report`].

use herbst_core::kernel::{envelope_bound, green_function, h3_residual, h3_root, H3_ROOT};
use herbst_core::spectral::{leading_eigenpair, s_wave_reduce};
use herbst_core::threshold::{
    analyze, b_expectation_direct, continuation_check, continuation_taylor, energy_bruteforce,
    energy_of_lambda, overlap, rayleigh_quotient, synthetic_zero_overlap,
};
use herbst_core::verify::{run_suite, VerifyOptions};
use herbst_core::{Branch, PhysParams, QuadGrid, RadialPotential, Suite, ThresholdExpansion};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Cell, Report};

/// `n` log-spaced points on `[lo, hi]`.
fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn kernel_params(m: f64, energy: Option<f64>, mu: Option<f64>) -> Result<PhysParams, CliError> {
    Ok(match (energy, mu) {
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "give either --energy or --mu, not both".into(),
            ))
        }
        (_, Some(mu)) => PhysParams::from_mu(m, mu)?,
        (e, None) => PhysParams::from_energy(m, e.unwrap_or(0.0))?,
    })
}

/// `G_E(r)` and the envelope on 100 radii in `[0.01, 20]/m`.
pub fn kernel(cfg: &RunConfig, energy: Option<f64>, mu: Option<f64>) -> Result<Report, CliError> {
    let p = kernel_params(cfg.mass, energy, mu)?;
    let mut rep = Report::new("kernel", &["r", "green_function", "envelope_bound"]);
    rep.scalar("m", p.m);
    rep.scalar("energy", p.energy);
    rep.scalar("mu", p.mu);
    rep.scalar("envelope_constant", H3_ROOT);
    // the envelope carries 2/μ and is infinite at threshold
    rep.scalar("bound_degenerate", p.mu == 0.0);
    let mut all = true;
    for r in logspace(0.01 / p.m, 20.0 / p.m, 100) {
        let g = green_function(r, &p)?;
        let b = if p.mu == 0.0 {
            f64::INFINITY
        } else {
            envelope_bound(r, &p, H3_ROOT)?
        };
        if !g.is_finite() || b.is_nan() {
            return Err(CliError::Numerical(format!(
                "non-finite kernel value at r = {r}"
            )));
        }
        all &= g.abs() <= b;
        rep.row(vec![r.into(), g.into(), b.into()]);
    }
    rep.scalar("all_within_bound", all);
    Ok(rep)
}

fn grid(v: &RadialPotential, n: usize) -> Result<QuadGrid, CliError> {
    Ok(QuadGrid::gauss_legendre(n, v.support_radius)?)
}

fn vanishes(v: &RadialPotential, g: &QuadGrid) -> bool {
    g.nodes.iter().all(|&r| v.sqrt_abs(r) == 0.0)
}

/// Leading eigenpair at `E = 0` with an `n` versus `2n` certificate.
pub fn spectrum(cfg: &RunConfig) -> Result<Report, CliError> {
    let v = cfg.build_potential()?;
    let g = grid(&v, cfg.grid_n)?;
    let mut rep = Report::new("spectrum", &["r", "phi"]);
    if vanishes(&v, &g) {
        rep.scalar("mu0", 0.0);
        rep.scalar("lambda0", "undefined");
        rep.scalar("threshold_defined", false);
        for &r in &g.nodes {
            rep.row(vec![r.into(), 0.0.into()]);
        }
        return Ok(rep);
    }
    let p = PhysParams::from_alpha(cfg.mass, 0.0)?;
    let res = leading_eigenpair(&s_wave_reduce(&v, &p, &g)?)?;
    let g2 = grid(&v, 2 * cfg.grid_n)?;
    let res2 = leading_eigenpair(&s_wave_reduce(&v, &p, &g2)?)?;
    rep.scalar("mu0", res.mu0);
    rep.scalar("lambda0", res.lambda0);
    rep.scalar("threshold_defined", true);
    rep.scalar("gap", res.gap);
    rep.scalar("residual", res.residual);
    rep.scalar("grid_n", g.size());
    rep.scalar("mu0_2n", res2.mu0);
    rep.scalar("certificate_delta", (res.mu0 - res2.mu0).abs());
    for (&r, &f) in g.nodes.iter().zip(&res.phi) {
        rep.row(vec![r.into(), f.into()]);
    }
    Ok(rep)
}

/// Threshold expansion and `E(λ)` on `λ ∈ λ₀·(1, 1.2]`.
///
/// With `a_zero` the expansion is built on a vector orthogonal to the
/// overlap vector instead of the ground state; `c` then comes from the
/// Rayleigh quotient along `α`.
pub fn threshold(cfg: &RunConfig, a_zero: bool, brute_force: bool) -> Result<Report, CliError> {
    let v = cfg.build_potential()?;
    let g = grid(&v, cfg.grid_n)?;
    if vanishes(&v, &g) {
        return Err(CliError::Validation(
            "the potential vanishes: there is no threshold".into(),
        ));
    }
    let m = cfg.mass;
    let h = cfg.alpha_max / 5.0;
    let mut rep = Report::new("threshold", &["lambda", "energy", "alpha"]);
    let exp = if a_zero {
        if brute_force {
            return Err(CliError::Validation(
                "--brute-force needs the ground state, not --a-zero".into(),
            ));
        }
        let p = PhysParams::from_alpha(m, 0.0)?;
        let res = leading_eigenpair(&s_wave_reduce(&v, &p, &g)?)?;
        let syn = synthetic_zero_overlap(&res, &v, &g, m)?;
        let b = b_expectation_direct(&syn.psi, &v, &g, m)?;
        if !(b < 0.0) {
            return Err(CliError::Numerical(format!(
                "the a = 0 branch needs b < 0, got b = {b}"
            )));
        }
        let data: Vec<(f64, f64)> = (0..6)
            .map(|k| {
                let alpha = k as f64 * h;
                Ok((alpha, rayleigh_quotient(&syn.psi, &v, &g, m, alpha)?))
            })
            .collect::<Result<_, CliError>>()?;
        let taylor = continuation_taylor(&data)?;
        rep.scalar("overlap", overlap(&syn.psi, &v, &g));
        rep.scalar("synthetic", true);
        let mut e = ThresholdExpansion::with_tol(syn.mu0, 0.0, b, cfg.tol * syn.mu0)?;
        e.c = Some(taylor[3]);
        e
    } else {
        let (res, mut e, bc) = analyze(&v, &g, m)?;
        let (data, _, _) = continuation_check(&v, &g, m, h)?;
        let a_tol = cfg.tol * res.mu0;
        e = ThresholdExpansion::with_tol(e.mu0, e.a, e.b, a_tol)?;
        e.c = Some(continuation_taylor(&data)?[3]);
        rep.scalar("overlap", overlap(&res.psi, &v, &g));
        rep.scalar("synthetic", false);
        rep.scalar("b_expectation", bc.expectation_direct);
        rep.scalar("b_correction", bc.correction);
        if e.branch == Branch::AZero && !(e.b < 0.0) {
            return Err(CliError::Numerical(format!(
                "the a = 0 branch needs b < 0, got b = {}",
                e.b
            )));
        }
        e
    };
    rep.scalar("mu0", exp.mu0);
    rep.scalar("lambda0", exp.lambda0);
    rep.scalar("a", exp.a);
    rep.scalar("b", exp.b);
    rep.scalar("c", exp.c.unwrap_or(f64::NAN));
    rep.scalar("c_source", "fitted from continuation");
    rep.scalar(
        "branch",
        match exp.branch {
            Branch::ANonzero => "a_nonzero",
            Branch::AZero => "a_zero",
        },
    );
    if brute_force {
        rep.columns.push("energy_bruteforce".into());
    }
    for i in 1..=20 {
        let lambda = exp.lambda0 * (1.0 + 0.01 * i as f64);
        let e = energy_of_lambda(&exp, lambda)?;
        let mut row: Vec<Cell> = vec![lambda.into(), e.into(), (-e).sqrt().into()];
        if brute_force {
            row.push(energy_bruteforce(&v, &g, m, &exp, lambda)?.into());
        }
        rep.row(row);
    }
    Ok(rep)
}

/// Runs one suite or all of them; the flag is the overall verdict.
pub fn verify(cfg: &RunConfig, suite: Option<&str>) -> Result<(Report, bool), CliError> {
    let suites: Vec<Suite> = match suite {
        None | Some("all") => Suite::ALL.to_vec(),
        Some(s) => vec![s.parse()?],
    };
    let opts = VerifyOptions {
        potential: cfg.build_potential()?,
        m: cfg.mass,
        n: cfg.grid_n,
    };
    let mut rep = Report::new(
        "verify",
        &[
            "suite",
            "check",
            "value",
            "reference",
            "residual",
            "tolerance",
            "passed",
            "informational",
            "note",
        ],
    );
    let mut ok = true;
    for s in suites {
        let r = run_suite(s, &opts)?;
        eprintln!(
            "{}: {} ({:.2} s)",
            s,
            if r.passed { "pass" } else { "FAIL" },
            r.seconds
        );
        ok &= r.passed;
        for c in r.checks {
            rep.row(vec![
                s.name().into(),
                c.name.into(),
                c.value.into(),
                c.reference.into(),
                c.residual.into(),
                c.tolerance.into(),
                c.passed.into(),
                c.informational.into(),
                c.note.into(),
            ]);
        }
    }
    rep.scalar("passed", ok);
    Ok((rep, ok))
}

/// Envelope check over `μ` and `r`, plus the root of the defining equation.
pub fn bound(cfg: &RunConfig, mu: Option<f64>) -> Result<(Report, bool), CliError> {
    let m = cfg.mass;
    let mus = match mu {
        Some(x) => vec![x],
        None => vec![0.2 * m, 0.5 * m, 0.8 * m],
    };
    let mut rep = Report::new(
        "bound",
        &["mu", "r", "green_function", "envelope_bound", "ratio"],
    );
    let z = h3_root();
    rep.scalar("root", z);
    rep.scalar("root_residual", h3_residual(z));
    let mut worst = 0.0f64;
    for mu in mus {
        let p = PhysParams::from_mu(m, mu)?;
        for r in logspace(0.01 / m, 20.0 / m, 40) {
            let g = green_function(r, &p)?;
            let b = envelope_bound(r, &p, H3_ROOT)?;
            worst = worst.max(g.abs() / b);
            rep.row(vec![
                mu.into(),
                r.into(),
                g.into(),
                b.into(),
                (g.abs() / b).into(),
            ]);
        }
    }
    let ok = worst <= 1.0;
    rep.scalar("max_ratio", worst);
    rep.scalar("holds", ok);
    Ok((rep, ok))
}
