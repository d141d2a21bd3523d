//! s-wave Nyström discretization of `K = |V|^{1/2} (H₀ − E)⁻¹ |V|^{1/2}`.
//!
//! For a radial potential the angular integral of a radial kernel `G` is
//! `2π ∫₋₁¹ G(|x−y|) du = (2π/rρ) [H(r+ρ) − H(|r−ρ|)]` with `H' = tG`. In
//! terms of `χ(r) = r φ(r)` the operator becomes the one-dimensional kernel
//! `k(r,ρ) = 2π |V(r)V(ρ)|^{1/2} [H(r+ρ) − H(|r−ρ|)]` on `(0, R)`, which is
//! discretized on a Gauss–Legendre grid and symmetrized with `√(wᵢwⱼ)`.
//!
//! The Green kernel has a logarithmic singularity on the diagonal, handled by
//! subtracting `χ(rᵢ)` and integrating the kernel row exactly.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernel::{b_kernel_antiderivative, green_antiderivative, PhysParams};
use crate::quad::{gauss_legendre, integrate};
use crate::specfun::Tolerance;

/// Shapes of the provided potentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialFamily {
    Bump,
    TruncatedGaussian,
    SquareWellSmoothed,
    Tabulated,
}

impl fmt::Display for PotentialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Bump => "bump",
            Self::TruncatedGaussian => "truncated_gaussian",
            Self::SquareWellSmoothed => "square_well_smoothed",
            Self::Tabulated => "tabulated",
        };
        f.write_str(s)
    }
}

/// Natural cubic spline through `(r, V)` samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    r: Vec<f64>,
    v: Vec<f64>,
    second: Vec<f64>,
}

impl Table {
    pub fn new(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() != v.len() || r.len() < 2 {
            return Err(Error::Invalid(
                "a potential table needs at least two (r, V) rows".into(),
            ));
        }
        if r[0] < 0.0 || r.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invalid(
                "table radii must be nonnegative and strictly ascending".into(),
            ));
        }
        if let Some(bad) = v.iter().find(|&&x| !(x <= 0.0)) {
            return Err(Error::Invalid(format!(
                "potential values must be <= 0, found {bad}"
            )));
        }
        let n = r.len();
        let mut second = vec![0.0; n];
        let mut u = vec![0.0; n];
        for i in 1..n - 1 {
            let sig = (r[i] - r[i - 1]) / (r[i + 1] - r[i - 1]);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let d = (v[i + 1] - v[i]) / (r[i + 1] - r[i]) - (v[i] - v[i - 1]) / (r[i] - r[i - 1]);
            u[i] = (6.0 * d / (r[i + 1] - r[i - 1]) - sig * u[i - 1]) / p;
        }
        second[n - 1] = 0.0;
        for k in (0..n - 1).rev() {
            second[k] = second[k] * second[k + 1] + u[k];
        }
        Ok(Self { r, v, second })
    }

    /// Reads whitespace- or comma-separated `r V` rows; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let mut r = Vec::new();
        let mut v = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::Invalid(format!(
                        "{}:{}: not a number: {s}",
                        path.display(),
                        lineno + 1
                    ))
                })
            };
            if cols.len() != 2 {
                return Err(Error::Invalid(format!(
                    "{}:{}: expected two columns, found {}",
                    path.display(),
                    lineno + 1,
                    cols.len()
                )));
            }
            r.push(parse(cols[0])?);
            v.push(parse(cols[1])?);
        }
        Self::new(r, v)
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.r.len();
        if x <= self.r[0] {
            return self.v[0];
        }
        if x >= self.r[n - 1] {
            return 0.0;
        }
        let hi = self.r.partition_point(|&ri| ri < x).clamp(1, n - 1);
        let lo = hi - 1;
        let h = self.r[hi] - self.r[lo];
        let a = (self.r[hi] - x) / h;
        let b = (x - self.r[lo]) / h;
        let y = a * self.v[lo]
            + b * self.v[hi]
            + ((a * a * a - a) * self.second[lo] + (b * b * b - b) * self.second[hi]) * h * h / 6.0;
        y.min(0.0)
    }

    fn radius(&self) -> f64 {
        *self.r.last().expect("table has at least two rows")
    }
}

/// A non-positive radial potential supported in `r < R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialPotential {
    pub family: PotentialFamily,
    pub depth: f64,
    pub support_radius: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Table>,
}

/// `C^∞` step falling from 1 at `t ≤ 0` to 0 at `t ≥ 1`.
fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let a = (-1.0 / (1.0 - t)).exp();
    let b = (-1.0 / t).exp();
    a / (a + b)
}

impl RadialPotential {
    fn analytic(family: PotentialFamily, depth: f64, radius: f64) -> Result<Self> {
        if !(depth >= 0.0) || !depth.is_finite() {
            return Err(domain(
                "RadialPotential",
                format!("depth must be nonnegative, got {depth}"),
            ));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(domain(
                "RadialPotential",
                format!("radius must be positive, got {radius}"),
            ));
        }
        Ok(Self {
            family,
            depth,
            support_radius: radius,
            table: None,
        })
    }

    /// `V(r) = −d exp(1 − 1/(1 − (r/R)²))`.
    pub fn bump(depth: f64, radius: f64) -> Result<Self> {
        Self::analytic(PotentialFamily::Bump, depth, radius)
    }

    /// `−d e^{−(2r/R)²}`, cut off smoothly over `[0.8R, R]`.
    pub fn truncated_gaussian(depth: f64, radius: f64) -> Result<Self> {
        Self::analytic(PotentialFamily::TruncatedGaussian, depth, radius)
    }

    /// Flat `−d` out to `0.7R`, then a smooth ramp to zero at `R`.
    pub fn square_well_smoothed(depth: f64, radius: f64) -> Result<Self> {
        Self::analytic(PotentialFamily::SquareWellSmoothed, depth, radius)
    }

    /// Spline through tabulated values; the last radius is the support edge.
    pub fn tabulated(table: Table) -> Self {
        let radius = table.radius();
        let depth = table.v.iter().fold(0.0f64, |acc, &x| acc.max(-x));
        Self {
            family: PotentialFamily::Tabulated,
            depth,
            support_radius: radius,
            table: Some(table),
        }
    }

    /// The same shape with every value multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(domain(
                "RadialPotential::scaled",
                format!("factor must be positive, got {c}"),
            ));
        }
        let mut out = self.clone();
        out.depth *= c;
        if let Some(t) = &self.table {
            out.table = Some(Table::new(
                t.r.clone(),
                t.v.iter().map(|x| c * x).collect(),
            )?);
        }
        Ok(out)
    }

    /// `V(r)`.
    pub fn value(&self, r: f64) -> f64 {
        let rr = self.support_radius;
        if r >= rr {
            return 0.0;
        }
        let x = r / rr;
        let d = self.depth;
        match self.family {
            PotentialFamily::Bump => -d * (1.0 - 1.0 / (1.0 - x * x)).exp(),
            PotentialFamily::TruncatedGaussian => {
                -d * (-4.0 * x * x).exp() * smooth_step((x - 0.8) / 0.2)
            }
            PotentialFamily::SquareWellSmoothed => -d * smooth_step((x - 0.7) / 0.3),
            PotentialFamily::Tabulated => self.table.as_ref().map_or(0.0, |t| t.eval(r)),
        }
    }

    /// `|V(r)|^{1/2}`, flushed to zero below `1e-14 √d` so that products of
    /// kernel entries cannot underflow.
    pub fn sqrt_abs(&self, r: f64) -> f64 {
        let s = (-self.value(r)).max(0.0).sqrt();
        if s < 1e-14 * self.depth.sqrt() {
            0.0
        } else {
            s
        }
    }
}

/// Gauss–Legendre nodes and weights on `(0, R)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadGrid {
    pub fn gauss_legendre(n: usize, radius: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!(
                "grid needs at least 2 nodes, got {n}"
            )));
        }
        if !(radius > 0.0) {
            return Err(domain(
                "QuadGrid",
                format!("radius must be positive, got {radius}"),
            ));
        }
        let (nodes, weights) = gauss_legendre(n, 0.0, radius);
        Ok(Self { nodes, weights })
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// `Σ wᵢ rᵢ²`, which should be `R³/3`.
    pub fn second_moment(&self) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(r, w)| w * r * r)
            .sum()
    }
}

/// A radial pair kernel described by the antiderivative `H` of `t·G(t)`.
pub trait PairKernel {
    fn antiderivative(&self, t: f64) -> f64;
    /// Whether the radial kernel is singular on the diagonal.
    fn singular(&self) -> bool;
}

/// The Green kernel `(H₀ − E)⁻¹`.
#[derive(Debug, Clone, Copy)]
pub struct GreenKernel(pub PhysParams);

impl PairKernel for GreenKernel {
    fn antiderivative(&self, t: f64) -> f64 {
        green_antiderivative(t, &self.0)
    }
    fn singular(&self) -> bool {
        true
    }
}

/// The α² coefficient of the Green kernel at mass `m`.
#[derive(Debug, Clone, Copy)]
pub struct SecondOrderKernel {
    pub m: f64,
}

impl PairKernel for SecondOrderKernel {
    fn antiderivative(&self, t: f64) -> f64 {
        b_kernel_antiderivative(t, self.m)
    }
    fn singular(&self) -> bool {
        // only a kink, but subtraction still helps
        true
    }
}

/// A constant `G ≡ g₀`; the resulting operator has rank one.
#[derive(Debug, Clone, Copy)]
pub struct ConstantKernel {
    pub g0: f64,
}

impl PairKernel for ConstantKernel {
    fn antiderivative(&self, t: f64) -> f64 {
        0.5 * self.g0 * t * t
    }
    fn singular(&self) -> bool {
        false
    }
}

/// Symmetric Nyström matrix of `K` together with what produced it.
#[derive(Debug, Clone)]
pub struct BsMatrix {
    pub entries: DMatrix<f64>,
    pub params: PhysParams,
    pub potential: RadialPotential,
    pub grid: QuadGrid,
}

fn radial_kernel<K: PairKernel + ?Sized>(kern: &K, r: f64, rho: f64, vr: f64, vrho: f64) -> f64 {
    2.0 * PI * vr * vrho * (kern.antiderivative(r + rho) - kern.antiderivative((r - rho).abs()))
}

/// `∫₀^R k(rᵢ, ρ) dρ`, split at the singular point.
fn row_integral<K: PairKernel + ?Sized>(
    kern: &K,
    potential: &RadialPotential,
    r: f64,
    vr: f64,
    tol: &Tolerance,
) -> Result<f64> {
    let rr = potential.support_radius;
    // k at ρ = r + d, with the separation passed exactly so it never rounds
    // to zero next to the diagonal
    let f = |d: f64| {
        let rho = r + d;
        2.0 * PI
            * vr
            * potential.sqrt_abs(rho)
            * (kern.antiderivative(r + rho) - kern.antiderivative(d.abs()))
    };
    // Cubic substitutions cluster nodes at the diagonal, taming the
    // logarithm for the adaptive rule.
    let left = lenient(integrate(
        &|s: f64| 3.0 * r * s * s * f(-r * s * s * s),
        0.0,
        1.0,
        tol,
    ))?;
    let span = rr - r;
    let right = lenient(integrate(
        &|t: f64| 3.0 * span * t * t * f(span * t * t * t),
        0.0,
        1.0,
        tol,
    ))?;
    Ok(left + right)
}

/// Accepts an estimate that missed the target tolerance but is still far
/// more accurate than the discretization it feeds (tabulated profiles are
/// only piecewise smooth).
fn lenient(r: Result<crate::quad::Estimate>) -> Result<f64> {
    match r {
        Ok(e) => Ok(e.value),
        Err(Error::Quadrature { estimate, error }) if error <= 1e-9 * estimate.abs().max(1e-12) => {
            Ok(estimate)
        }
        Err(e) => Err(e),
    }
}

/// Nyström matrix `√(wᵢwⱼ) k(rᵢ, rⱼ)` of an arbitrary pair kernel, with
/// singularity subtraction on the diagonal when the kernel asks for it.
pub fn pair_matrix<K: PairKernel + ?Sized>(
    kern: &K,
    potential: &RadialPotential,
    grid: &QuadGrid,
) -> Result<DMatrix<f64>> {
    let n = grid.size();
    let r = &grid.nodes;
    let w = &grid.weights;
    if r.iter()
        .any(|&x| !(x > 0.0 && x < potential.support_radius))
    {
        return Err(Error::Invalid("grid nodes must lie inside (0, R)".into()));
    }
    let v: Vec<f64> = r.iter().map(|&x| potential.sqrt_abs(x)).collect();
    let mut k = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..i {
            let kij = radial_kernel(kern, r[i], r[j], v[i], v[j]);
            if !kij.is_finite() {
                return Err(Error::MatrixEntry {
                    i,
                    j,
                    source: Box::new(Error::Evaluation {
                        func: "pair_matrix",
                        msg: format!("kernel value {kij}"),
                    }),
                });
            }
            k[(i, j)] = kij;
            k[(j, i)] = kij;
        }
    }
    let tol = Tolerance {
        abs_tol: 1e-15,
        rel_tol: 1e-12,
        max_subdivisions: 400,
    };
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[(i, j)] = (w[i] * w[j]).sqrt() * k[(i, j)];
            }
        }
        m[(i, i)] = if v[i] == 0.0 {
            0.0
        } else if kern.singular() {
            let s = row_integral(kern, potential, r[i], v[i], &tol).map_err(|e| {
                Error::MatrixEntry {
                    i,
                    j: i,
                    source: Box::new(e),
                }
            })?;
            let off: f64 = (0..n).filter(|&j| j != i).map(|j| w[j] * k[(i, j)]).sum();
            s - off
        } else {
            w[i] * radial_kernel(kern, r[i], r[i], v[i], v[i])
        };
    }
    Ok(m)
}

/// s-wave Nyström matrix of the Birman–Schwinger operator at `p`.
pub fn s_wave_reduce(
    potential: &RadialPotential,
    p: &PhysParams,
    grid: &QuadGrid,
) -> Result<BsMatrix> {
    let entries = pair_matrix(&GreenKernel(*p), potential, grid)?;
    Ok(BsMatrix {
        entries,
        params: *p,
        potential: potential.clone(),
        grid: grid.clone(),
    })
}

/// Leading eigenpair of a [`BsMatrix`] plus the rest of the spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralResult {
    pub mu0: f64,
    pub lambda0: f64,
    /// Eigenfunction `φ(rᵢ)`, normalized so `4π Σ wᵢ rᵢ² φᵢ² = 1`.
    pub phi: Vec<f64>,
    /// The matrix eigenvector `ψᵢ = √(4π wᵢ) rᵢ φᵢ`, unit length.
    pub psi: Vec<f64>,
    /// `μ₀ − μ₁`.
    pub gap: f64,
    /// `‖Mψ − μ₀ψ‖`.
    pub residual: f64,
    /// All eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    #[serde(skip)]
    pub eigenvectors: DMatrix<f64>,
}

/// Relative gap below which the leading eigenvalue is treated as degenerate.
const DEGENERACY_TOL: f64 = 1e-8;

/// Largest eigenvalue and its eigenvector, with the rest of the spectrum
/// kept for perturbative corrections.
pub fn leading_eigenpair(mat: &BsMatrix) -> Result<SpectralResult> {
    let a = &mat.entries;
    let n = a.nrows();
    let asym = (a - a.transpose()).amax();
    if asym > 1e-13 * a.amax().max(1.0) {
        return Err(Error::Eigen(format!(
            "matrix is not symmetric (defect {asym:e})"
        )));
    }
    // Rows that vanish identically (grid points where V = 0) are exact zero
    // modes; they are split off because the eigensolver can return NaN on
    // matrices with zero blocks.
    let active: Vec<usize> = (0..n)
        .filter(|&i| a.row(i).iter().any(|&x| x != 0.0))
        .collect();
    if active.is_empty() {
        return Err(Error::Degenerate { multiplicity: n });
    }
    let sub = a.select_rows(&active).select_columns(&active);
    let eig = SymmetricEigen::try_new(sub, f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigen("symmetric eigensolver did not converge".into()))?;
    if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::Eigen(
            "eigensolver produced non-finite eigenvalues".into(),
        ));
    }
    let mut pairs: Vec<(f64, DVector<f64>)> = (0..active.len())
        .map(|c| {
            let mut col = DVector::<f64>::zeros(n);
            for (k, &i) in active.iter().enumerate() {
                col[i] = eig.eigenvectors[(k, c)];
            }
            (eig.eigenvalues[c], col)
        })
        .collect();
    for i in (0..n).filter(|i| !active.contains(i)) {
        let mut col = DVector::<f64>::zeros(n);
        col[i] = 1.0;
        pairs.push((0.0, col));
    }
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (c, (_, col)) in pairs.into_iter().enumerate() {
        let col = if col.sum() < 0.0 { -col } else { col };
        vectors.set_column(c, &col);
    }
    let mu0 = values[0];
    let scale = mu0
        .abs()
        .max(values.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    if !(scale > 0.0) {
        return Err(Error::Degenerate { multiplicity: n });
    }
    let multiplicity = values
        .iter()
        .take_while(|&&v| mu0 - v <= DEGENERACY_TOL * scale)
        .count();
    if multiplicity > 1 {
        return Err(Error::Degenerate { multiplicity });
    }
    let psi: DVector<f64> = vectors.column(0).into_owned();
    let residual = (a * &psi - mu0 * &psi).norm();
    if residual > 1e-10 * scale.max(1.0) {
        return Err(Error::Eigen(format!(
            "eigenpair residual {residual:e} too large"
        )));
    }
    let grid = &mat.grid;
    let phi = psi
        .iter()
        .zip(grid.nodes.iter().zip(&grid.weights))
        .map(|(p, (r, w))| p / ((4.0 * PI * w).sqrt() * r))
        .collect();
    Ok(SpectralResult {
        mu0,
        lambda0: 1.0 / mu0,
        phi,
        psi: psi.iter().copied().collect(),
        gap: if n > 1 {
            mu0 - values[1]
        } else {
            f64::INFINITY
        },
        residual,
        eigenvalues: values,
        eigenvectors: vectors,
    })
}

/// Leading eigenvalue of the full kernel at `E = −α²` for each `α`.
pub fn eigen_continuation(
    potential: &RadialPotential,
    grid: &QuadGrid,
    m: f64,
    alphas: &[f64],
) -> Result<Vec<(f64, f64)>> {
    alphas
        .iter()
        .map(|&alpha| {
            let p = PhysParams::from_alpha(m, alpha)?;
            let mat = s_wave_reduce(potential, &p, grid)?;
            Ok((alpha, leading_eigenpair(&mat)?.mu0))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump_setup(n: usize) -> (RadialPotential, QuadGrid, PhysParams) {
        let v = RadialPotential::bump(1.0, 1.0).unwrap();
        let g = QuadGrid::gauss_legendre(n, 1.0).unwrap();
        let p = PhysParams::from_alpha(1.0, 0.0).unwrap();
        (v, g, p)
    }

    #[test]
    fn grid_moment() {
        let g = QuadGrid::gauss_legendre(50, 2.0).unwrap();
        assert!((g.second_moment() - 8.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn potentials_are_nonpositive_and_supported() {
        for v in [
            RadialPotential::bump(2.0, 1.5).unwrap(),
            RadialPotential::truncated_gaussian(2.0, 1.5).unwrap(),
            RadialPotential::square_well_smoothed(2.0, 1.5).unwrap(),
        ] {
            for i in 0..400 {
                let r = 2.0 * i as f64 / 399.0;
                let x = v.value(r);
                assert!(x <= 0.0);
                if r >= 1.5 {
                    assert_eq!(x, 0.0);
                }
            }
            assert!((v.value(0.0) + 2.0).abs() < 1e-12, "{:?}", v.family);
        }
    }

    #[test]
    fn spline_reproduces_smooth_profile() {
        let bump = RadialPotential::bump(1.0, 1.0).unwrap();
        let r: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
        let v: Vec<f64> = r.iter().map(|&x| bump.value(x)).collect();
        let tab = RadialPotential::tabulated(Table::new(r, v).unwrap());
        for &x in &[0.1, 0.37, 0.62, 0.9] {
            assert!((tab.value(x) - bump.value(x)).abs() < 1e-6);
        }
        assert!(Table::new(vec![0.0, 1.0], vec![-1.0, 0.5]).is_err());
        assert!(Table::new(vec![0.0, 0.0], vec![-1.0, 0.0]).is_err());
    }

    #[test]
    fn zero_potential_gives_zero_matrix() {
        let (_, g, p) = bump_setup(20);
        let v = RadialPotential::bump(0.0, 1.0).unwrap();
        let m = s_wave_reduce(&v, &p, &g).unwrap();
        assert_eq!(m.entries.amax(), 0.0);
        assert!(matches!(
            leading_eigenpair(&m),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn rank_one_hook() {
        let (v, g, _) = bump_setup(40);
        let g0 = 0.7;
        let m = pair_matrix(&ConstantKernel { g0 }, &v, &g).unwrap();
        let want: f64 = 4.0
            * PI
            * g0
            * g.nodes
                .iter()
                .zip(&g.weights)
                .map(|(r, w)| w * r * r * -v.value(*r))
                .sum::<f64>();
        let top = m.symmetric_eigenvalues().max();
        assert!((top / want - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bump_eigenvalue_converges() {
        let (v, g, p) = bump_setup(60);
        let a = leading_eigenpair(&s_wave_reduce(&v, &p, &g).unwrap()).unwrap();
        let g2 = QuadGrid::gauss_legendre(120, 1.0).unwrap();
        let b = leading_eigenpair(&s_wave_reduce(&v, &p, &g2).unwrap()).unwrap();
        assert!((a.mu0 / b.mu0 - 1.0).abs() < 1e-5, "{} vs {}", a.mu0, b.mu0);
        assert!(a.gap > 0.0 && a.residual < 1e-12);
        let norm: f64 = a
            .phi
            .iter()
            .zip(g.nodes.iter().zip(&g.weights))
            .map(|(f, (r, w))| 4.0 * PI * w * r * r * f * f)
            .sum();
        assert!((norm - 1.0).abs() < 1e-12);
        let top = a.phi[0];
        assert!(a.phi.iter().all(|&f| f > -1e-12 * top), "{:?}", a.phi);
    }
}
