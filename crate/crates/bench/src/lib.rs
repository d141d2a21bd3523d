//! Benchmark fixtures. The benches themselves live in `benches/`.

use herbst_core::{PhysParams, QuadGrid, RadialPotential};

/// The default bump well on an `n`-point grid at threshold.
pub fn bump_fixture(n: usize) -> (RadialPotential, PhysParams, QuadGrid) {
    let v = RadialPotential::bump(1.0, 1.0).expect("valid potential");
    let p = PhysParams::from_alpha(1.0, 0.0).expect("valid parameters");
    let g = QuadGrid::gauss_legendre(n, 1.0).expect("valid grid");
    (v, p, g)
}
