use herbst_core::quad::{radial_fourier3, RadialFunction};
use herbst_core::Tolerance;

fn bump(r: f64) -> f64 {
    if r >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - r * r)).exp()
    }
}

#[test]
fn transform_twice_recovers_profile() {
    let inner_tol = Tolerance::new(1e-14, 1e-11, 400).unwrap();
    let outer_tol = Tolerance::new(1e-12, 1e-8, 400).unwrap();
    let f = RadialFunction::new(bump, 0.0).unwrap().with_support(1.0);
    let ft = RadialFunction::new(
        |k: f64| radial_fourier3(&f, k, &inner_tol).unwrap_or(f64::NAN),
        0.0,
    )
    .unwrap();
    let mut worst = 0.0f64;
    // twenty radii inside the support, where the profile is not tiny
    for i in 0..20 {
        let r = 0.02 + 0.04 * i as f64;
        let back = radial_fourier3(&ft, r, &outer_tol).unwrap();
        worst = worst.max((back / bump(r) - 1.0).abs());
    }
    assert!(worst < 1e-6, "{worst}");
}
