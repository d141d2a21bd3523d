use std::f64::consts::PI;

use herbst_core::fourierb::{
    b_hat, b_hat_regular, hankel_incomplete, hankel_tail, power_transform,
};
use herbst_core::kernel::{envelope_bound, green_function, within_envelope, H3_ROOT};
use herbst_core::specfun::{k0, k0_moment_full, k1, k2};
use herbst_core::{HankelParams, PhysParams};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bessel_k_positive_and_ordered(x in 1e-3f64..40.0) {
        let (a, b) = (k0(x), k1(x));
        prop_assert!(a > 0.0 && b > a);
        prop_assert!(k0(x * 1.01) < a);
        // K₂ from the recurrence exceeds K₁
        prop_assert!(k2(x) > b);
    }

    #[test]
    fn green_function_positive_inside_envelope(r in 0.01f64..20.0, mu in 0.05f64..0.95) {
        let p = PhysParams::from_mu(1.0, mu).unwrap();
        let g = green_function(r, &p).unwrap();
        prop_assert!(g > 0.0);
        prop_assert!(g <= envelope_bound(r, &p, H3_ROOT).unwrap());
        prop_assert!(within_envelope(r, &p, H3_ROOT).unwrap());
    }

    #[test]
    fn green_function_decreasing(r in 0.01f64..10.0, mu in 0.0f64..0.9) {
        let p = PhysParams::from_mu(1.0, mu).unwrap();
        prop_assert!(green_function(r * 1.05, &p).unwrap() < green_function(r, &p).unwrap());
    }

    #[test]
    fn green_function_mass_scaling(r in 0.05f64..5.0, m in 0.3f64..3.0, nu in 0.1f64..0.9) {
        // G_m(r) = m² G_1(m r) at fixed μ/m
        let g = green_function(r, &PhysParams::from_mu(m, nu * m).unwrap()).unwrap();
        let g1 = green_function(m * r, &PhysParams::from_mu(1.0, nu).unwrap()).unwrap();
        prop_assert!((g / (m * m * g1) - 1.0).abs() < 1e-10, "{} vs {}", g, m * m * g1);
    }

    #[test]
    fn b_hat_negative(log_sigma in -3.0f64..3.0) {
        let s = 10f64.powf(log_sigma);
        prop_assert!(b_hat(s).unwrap() < 0.0);
        let reg = b_hat_regular(s).unwrap();
        prop_assert!((reg - (b_hat(s).unwrap() + 1.0 / (2.0 * PI.powi(3) * s.powi(4)))).abs()
            <= 1e-9 * (1.0 / (2.0 * PI.powi(3) * s.powi(4))).max(1.0));
    }

    #[test]
    fn hankel_pieces_sum_to_full_moment(alpha in 0i32..2, beta in 0u32..3, log_k in -1.5f64..1.0) {
        let k = 10f64.powf(log_k);
        let hp = HankelParams::new(alpha, beta, 1.0).unwrap();
        let sum = hankel_incomplete(&hp, k).unwrap() + hankel_tail(&hp, k).unwrap();
        let full = k0_moment_full(beta) * power_transform(alpha, k).unwrap();
        prop_assert!((sum - full).abs() <= 1e-10 * full.abs().max(hankel_tail(&hp, k).unwrap().abs()),
            "{} vs {}", sum, full);
    }
}
