//! Gamma function by the Lanczos approximation (g = 7, nine terms).

use std::f64::consts::PI;

const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Γ(x)` for real `x`; infinite at the poles.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    // Small positive integers and half-integers are common; keep them exact.
    if x == x.floor() && x <= 20.0 {
        return (1..x as u32).map(f64::from).product();
    }
    if x - 0.5 == (x - 0.5).floor() && x <= 20.0 {
        // Γ(n + 1/2) = √π (1/2)(3/2)...(n − 1/2)
        let n = (x - 0.5) as u32;
        return PI.sqrt() * (0..n).map(|k| f64::from(k) + 0.5).product::<f64>();
    }
    let x = x - 1.0;
    let mut a = COEFFS[0];
    let t = x + G + 0.5;
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// `1/Γ(x)`, zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    1.0 / gamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(gamma(5.0), 24.0);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma(1.5) - 0.5 * PI.sqrt()).abs() < 1e-15);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert!((gamma(7.3) / 1_271.423_633_663_908_8 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn poles() {
        assert!(gamma(0.0).is_infinite());
        assert!(gamma(-2.0).is_infinite());
        assert_eq!(rgamma(-3.0), 0.0);
    }

    #[test]
    fn recurrence() {
        for &x in &[0.3, 1.7, 4.25, 11.1] {
            assert!((gamma(x + 1.0) / (x * gamma(x)) - 1.0).abs() < 1e-14);
        }
    }
}
