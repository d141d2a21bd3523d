//! Modified Bessel functions `K₀`, `K₁` for real positive argument.
//!
//! Power series below `x = 2`, Chebyshev expansions of `√x eˣ K_ν(x)` in
//! `4/x − 1` above. Steed's continued fraction (Temme's CF2) is kept as an
//! independent check on the expansions. Both branches are accurate to a few ulp
//! away from the switch and to about `1e-15` relative at it.

#[cfg(test)]
use std::f64::consts::PI;

use super::EULER_GAMMA;
use crate::error::{domain, Result};

const SWITCH: f64 = 2.0;

/// `K₀(x)` or `K₁(x)` for `x > 0`.
pub fn bessel_k(order: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain(
            "bessel_k",
            format!("argument must be positive, got {x}"),
        ));
    }
    match order {
        0 => Ok(k0(x)),
        1 => Ok(k1(x)),
        _ => Err(domain(
            "bessel_k",
            format!("order {order} is not supported"),
        )),
    }
}

/// Power series for `(K₀, K₁)`, valid for small `x`.
fn series(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let l = (0.5 * x).ln() + EULER_GAMMA;
    // K₀ = −(ln(x/2)+γ) I₀ + Σ H_k y^k/(k!)²
    // K₁ = 1/x + (ln(x/2)+γ) I₁ − (x/4) Σ (H_k + H_{k+1}) y^k/(k!(k+1)!)
    let mut term = 1.0; // y^k/(k!)²
    let mut harm = 0.0; // H_k
    let mut i0 = 0.0;
    let mut s0 = 0.0;
    let mut i1 = 0.0;
    let mut s1 = 0.0;
    for k in 0..60 {
        let kf = k as f64;
        let t1 = term / (kf + 1.0); // y^k/(k!(k+1)!)
        let harm_next = harm + 1.0 / (kf + 1.0);
        i0 += term;
        s0 += harm * term;
        i1 += t1;
        s1 += (harm + harm_next) * t1;
        if term < 1e-18 * i0 {
            break;
        }
        term *= y / ((kf + 1.0) * (kf + 1.0));
        harm = harm_next;
    }
    let half = 0.5 * x;
    let k0 = -l * i0 + s0;
    let k1 = 1.0 / x + l * half * i1 - 0.5 * half * s1;
    (k0, k1)
}

/// Exponentially scaled `(e^x K₀(x), e^x K₁(x))` from Steed's algorithm.
#[cfg(test)]
fn continued_fraction(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..10_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0e = (PI / (2.0 * x)).sqrt() / s;
    let k1e = k0e * (x + 0.5 - h) / x;
    (k0e, k1e)
}

const CHEB_TERMS: usize = 28;

// Chebyshev coefficients of `√x eˣ K₀(x)` and `√x eˣ K₁(x)` in `y = 4/x − 1`,
// projected at 50 digits. Coefficients built in double precision from the
// continued fraction carry its rounding noise and lose about a digit.
const K0_LARGE: [f64; CHEB_TERMS] = [
    2.4403030820659555,
    -0.0314481013119645,
    0.0015698838857300533,
    -0.00012849549581627802,
    1.39498137188765e-05,
    -1.8317555227191195e-06,
    2.766813639445015e-07,
    -4.660489897687948e-08,
    8.574034017414225e-09,
    -1.6975345093890614e-09,
    3.5773972814003283e-10,
    -7.957489244477396e-11,
    1.8559491149549264e-11,
    -4.514597883374519e-12,
    1.1403405882073441e-12,
    -2.9800969231481784e-13,
    8.032890775068375e-14,
    -2.2275133267462965e-14,
    6.340076476276646e-15,
    -1.848593377920907e-15,
    5.5120559994043335e-16,
    -1.6782311257549006e-16,
    5.2103917776435543e-17,
    -1.6475805939842632e-17,
    5.3004337711773354e-18,
    -1.7331712005821001e-18,
    5.755109202882729e-19,
    -1.9390956053183553e-19,
];
const K1_LARGE: [f64; CHEB_TERMS] = [
    2.7206261904844427,
    0.10392373657681724,
    -0.002857816859622779,
    0.00019521551847135162,
    -1.936197974166083e-05,
    2.406484947837217e-06,
    -3.5019606030878126e-07,
    5.7410841254500495e-08,
    -1.0345762465678097e-08,
    2.0150497551970347e-09,
    -4.1903547593419254e-10,
    9.218315187605315e-11,
    -2.129967838427791e-11,
    5.139639673482343e-12,
    -1.2891739609498229e-12,
    3.348419666052243e-13,
    -8.976705182010146e-14,
    2.4771544242195988e-14,
    -7.0198370892147685e-15,
    2.038703166239861e-15,
    -6.057047270643018e-16,
    1.8380935752430455e-16,
    -5.689462849193648e-17,
    1.7940510478863572e-17,
    -5.7567444820733025e-18,
    1.8778651901623268e-18,
    -6.221645287352609e-19,
    2.0919125269831136e-19,
];

fn clenshaw(c: &[f64; CHEB_TERMS], y: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c[1..].iter().rev() {
        let b0 = 2.0 * y * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    y * b1 - b2 + 0.5 * c[0]
}

/// `(e^x K₀(x), e^x K₁(x))` for `x > 2`.
fn scaled_large(x: f64) -> (f64, f64) {
    let y = 4.0 / x - 1.0;
    let s = x.sqrt();
    (clenshaw(&K0_LARGE, y) / s, clenshaw(&K1_LARGE, y) / s)
}

/// `K₀(x)`; `x` must be positive.
pub fn k0(x: f64) -> f64 {
    if x <= SWITCH {
        series(x).0
    } else {
        scaled_large(x).0 * (-x).exp()
    }
}

/// `K₁(x)`; `x` must be positive.
pub fn k1(x: f64) -> f64 {
    if x <= SWITCH {
        series(x).1
    } else {
        scaled_large(x).1 * (-x).exp()
    }
}

/// `e^x K₀(x)`.
pub fn k0e(x: f64) -> f64 {
    if x <= SWITCH {
        series(x).0 * x.exp()
    } else {
        scaled_large(x).0
    }
}

/// `e^x K₁(x)`.
pub fn k1e(x: f64) -> f64 {
    if x <= SWITCH {
        series(x).1 * x.exp()
    } else {
        scaled_large(x).1
    }
}

/// `K₂(x) = K₀(x) + (2/x) K₁(x)`.
pub fn k2(x: f64) -> f64 {
    let (a, b) = if x <= SWITCH {
        series(x)
    } else {
        let (a, b) = scaled_large(x);
        let e = (-x).exp();
        (a * e, b * e)
    };
    a + 2.0 * b / x
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from high-precision arithmetic.
    const TABLE: [(f64, f64, f64); 6] = [
        (0.01, 4.721_244_730_161_094_9, 99.973_894_118_296_246),
        (0.5, 0.924_419_071_227_665_9, 1.656_441_120_003_300_9),
        (1.0, 0.421_024_438_240_708_33, 0.601_907_230_197_234_6),
        (2.0, 0.113_893_872_749_533_44, 0.139_865_881_816_522_43),
        (5.0, 0.003_691_098_334_042_594_3, 0.004_044_613_445_452_164),
        (10.0, 1.778_006_231_616_765_2e-5, 1.864_877_345_382_558_5e-5),
    ];

    #[test]
    fn matches_reference_table() {
        for &(x, r0, r1) in &TABLE {
            assert!((k0(x) / r0 - 1.0).abs() < 1e-13, "K0({x}) = {}", k0(x));
            assert!((k1(x) / r1 - 1.0).abs() < 1e-13, "K1({x}) = {}", k1(x));
        }
    }

    #[test]
    fn branches_agree_at_switch() {
        for &x in &[1.9, 2.0, 2.1] {
            let (s0, s1) = series(x);
            let (c0, c1) = continued_fraction(x);
            let e = (-x).exp();
            assert!((s0 / (c0 * e) - 1.0).abs() < 1e-14);
            assert!((s1 / (c1 * e) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn expansion_matches_continued_fraction() {
        for i in 0..200 {
            let x = 2.0 * 1.05f64.powi(i);
            let (a, b) = scaled_large(x);
            let (c, d) = continued_fraction(x);
            assert!(
                (a / c - 1.0).abs() < 3e-15 && (b / d - 1.0).abs() < 3e-15,
                "x = {x}"
            );
        }
    }

    #[test]
    fn wronskian_like_recurrence() {
        // K₂ − K₀ = (2/x) K₁ and the large-x scaled limit √(π/2x).
        let x = 40.0;
        assert!((k0e(x) / (PI / (2.0 * x)).sqrt() - 1.0).abs() < 0.01);
        assert!((k2(3.0) - k0(3.0) - 2.0 * k1(3.0) / 3.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_non_positive_argument() {
        assert!(bessel_k(0, 0.0).is_err());
        assert!(bessel_k(1, -1.0).is_err());
        assert!(bessel_k(3, 1.0).is_err());
    }
}
