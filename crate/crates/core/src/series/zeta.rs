//! Hurwitz zeta `zeta(s, a) = sum_{k >= 0} (k + a)^-s` by Euler-Maclaurin summation.

use num_complex::Complex64;

use super::{ComplexNeumaier, SeriesError};

/// `B_2, B_4, ..., B_20`.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `t^-s` for real `t > 0`.
#[inline]
pub(crate) fn real_pow_neg(t: f64, s: Complex64) -> Complex64 {
    (-s * t.ln()).exp()
}

/// Value and a bound on the remainder after the Bernoulli terms.
///
/// Direct terms run until the base reaches `|s| + 20`, so the remainder
/// `4 |(s)_20| N^(1 - sigma - 20) / ((2 pi)^20 (sigma + 19))` is tiny.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<(Complex64, f64), SeriesError> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(SeriesError::Pole);
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(SeriesError::InvalidArgument(format!("Hurwitz parameter must be positive, got {a}")));
    }
    let k_terms = BERNOULLI.len();
    if s.re + 2.0 * k_terms as f64 - 1.0 <= 0.0 {
        return Err(SeriesError::InvalidArgument(format!("Re s = {} too far left for Euler-Maclaurin", s.re)));
    }
    let direct = (s.norm() + 20.0 - a).max(0.0).ceil() as u64;
    let mut acc = ComplexNeumaier::default();
    for k in (0..direct).rev() {
        acc.add(real_pow_neg(k as f64 + a, s));
    }
    let n = direct as f64 + a;
    let n_pow = real_pow_neg(n, s);
    acc.add(n * n_pow / (s - 1.0));
    acc.add(0.5 * n_pow);

    // (s)_{2j-1} n^{-s-2j+1} / (2j)!, updated term to term.
    let mut rising = s;
    let mut factorial = 2.0;
    let mut power = n_pow / n;
    for (j, b) in BERNOULLI.iter().enumerate() {
        acc.add(b / factorial * rising * power);
        let m = 2.0 * j as f64 + 1.0;
        rising = rising * (s + m) * (s + m + 1.0);
        factorial *= (m + 2.0) * (m + 3.0);
        power /= n * n;
    }
    // `rising` is now (s)_{2K+1}; the remainder uses (s)_{2K}.
    let rising_2k = rising / (s + 2.0 * k_terms as f64);
    let two_k = 2 * k_terms as i32;
    let sigma = s.re;
    let bound = 4.0 * rising_2k.norm() / (2.0 * std::f64::consts::PI).powi(two_k) * n.powf(1.0 - sigma - two_k as f64)
        / (sigma + two_k as f64 - 1.0);
    Ok((acc.value(), bound))
}

/// Riemann zeta, `zeta(s, 1)`.
pub fn zeta(s: Complex64) -> Result<(Complex64, f64), SeriesError> {
    hurwitz_zeta(s, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn re(s: f64) -> Complex64 {
        Complex64::new(s, 0.0)
    }

    #[test]
    fn even_values() {
        let (z2, e2) = zeta(re(2.0)).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-14 && z2.im.abs() < 1e-15);
        assert!(e2 < 1e-20);
        let (z4, _) = zeta(re(4.0)).unwrap();
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    /// Continuation left of 1.
    #[test]
    fn critical_line_and_strip() {
        // Frozen reference values.
        let (z, _) = zeta(re(0.5)).unwrap();
        assert!((z.re - -1.4603545088095868).abs() < 1e-13);
        let (z, _) = zeta(re(0.0)).unwrap();
        assert!((z.re + 0.5).abs() < 1e-14);
        let (z, _) = zeta(re(-1.0)).unwrap();
        assert!((z.re + 1.0 / 12.0).abs() < 1e-13);
        // First nontrivial zero.
        let (z, _) = zeta(Complex64::new(0.5, 14.134725141734693)).unwrap();
        assert!(z.norm() < 1e-12, "{z}");
    }

    #[test]
    fn hurwitz_shift() {
        let s = Complex64::new(1.7, 3.0);
        let (z1, _) = hurwitz_zeta(s, 1.0).unwrap();
        let (z4, _) = hurwitz_zeta(s, 4.0).unwrap();
        let head: Complex64 = (1..=3).map(|k| real_pow_neg(k as f64, s)).sum();
        assert!((z1 - head - z4).norm() < 1e-13);
    }

    #[test]
    fn pole_is_rejected() {
        assert_eq!(zeta(re(1.0)), Err(SeriesError::Pole));
    }
}
