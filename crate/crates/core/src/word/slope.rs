//! Slopes and intercepts of mechanical words, and the floor of `n*alpha + rho`.
//!
//! Floors are evaluated in three tiers. The first two are fixed point
//! (64 and 128 fractional bits); a tier is trusted only when its fractional
//! part is farther from an integer than the tier's guard band. Otherwise the
//! value is recomputed exactly: quadratic irrationals through an integer
//! square root, decimals as rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::WordError;

/// Largest number of fractional digits accepted in a decimal.
const MAX_DECIMAL_DIGITS: u32 = 38;

/// A quadratic irrational slope with an exact symbolic value `(p + q*sqrt(d)) / r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadraticPreset {
    /// `(3 - sqrt 5) / 2`, the slope of the Fibonacci word.
    Fibonacci,
    /// `(sqrt 5 - 1) / 2`.
    Golden,
    /// `sqrt 2 - 1`.
    Silver,
    /// `sqrt 3 - 1`.
    Sqrt3Minus1,
}

impl QuadraticPreset {
    pub const ALL: [QuadraticPreset; 4] =
        [QuadraticPreset::Fibonacci, QuadraticPreset::Golden, QuadraticPreset::Silver, QuadraticPreset::Sqrt3Minus1];

    /// Coefficients `(p, q, d, r)` of `(p + q*sqrt(d)) / r`.
    pub fn coefficients(self) -> (i64, i64, u64, i64) {
        match self {
            QuadraticPreset::Fibonacci => (3, -1, 5, 2),
            QuadraticPreset::Golden => (-1, 1, 5, 2),
            QuadraticPreset::Silver => (-1, 1, 2, 1),
            QuadraticPreset::Sqrt3Minus1 => (-1, 1, 3, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadraticPreset::Fibonacci => "fibonacci",
            QuadraticPreset::Golden => "golden",
            QuadraticPreset::Silver => "silver",
            QuadraticPreset::Sqrt3Minus1 => "sqrt3-1",
        }
    }

    pub fn value(self) -> f64 {
        let (p, q, d, r) = self.coefficients();
        (p as f64 + q as f64 * (d as f64).sqrt()) / r as f64
    }

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// A non-negative decimal `digits / 10^scale`, kept exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    digits: u128,
    scale: u32,
}

impl Decimal {
    pub const ZERO: Decimal = Decimal { digits: 0, scale: 0 };

    /// `digits / 10^scale`, normalized so that equal values compare equal.
    pub fn new(mut digits: u128, mut scale: u32) -> Result<Self, WordError> {
        while scale > 0 && digits.is_multiple_of(10) {
            digits /= 10;
            scale -= 1;
        }
        if scale > MAX_DECIMAL_DIGITS {
            return Err(WordError::InvalidSlope(format!(
                "at most {MAX_DECIMAL_DIGITS} fractional digits are supported"
            )));
        }
        Ok(Decimal { digits, scale })
    }

    pub fn value(&self) -> f64 {
        self.digits as f64 / 10f64.powi(self.scale as i32)
    }

    fn numer(&self) -> BigInt {
        BigInt::from(self.digits)
    }

    fn denom(&self) -> BigInt {
        BigInt::from(10u8).pow(self.scale)
    }

    fn is_unit_interval(&self) -> bool {
        self.numer() < self.denom()
    }

    /// `floor(self * 2^bits)`.
    fn fixed(&self, bits: u32) -> BigUint {
        (BigUint::from(self.digits) << bits) / BigUint::from(10u8).pow(self.scale)
    }
}

impl FromStr for Decimal {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::InvalidSlope(format!("not a plain decimal: {s:?}"));
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        let scale = u32::try_from(frac.len()).map_err(|_| bad())?;
        let joined = format!("{int}{frac}");
        let digits = if joined.is_empty() { 0 } else { joined.parse::<u128>().map_err(|_| bad())? };
        Decimal::new(digits, scale)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.digits);
        }
        let pow = 10u128.pow(self.scale);
        write!(f, "{}.{:0width$}", self.digits / pow, self.digits % pow, width = self.scale as usize)
    }
}

/// Slope of a mechanical word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    /// Exact quadratic irrational.
    Quadratic(QuadraticPreset),
    /// A decimal standing in for an irrational number it approximates.
    Approximate(Decimal),
}

impl Slope {
    pub fn value(&self) -> f64 {
        match self {
            Slope::Quadratic(q) => q.value(),
            Slope::Approximate(d) => d.value(),
        }
    }

    /// `floor(self * 2^bits)` as an exact integer.
    fn fixed(&self, bits: u32) -> BigUint {
        match self {
            Slope::Quadratic(q) => {
                let (p, qc, d, r) = q.coefficients();
                let scale = BigInt::one() << bits;
                floor_quadratic(&(BigInt::from(p) * &scale), &(BigInt::from(qc) * &scale), d, &BigInt::from(r))
                    .to_biguint()
                    .expect("slope is positive")
            }
            Slope::Approximate(d) => d.fixed(bits),
        }
    }
}

impl FromStr for Slope {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match QuadraticPreset::from_name(s) {
            Some(p) => Ok(Slope::Quadratic(p)),
            None => s.parse().map(Slope::Approximate),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Quadratic(q) => f.write_str(q.name()),
            Slope::Approximate(d) => d.fmt(f),
        }
    }
}

/// `floor((p + q*sqrt(d)) / r)` for `r > 0` and non-square `d`.
fn floor_quadratic(p: &BigInt, q: &BigInt, d: u64, r: &BigInt) -> BigInt {
    let radicand = (q * q) * BigInt::from(d);
    let root = radicand.sqrt();
    let floor_q_sqrt_d = if q.is_negative() {
        // q*sqrt(d) is irrational, so its floor is -(isqrt + 1).
        -(root + BigInt::one())
    } else {
        root
    };
    (p + floor_q_sqrt_d).div_floor(r)
}

/// Evaluates `floor(n*alpha + rho)` with guarded fixed point and exact fallback.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct FloorEvaluator {
    alpha: Slope,
    rho: Decimal,
    alpha64: u64,
    rho64: u64,
    alpha128: u128,
    rho128: u128,
}

/// Guard band of the 64-bit tier, in units of 2^-64.
const GUARD64: u64 = 1 << 32;
/// Guard band of the 128-bit tier, in units of 2^-128.
const GUARD128: u128 = 1 << 64;

impl FloorEvaluator {
    pub(crate) fn new(alpha: Slope, rho: Decimal) -> Result<Self, WordError> {
        if !rho.is_unit_interval() {
            return Err(WordError::InvalidSlope(format!("rho must lie in [0, 1), got {rho}")));
        }
        match &alpha {
            Slope::Approximate(d) if d.digits == 0 || !d.is_unit_interval() => {
                return Err(WordError::InvalidSlope(format!("alpha must lie in (0, 1), got {d}")));
            }
            _ => {}
        }
        let alpha128 = alpha.fixed(128).to_u128().expect("alpha < 1");
        let rho128 = rho.fixed(128).to_u128().expect("rho < 1");
        Ok(FloorEvaluator {
            alpha64: (alpha128 >> 64) as u64,
            rho64: (rho128 >> 64) as u64,
            alpha128,
            rho128,
            alpha,
            rho,
        })
    }

    pub(crate) fn alpha(&self) -> &Slope {
        &self.alpha
    }

    pub(crate) fn rho(&self) -> &Decimal {
        &self.rho
    }

    /// `floor(n*alpha + rho)`.
    pub(crate) fn floor(&self, n: u64) -> Result<u64, WordError> {
        if let Some(v) = self.floor64(n) {
            return Ok(v);
        }
        if let Some(v) = self.floor128(n) {
            return Ok(v);
        }
        self.floor_exact(n)
    }

    /// The computed value undershoots the true one by less than `n + 1` units of 2^-64.
    fn floor64(&self, n: u64) -> Option<u64> {
        if n >= GUARD64 - 1 {
            return None;
        }
        let v = n as u128 * self.alpha64 as u128 + self.rho64 as u128;
        let frac = v as u64;
        (GUARD64..u64::MAX - GUARD64).contains(&frac).then_some((v >> 64) as u64)
    }

    /// 192-bit product; undershoots by less than `n + 1` units of 2^-128.
    fn floor128(&self, n: u64) -> Option<u64> {
        let n = n as u128;
        let lo = n * (self.alpha128 as u64 as u128);
        let hi = n * (self.alpha128 >> 64);
        let (acc, c1) = lo.overflowing_add(self.rho128);
        let (frac, c2) = acc.overflowing_add(hi << 64);
        let int = (hi >> 64) + c1 as u128 + c2 as u128;
        (GUARD128..u128::MAX - GUARD128).contains(&frac).then_some(int as u64)
    }

    pub(crate) fn floor_exact(&self, n: u64) -> Result<u64, WordError> {
        let nb = BigInt::from(n);
        let (rn, rd) = (self.rho.numer(), self.rho.denom());
        let v = match &self.alpha {
            Slope::Quadratic(preset) => {
                let (p, q, d, r) = preset.coefficients();
                let (p, q, r) = (BigInt::from(p), BigInt::from(q), BigInt::from(r));
                let big_p = &nb * &p * &rd + &rn * &r;
                let big_q = &nb * &q * &rd;
                floor_quadratic(&big_p, &big_q, d, &(&r * &rd))
            }
            Slope::Approximate(a) => {
                let (an, ad) = (a.numer(), a.denom());
                let num = &nb * &an * &rd + &rn * &ad;
                let den = ad * rd;
                let (quot, rem) = num.div_rem(&den);
                if rem.is_zero() {
                    // The decimal stands for an irrational; which side of the
                    // integer it falls on is unknown.
                    return Err(WordError::PrecisionExhausted { n });
                }
                quot
            }
        };
        Ok(v.to_u64().expect("floor fits in u64"))
    }
}
