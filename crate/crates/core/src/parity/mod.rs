//! Divisor-parity counts `o_w(n)`, `e_w(n)` and `D_w(n) = o_w(n) - e_w(n)`.
//!
//! [`parity_counts`] enumerates the divisors of a single `n` and is the slow
//! reference; [`sieve`] produces every `n <= x` at once from the convolution
//! `D_w = (H o w) * h` with `h(m) = (-1)^(m+1)`.

pub mod sieve;

use thiserror::Error;

use crate::word::{WordError, WordSpec};

pub use sieve::{
    convolution_check, for_each_chunk, parity_sieve, ConvolutionCheck, ParityChunk, ParityTable, SieveConfig,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParityError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("sieve up to {x} needs {needed} bytes, over the memory budget of {budget} bytes")]
    CapacityExceeded { x: u64, needed: u64, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Parity counts of one integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParityRecord {
    pub n: u64,
    /// Divisors `j` with `w_j = b` and `n / j` odd.
    pub odd: u32,
    /// Divisors `j` with `w_j = b` and `n / j` even.
    pub even: u32,
}

impl ParityRecord {
    /// `D(n) = o(n) - e(n)`.
    #[inline]
    pub fn d(&self) -> i64 {
        self.odd as i64 - self.even as i64
    }
}

/// `n = 2^two_adic * odd_part` with `odd_part` odd, plus `d(odd_part)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub two_adic: u32,
    pub odd_part: u64,
    pub odd_divisor_count: u64,
}

impl Factorization {
    /// Trial division: strip factors of 2, then odd trial divisors up to the square root.
    pub fn of(n: u64) -> Self {
        assert!(n >= 1, "factorization of zero");
        let two_adic = n.trailing_zeros();
        let odd_part = n >> two_adic;
        let mut rest = odd_part;
        let mut count = 1u64;
        let mut p = 3u64;
        while p <= rest / p {
            if rest.is_multiple_of(p) {
                let mut e = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    e += 1;
                }
                count *= e + 1;
            }
            p += 2;
        }
        if rest > 1 {
            count *= 2;
        }
        Factorization { n, two_adic, odd_part, odd_divisor_count: count }
    }

    /// Total number of divisors `d(n) = (two_adic + 1) d(odd_part)`.
    pub fn divisor_count(&self) -> u64 {
        (self.two_adic as u64 + 1) * self.odd_divisor_count
    }
}

/// Every divisor of `n` in increasing order, by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut j = 1u64;
    while j <= n / j {
        if n.is_multiple_of(j) {
            small.push(j);
            if j != n / j {
                large.push(n / j);
            }
        }
        j += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `o_w(n)`, `e_w(n)` straight from the definition.
pub fn parity_counts(spec: &WordSpec, n: u64) -> Result<ParityRecord, WordError> {
    if n == 0 {
        return Err(WordError::ZeroIndex);
    }
    let mut rec = ParityRecord { n, odd: 0, even: 0 };
    for j in divisors(n) {
        if spec.letter_at(j)?.is_b() {
            if (n / j) % 2 == 1 {
                rec.odd += 1;
            } else {
                rec.even += 1;
            }
        }
    }
    Ok(rec)
}

/// Parity counts of the all-`b` word: `o(n) = d(r)`, `e(n) = alpha d(r)` for `n = 2^alpha r`.
pub fn constant_word_parity(n: u64) -> ParityRecord {
    let f = Factorization::of(n);
    let d = u32::try_from(f.odd_divisor_count).expect("divisor count fits in u32");
    ParityRecord { n, odd: d, even: f.two_adic * d }
}
