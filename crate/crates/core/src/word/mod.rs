//! Infinite binary words over `{a, b}` and their combinatorial checks.
//!
//! Every index in this module is 1-based: `letter_at(1)` is the first letter.

mod parse;
mod slope;
mod stream;

use std::collections::HashSet;
use std::fmt;

use bitvec::vec::BitVec;
use thiserror::Error;

pub use slope::{Decimal, QuadraticPreset, Slope};
pub use stream::WordStream;

use slope::FloorEvaluator;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word indices start at 1")]
    ZeroIndex,
    #[error("floor of n*alpha + rho at n = {n} is too close to an integer to resolve")]
    PrecisionExhausted { n: u64 },
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("invalid flip positions: {0}")]
    InvalidFlips(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("word spec parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// A letter of the alphabet `{a, b}`, ordered `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    /// The coefficient map: `a -> 0`, `b -> 1`.
    #[inline]
    pub fn weight(self) -> u64 {
        (self == Letter::B) as u64
    }

    #[inline]
    pub fn is_b(self) -> bool {
        self == Letter::B
    }

    pub fn flipped(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Renders letters as an ASCII `a`/`b` string.
pub fn to_ascii(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.as_char()).collect()
}

/// The mechanical word `s(n) = floor((n+1)*alpha + rho) - floor(n*alpha + rho)`,
/// with `one` naming the letter that codes `s(n) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mechanical {
    floor: FloorEvaluator,
    one: Letter,
}

impl Mechanical {
    pub fn new(alpha: Slope, rho: Decimal, one: Letter) -> Result<Self, WordError> {
        Ok(Mechanical { floor: FloorEvaluator::new(alpha, rho)?, one })
    }

    pub fn alpha(&self) -> &Slope {
        self.floor.alpha()
    }

    pub fn rho(&self) -> &Decimal {
        self.floor.rho()
    }

    pub fn one(&self) -> Letter {
        self.one
    }

    /// `floor(n*alpha + rho)`.
    pub(crate) fn floor_at(&self, n: u64) -> Result<u64, WordError> {
        self.floor.floor(n)
    }

    pub(crate) fn code(&self, bit: u64) -> Letter {
        if bit == 1 {
            self.one
        } else {
            self.one.flipped()
        }
    }
}

/// Declarative description of an infinite binary word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WordSpec {
    Constant(Letter),
    /// Fixed point of `a -> ab, b -> a`.
    Fibonacci,
    Mechanical(Mechanical),
    /// `base` with the letters at `flips` (sorted, distinct, 1-based) exchanged.
    Perturbed {
        base: Box<WordSpec>,
        flips: Vec<u64>,
    },
}

impl WordSpec {
    pub fn mechanical(alpha: Slope, rho: Decimal, one: Letter) -> Result<Self, WordError> {
        Mechanical::new(alpha, rho, one).map(WordSpec::Mechanical)
    }

    /// Mechanical word with an exact quadratic slope, intercept 0 and `1 -> b`.
    pub fn mechanical_preset(preset: QuadraticPreset) -> Self {
        WordSpec::mechanical(Slope::Quadratic(preset), Decimal::ZERO, Letter::B).expect("presets lie in (0, 1)")
    }

    pub fn perturbed(base: WordSpec, flips: impl IntoIterator<Item = u64>) -> Result<Self, WordError> {
        let mut flips: Vec<u64> = flips.into_iter().collect();
        if flips.contains(&0) {
            return Err(WordError::InvalidFlips("positions start at 1".into()));
        }
        flips.sort_unstable();
        flips.dedup();
        Ok(WordSpec::Perturbed { base: Box::new(base), flips })
    }

    /// Whether the word is Sturmian (aperiodic and balanced) by construction.
    pub fn is_sturmian(&self) -> bool {
        match self {
            WordSpec::Fibonacci => true,
            WordSpec::Mechanical(m) => matches!(m.alpha(), Slope::Quadratic(_)),
            _ => false,
        }
    }

    /// Letter `w_n`, `n >= 1`.
    pub fn letter_at(&self, n: u64) -> Result<Letter, WordError> {
        if n == 0 {
            return Err(WordError::ZeroIndex);
        }
        match self {
            WordSpec::Constant(l) => Ok(*l),
            WordSpec::Fibonacci => Ok(fibonacci_letter(n)),
            WordSpec::Mechanical(m) => Ok(m.code(m.floor_at(n + 1)? - m.floor_at(n)?)),
            WordSpec::Perturbed { base, flips } => {
                let l = base.letter_at(n)?;
                Ok(if flips.binary_search(&n).is_ok() { l.flipped() } else { l })
            }
        }
    }

    /// A stream positioned at index `start` (1-based).
    pub fn stream_from(&self, start: u64) -> Result<WordStream, WordError> {
        WordStream::new(self.clone(), start)
    }

    pub fn stream(&self) -> WordStream {
        WordStream::new(self.clone(), 1).expect("1 is a valid start")
    }

    /// Letters `w_1 .. w_len`.
    pub fn prefix(&self, len: u64) -> Result<Vec<Letter>, WordError> {
        let bits = self.prefix_bits(len)?;
        Ok((1..=len).map(|n| if bits.is_b(n) { Letter::B } else { Letter::A }).collect())
    }

    /// Letters `w_1 .. w_len` packed one bit per letter.
    pub fn prefix_bits(&self, len: u64) -> Result<WordBits, WordError> {
        let len_us = usize::try_from(len).expect("prefix length fits in memory");
        let mut bits: BitVec<u64> = match self {
            WordSpec::Constant(l) => BitVec::repeat(l.is_b(), len_us),
            WordSpec::Fibonacci => fibonacci_by_morphism(len_us),
            WordSpec::Mechanical(_) => {
                let mut bits = BitVec::with_capacity(len_us);
                for l in self.stream().take(len_us) {
                    bits.push(l?.is_b());
                }
                bits
            }
            WordSpec::Perturbed { base, flips } => {
                let mut bits = base.prefix_bits(len)?.bits;
                for &f in flips.iter().take_while(|&&f| f <= len) {
                    let i = (f - 1) as usize;
                    let v = !bits[i];
                    bits.set(i, v);
                }
                bits
            }
        };
        bits.truncate(len_us);
        Ok(WordBits { bits })
    }

    /// Number of `b` among `w_1 .. w_n`.
    pub fn b_count(&self, n: u64) -> Result<u64, WordError> {
        if n == 0 {
            return Err(WordError::ZeroIndex);
        }
        match self {
            WordSpec::Constant(l) => Ok(l.weight() * n),
            WordSpec::Mechanical(m) => {
                // Telescoping sum of s(1..=n).
                let ones = m.floor_at(n + 1)? - m.floor_at(1)?;
                Ok(if m.one() == Letter::B { ones } else { n - ones })
            }
            WordSpec::Fibonacci => Ok(self.prefix_bits(n)?.count_b()),
            WordSpec::Perturbed { base, flips } => {
                let mut count = base.b_count(n)? as i64;
                for &f in flips.iter().take_while(|&&f| f <= n) {
                    count += if base.letter_at(f)?.is_b() { -1 } else { 1 };
                }
                Ok(count as u64)
            }
        }
    }

    /// Limiting frequency of `b`.
    pub fn beta(&self) -> f64 {
        match self {
            WordSpec::Constant(l) => l.weight() as f64,
            WordSpec::Fibonacci => QuadraticPreset::Fibonacci.value(),
            WordSpec::Mechanical(m) => {
                let alpha = m.alpha().value();
                if m.one() == Letter::B {
                    alpha
                } else {
                    1.0 - alpha
                }
            }
            WordSpec::Perturbed { base, .. } => base.beta(),
        }
    }

    /// A bound on `|beta * n - b_count(n)|` valid for every `n`.
    pub fn discrepancy_bound(&self) -> f64 {
        match self {
            WordSpec::Constant(_) => 0.0,
            WordSpec::Fibonacci | WordSpec::Mechanical(_) => 1.0,
            WordSpec::Perturbed { base, flips } => base.discrepancy_bound() + flips.len() as f64,
        }
    }
}

/// A packed word prefix, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordBits {
    bits: BitVec<u64>,
}

impl WordBits {
    pub fn len(&self) -> u64 {
        self.bits.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Whether `w_n = b`, `1 <= n <= len`.
    #[inline]
    pub fn is_b(&self, n: u64) -> bool {
        self.bits[(n - 1) as usize]
    }

    pub fn count_b(&self) -> u64 {
        self.bits.count_ones() as u64
    }

    /// Indices `n` with `w_n = b` in `[from, to]`, increasing.
    pub fn b_positions(&self, from: u64, to: u64) -> impl DoubleEndedIterator<Item = u64> + '_ {
        let to = to.min(self.len());
        let from = from.max(1);
        let slice = if from > to { &self.bits[0..0] } else { &self.bits[(from - 1) as usize..to as usize] };
        slice.iter_ones().map(move |i| from + i as u64)
    }

    pub fn to_ascii(&self) -> String {
        self.bits.iter().map(|b| if *b { 'b' } else { 'a' }).collect()
    }
}

/// Fibonacci numbers `1, 2, 3, 5, ...` below 2^64, the Zeckendorf base.
const ZECKENDORF: [u64; 91] = {
    let mut f = [0u64; 91];
    f[0] = 1;
    f[1] = 2;
    let mut i = 2;
    while i < f.len() {
        f[i] = f[i - 1] + f[i - 2];
        i += 1;
    }
    f
};

/// `w_n` of the Fibonacci word: `b` exactly when the Zeckendorf representation
/// of `n - 1` uses the term 1.
fn fibonacci_letter(n: u64) -> Letter {
    let mut rest = n - 1;
    let mut uses_one = false;
    for &f in ZECKENDORF.iter().rev() {
        if f <= rest {
            rest -= f;
            uses_one = f == 1;
        }
    }
    if uses_one {
        Letter::B
    } else {
        Letter::A
    }
}

/// Prefix of at least `len` letters of the Fibonacci word, grown by
/// `S_{k+1} = S_k S_{k-1}` from `S_1 = a`, `S_2 = ab`.
fn fibonacci_by_morphism(len: usize) -> BitVec<u64> {
    let mut prev: BitVec<u64> = BitVec::repeat(false, 1);
    let mut cur: BitVec<u64> = BitVec::from_iter([false, true]);
    while cur.len() < len {
        let mut next = cur.clone();
        next.extend_from_bitslice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Largest difference in `b`-count between two length-`window` factors
/// starting at positions `<= n_max`.
pub fn balance_defect(spec: &WordSpec, window: u64, n_max: u64) -> Result<u64, WordError> {
    if window == 0 || n_max < window {
        return Err(WordError::InvalidArgument(format!(
            "balance needs 1 <= window <= n_max, got window={window}, n_max={n_max}"
        )));
    }
    let bits = spec.prefix_bits(n_max + window - 1)?;
    let mut sum = bits.b_positions(1, window).count() as u64;
    let (mut lo, mut hi) = (sum, sum);
    for start in 2..=n_max {
        sum = sum + bits.is_b(start + window - 1) as u64 - bits.is_b(start - 1) as u64;
        lo = lo.min(sum);
        hi = hi.max(sum);
    }
    Ok(hi - lo)
}

/// Number of distinct length-`n` factors in the length-`prefix_len` prefix.
pub fn factor_complexity(spec: &WordSpec, n: usize, prefix_len: usize) -> Result<usize, WordError> {
    if n == 0 || prefix_len < n {
        return Err(WordError::InvalidArgument(format!(
            "complexity needs 1 <= n <= prefix_len, got n={n}, prefix_len={prefix_len}"
        )));
    }
    let letters = spec.prefix(prefix_len as u64)?;
    Ok(letters.windows(n).collect::<HashSet<_>>().len())
}
