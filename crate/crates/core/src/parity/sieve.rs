//! Multiples sieve for `o_w`, `e_w` over `1..=x`.
//!
//! For every `j` with `w_j = b` and every cofactor `m`, the pair contributes to
//! `o(jm)` when `m` is odd and to `e(jm)` when `m` is even. The range is cut
//! into segments. Inside a segment `[lo, hi)` small `j <= sqrt(hi)` walk their
//! multiples, and large `j` are reached through their (then small) cofactors,
//! so every segment costs `O(len log x + sqrt x)`. Segments are independent,
//! which makes the output identical for any thread count.

use rayon::prelude::*;

use super::{parity_counts, ParityError, ParityRecord};
use crate::word::{WordBits, WordSpec};

/// Resource limits of a sieve run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    pub threads: usize,
    pub memory_budget: u64,
}

impl SieveConfig {
    pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

    pub fn with_threads(threads: usize) -> Self {
        SieveConfig { threads: threads.max(1), ..Self::default() }
    }
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            memory_budget: Self::DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// Parity counts for the consecutive integers `start .. start + len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityChunk {
    pub start: u64,
    pub odd: Vec<u32>,
    pub even: Vec<u32>,
}

impl ParityChunk {
    pub fn len(&self) -> usize {
        self.odd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.odd.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = ParityRecord> + '_ {
        self.odd.iter().zip(&self.even).enumerate().map(move |(i, (&odd, &even))| ParityRecord {
            n: self.start + i as u64,
            odd,
            even,
        })
    }
}

/// Every record `1..=x` held in memory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityTable {
    odd: Vec<u32>,
    even: Vec<u32>,
}

impl ParityTable {
    pub fn x(&self) -> u64 {
        self.odd.len() as u64
    }

    pub fn record(&self, n: u64) -> ParityRecord {
        let i = (n - 1) as usize;
        ParityRecord { n, odd: self.odd[i], even: self.even[i] }
    }

    pub fn d(&self, n: u64) -> i64 {
        let i = (n - 1) as usize;
        self.odd[i] as i64 - self.even[i] as i64
    }

    pub fn records(&self) -> impl Iterator<Item = ParityRecord> + '_ {
        (1..=self.x()).map(|n| self.record(n))
    }
}

const MIN_SEGMENT: u64 = 1 << 15;
const MAX_SEGMENT: u64 = 1 << 21;

fn segment_len(x: u64) -> u64 {
    x.isqrt().clamp(MIN_SEGMENT, MAX_SEGMENT).min(x)
}

fn check_budget(x: u64, needed: u64, config: &SieveConfig) -> Result<(), ParityError> {
    if needed > config.memory_budget {
        return Err(ParityError::CapacityExceeded { x, needed, budget: config.memory_budget });
    }
    Ok(())
}

/// Bytes held at once by a streaming run over `1..=x`.
fn streaming_bytes(x: u64, config: &SieveConfig) -> u64 {
    let word = x.div_ceil(8);
    let per_segment = segment_len(x) * 8;
    word + per_segment * (config.threads as u64 + 1)
}

fn sieve_segment(bits: &WordBits, lo: u64, hi: u64) -> ParityChunk {
    let len = (hi - lo) as usize;
    let mut odd = vec![0u32; len];
    let mut even = vec![0u32; len];
    let small = (hi - 1).isqrt();

    for j in bits.b_positions(1, small) {
        let mut m = lo.div_ceil(j);
        let mut n = m * j;
        while n < hi {
            let slot = (n - lo) as usize;
            if m % 2 == 1 {
                odd[slot] += 1;
            } else {
                even[slot] += 1;
            }
            m += 1;
            n += j;
        }
    }

    let max_cofactor = (hi - 1) / (small + 1);
    for m in 1..=max_cofactor {
        let from = lo.div_ceil(m).max(small + 1);
        let to = (hi - 1) / m;
        let counts = if m % 2 == 1 { &mut odd } else { &mut even };
        for j in bits.b_positions(from, to) {
            counts[(j * m - lo) as usize] += 1;
        }
    }

    ParityChunk { start: lo, odd, even }
}

/// Runs the sieve over `1..=x`, handing chunks to `sink` in increasing order.
///
/// Peak memory is the packed word prefix plus one segment per worker.
pub fn for_each_chunk<F, E>(spec: &WordSpec, x: u64, config: &SieveConfig, mut sink: F) -> Result<(), E>
where
    F: FnMut(&ParityChunk) -> Result<(), E>,
    E: From<ParityError>,
{
    if x == 0 {
        return Err(ParityError::InvalidArgument("sieve bound must be at least 1".into()).into());
    }
    check_budget(x, streaming_bytes(x, config), config)?;
    let bits = spec.prefix_bits(x).map_err(ParityError::from)?;
    let seg = segment_len(x);
    let bounds: Vec<(u64, u64)> = (0..x.div_ceil(seg)).map(|k| (1 + k * seg, (1 + (k + 1) * seg).min(x + 1))).collect();

    if config.threads <= 1 {
        for &(lo, hi) in &bounds {
            sink(&sieve_segment(&bits, lo, hi))?;
        }
        return Ok(());
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| ParityError::InvalidArgument(format!("cannot start worker threads: {e}")))?;
    for batch in bounds.chunks(config.threads) {
        let chunks: Vec<ParityChunk> =
            pool.install(|| batch.par_iter().map(|&(lo, hi)| sieve_segment(&bits, lo, hi)).collect());
        for chunk in &chunks {
            sink(chunk)?;
        }
    }
    Ok(())
}

/// All records `1..=x` in memory.
pub fn parity_sieve(spec: &WordSpec, x: u64, config: &SieveConfig) -> Result<ParityTable, ParityError> {
    check_budget(x, x * 8 + streaming_bytes(x, config), config)?;
    let cap = x as usize;
    let mut table = ParityTable { odd: Vec::with_capacity(cap), even: Vec::with_capacity(cap) };
    for_each_chunk(spec, x, config, |chunk: &ParityChunk| {
        table.odd.extend_from_slice(&chunk.odd);
        table.even.extend_from_slice(&chunk.even);
        Ok::<_, ParityError>(())
    })?;
    Ok(table)
}

/// Outcome of comparing the sieve against divisor enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvolutionCheck {
    Agree { n_max: u64 },
    Mismatch { n: u64, sieve: i64, direct: i64 },
}

impl ConvolutionCheck {
    pub fn agrees(&self) -> bool {
        matches!(self, ConvolutionCheck::Agree { .. })
    }
}

/// Compares `D_w(n)` from the sieve and from [`parity_counts`] for every `n <= n_max`.
pub fn convolution_check(spec: &WordSpec, n_max: u64, config: &SieveConfig) -> Result<ConvolutionCheck, ParityError> {
    let table = parity_sieve(spec, n_max, config)?;
    for n in 1..=n_max {
        let direct = parity_counts(spec, n)?.d();
        let sieve = table.d(n);
        if sieve != direct {
            return Ok(ConvolutionCheck::Mismatch { n, sieve, direct });
        }
    }
    Ok(ConvolutionCheck::Agree { n_max })
}
