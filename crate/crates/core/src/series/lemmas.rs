//! The two auxiliary sums behind the constant-word average:
//! `A_o(x) = sum_{n <= x, n odd} 1/n` and `I(x) = sum_{n <= x, n odd} d(n)`.

use super::Neumaier;
use crate::consts::{EULER_GAMMA, LN_2};

/// `A_o(x)` summed with compensation.
pub fn odd_harmonic(x: f64) -> f64 {
    assert!(x >= 1.0, "odd_harmonic needs x >= 1");
    let top = x.floor() as u64;
    let mut acc = Neumaier::default();
    // Smallest terms first.
    let last_odd = if top % 2 == 1 { top } else { top - 1 };
    let mut n = last_odd;
    loop {
        acc.add(1.0 / n as f64);
        if n == 1 {
            break;
        }
        n -= 2;
    }
    acc.value()
}

/// `log(x)/2 + log(2)/2 + gamma/2`.
pub fn odd_harmonic_asymptotic(x: f64) -> f64 {
    0.5 * x.ln() + 0.5 * LN_2 + 0.5 * EULER_GAMMA
}

/// Number of odd integers in `1..=x`.
fn odd_count(x: u64) -> u64 {
    x.div_ceil(2)
}

/// Lattice points `(a, b)`, both odd, with `ab <= x`, split at `sqrt(x)`.
pub fn odd_divisor_sum_hyperbola(x: u64) -> u64 {
    let s = x.isqrt();
    let mut half = 0u64;
    for a in (1..=s).step_by(2) {
        half += odd_count(x / a);
    }
    let k = odd_count(s);
    2 * half - k * k
}

/// Sieve of `d(n)` over the odd `n <= x`, then summed. Holds `x / 2` counters.
pub fn odd_divisor_sum_direct(x: u64) -> u64 {
    let len = odd_count(x) as usize;
    // Slot i holds d(2i + 1).
    let mut d = vec![0u32; len];
    for a in (1..=x).step_by(2) {
        let mut m = a;
        while m <= x {
            d[(m / 2) as usize] += 1;
            m += 2 * a;
        }
    }
    d.iter().map(|&v| v as u64).sum()
}

/// `I(x)` by both routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OddDivisorSum {
    pub x: u64,
    pub hyperbola: u64,
    pub direct: u64,
}

impl OddDivisorSum {
    pub fn agree(&self) -> bool {
        self.hyperbola == self.direct
    }
}

pub fn odd_divisor_sum(x: u64) -> OddDivisorSum {
    assert!(x >= 1, "odd_divisor_sum needs x >= 1");
    OddDivisorSum { x, hyperbola: odd_divisor_sum_hyperbola(x), direct: odd_divisor_sum_direct(x) }
}

/// `x log(x)/4 + x (log(2)/2 + gamma/2 - 1/4)`.
pub fn odd_divisor_sum_asymptotic(x: f64) -> f64 {
    0.25 * x * x.ln() + x * (0.5 * LN_2 + 0.5 * EULER_GAMMA - 0.25)
}
