//! Divisor-parity statistics of Sturmian words.
//!
//! For a binary word `w` over `{a, b}`, `o_w(n)` counts divisors `j | n` with
//! `w_j = b` and `n / j` odd, `e_w(n)` those with `n / j` even, and
//! `D_w(n) = o_w(n) - e_w(n)`. The crate generates the words ([`word`]),
//! computes the parity functions one at a time or by sieve ([`parity`]), and
//! aggregates them into partial sums, mollified sums and Dirichlet series
//! ([`series`]).

pub mod consts;
pub mod parity;
pub mod report;
pub mod series;
pub mod word;

pub use parity::{ParityError, ParityRecord, SieveConfig};
pub use series::SeriesError;
pub use word::{Letter, WordError, WordSpec};
