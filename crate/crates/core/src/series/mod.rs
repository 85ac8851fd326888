//! Aggregates of `D_w`: partial and mollified sums, slope fits, the odd
//! harmonic and odd divisor sums of the constant word, and the Dirichlet
//! series `F(w, s) = sum_n H(w_n) n^-s` with its continuation to `Re s > 0`.

mod compensated;
pub mod dirichlet;
pub mod lemmas;
pub mod sums;
pub mod zeta;

use thiserror::Error;

use crate::parity::ParityError;
use crate::word::WordError;

pub use compensated::{ComplexNeumaier, Neumaier};
pub use dirichlet::{
    dirichlet_continued, dirichlet_truncated, euler_factor_identity_check, residue_estimate, IdentityCheck, Method,
    SeriesValue, DEFAULT_CONTINUATION_CUTOFF,
};
pub use lemmas::{
    odd_divisor_sum, odd_divisor_sum_asymptotic, odd_divisor_sum_direct, odd_divisor_sum_hyperbola, odd_harmonic,
    odd_harmonic_asymptotic, OddDivisorSum,
};
pub use sums::{
    accumulate, fit_slope, geometric_checkpoints, perturbation_slope_invariance, FitModel, SlopeFit, SumPoint,
    SumProfile,
};
pub use zeta::{hurwitz_zeta, zeta};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error(transparent)]
    Parity(#[from] ParityError),
    #[error("the Dirichlet series does not converge at Re s = {sigma}; use the continuation")]
    NonConvergence { sigma: f64 },
    #[error("s = 1 is the pole of the series")]
    Pole,
    #[error("Re s = {sigma} is outside the half-plane of continuation Re s > 0")]
    OutsideHalfPlane { sigma: f64 },
    #[error("tolerance {tol} would need more than {max_terms} terms")]
    ToleranceUnreachable { tol: f64, max_terms: u64 },
    #[error("weighted sum overflowed 128 bits at n = {n}")]
    Overflow { n: u64 },
    #[error("slope fit needs at least 3 distinct checkpoints")]
    DegenerateFit,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl From<WordError> for SeriesError {
    fn from(e: WordError) -> Self {
        SeriesError::Parity(ParityError::Word(e))
    }
}
