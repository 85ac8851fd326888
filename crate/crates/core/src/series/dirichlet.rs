//! `F(w, s) = sum_n H(w_n) n^-s` with `H(a) = 0`, `H(b) = 1`.
//!
//! Write `A(t) = b_count(floor t)` and `E(n) = A(n) - beta n`, with
//! `|E(n)| <= disc` from the balance property.
//!
//! * Truncated: `sum_{n <= N} + beta zeta(s, N + 1) - E(N) (N + 1)^-s`, the
//!   rest of the Abel-summed tail bounded by `disc |s| (N + 1)^-sigma / sigma`.
//!   Needs `sigma > 1`.
//! * Continued: `beta/(s - 1) + beta - s int_1^inf (beta t - A(t)) t^(-s-1) dt`,
//!   integrated exactly on each `[n, n + 1]` up to `T`. For real `t`,
//!   `|beta t - A(t)| <= disc + beta`, so the tail past `T` is at most
//!   `(disc + beta) |s| T^-sigma / sigma`. Valid for `sigma > 0`, `s != 1`.

use std::fmt;

use num_complex::Complex64;

use super::zeta::{hurwitz_zeta, real_pow_neg, zeta};
use super::{ComplexNeumaier, SeriesError};
use crate::parity::{for_each_chunk, ParityChunk, SieveConfig};
use crate::word::WordSpec;

/// Default integration cutoff `T` for the continuation.
pub const DEFAULT_CONTINUATION_CUTOFF: u64 = 1_000_000;

/// Most terms the truncated method will sum before giving up on a tolerance.
const MAX_TERMS: u64 = 100_000_000;

/// Below this real part the continuation loses digits to cancellation.
const LOW_SIGMA_WARNING: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    TruncatedDirichlet,
    ContinuationIntegral,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::TruncatedDirichlet => "truncated_dirichlet",
            Method::ContinuationIntegral => "continuation_integral",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub s: Complex64,
    pub value: Complex64,
    /// Bound on the truncation error; float roundoff is not included.
    pub error_bound: f64,
    pub method: Method,
}

/// `(e^z - 1) / z`, accurate near 0.
fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    }
    expm1(z) / z
}

fn expm1(z: Complex64) -> Complex64 {
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * z.im.cos() - 2.0 * half * half, z.re.exp() * z.im.sin())
}

/// Terms needed for `disc |s| (N + 1)^-sigma / sigma <= tol / 2`.
fn terms_for(disc: f64, s: Complex64, tol: f64) -> Result<u64, SeriesError> {
    if disc == 0.0 {
        return Ok(1);
    }
    let sigma = s.re;
    let n = (2.0 * disc * s.norm() / (sigma * tol)).powf(1.0 / sigma).ceil();
    if n.is_nan() || n > MAX_TERMS as f64 {
        return Err(SeriesError::ToleranceUnreachable { tol, max_terms: MAX_TERMS });
    }
    Ok((n as u64).max(1))
}

/// `F(w, s)` for `Re s > 1` to within `tol`.
pub fn dirichlet_truncated(spec: &WordSpec, s: Complex64, tol: f64) -> Result<SeriesValue, SeriesError> {
    if s.re <= 1.0 {
        return Err(SeriesError::NonConvergence { sigma: s.re });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SeriesError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let beta = spec.beta();
    let disc = spec.discrepancy_bound();
    let n_terms = terms_for(disc, s, tol)?;

    let mut acc = ComplexNeumaier::default();
    let mut count = 0u64;
    for (i, letter) in spec.stream().take(n_terms as usize).enumerate() {
        if letter?.is_b() {
            count += 1;
            acc.add(real_pow_neg((i + 1) as f64, s));
        }
    }
    let next = n_terms as f64 + 1.0;
    let mut error_bound = disc * s.norm() * next.powf(-s.re) / s.re;
    if beta != 0.0 {
        let (tail, tail_err) = hurwitz_zeta(s, next)?;
        acc.add(beta * tail);
        error_bound += beta * tail_err;
    }
    let e_n = count as f64 - beta * n_terms as f64;
    acc.add(-e_n * real_pow_neg(next, s));
    Ok(SeriesValue { s, value: acc.value(), error_bound, method: Method::TruncatedDirichlet })
}

/// `F(w, s)` for `Re s > 0`, `s != 1`, integrating up to `cutoff`.
pub fn dirichlet_continued(spec: &WordSpec, s: Complex64, cutoff: u64) -> Result<SeriesValue, SeriesError> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(SeriesError::Pole);
    }
    if s.re <= 0.0 {
        return Err(SeriesError::OutsideHalfPlane { sigma: s.re });
    }
    if s.norm() < 1e-9 {
        return Err(SeriesError::InvalidArgument(format!("|s| = {} is too close to 0", s.norm())));
    }
    if cutoff == 0 {
        return Err(SeriesError::InvalidArgument("cutoff must be at least 1".into()));
    }
    if s.re < LOW_SIGMA_WARNING {
        log::warn!("Re s = {} is close to 0; the continuation loses precision", s.re);
    }
    let beta = spec.beta();
    let disc = spec.discrepancy_bound();
    let one_minus_s = 1.0 - s;

    let mut integral = ComplexNeumaier::default();
    let mut a_n = 0u64;
    for (i, letter) in spec.stream().take((cutoff - 1) as usize).enumerate() {
        if letter?.is_b() {
            a_n += 1;
        }
        let n = (i + 1) as f64;
        let len = (1.0 / n).ln_1p();
        let n_pow = real_pow_neg(n, s);
        // int_n^{n+1} t^-s dt and int_n^{n+1} t^{-s-1} dt
        let j0 = n * n_pow * len * exprel(one_minus_s * len);
        let j1 = n_pow * len * exprel(-s * len);
        integral.add(beta * j0 - a_n as f64 * j1);
    }
    let value = beta / (s - 1.0) + beta - s * integral.value();
    let error_bound = (disc + beta) * s.norm() * (cutoff as f64).powf(-s.re) / s.re;
    Ok(SeriesValue { s, value, error_bound, method: Method::ContinuationIntegral })
}

/// Residue of `F(w, s)` at `s = 1`: `(s - 1) F(w, s)` at `s = 1 + h` for
/// `h = 0.1, 0.05, 0.025`, with the linear and quadratic terms in `h` eliminated.
pub fn residue_estimate(spec: &WordSpec, cutoff: u64) -> Result<f64, SeriesError> {
    let g = |h: f64| -> Result<f64, SeriesError> {
        let v = dirichlet_continued(spec, Complex64::new(1.0 + h, 0.0), cutoff)?;
        Ok(h * v.value.re)
    };
    let (g1, g2, g4) = (g(0.1)?, g(0.05)?, g(0.025)?);
    Ok((g1 - 6.0 * g2 + 8.0 * g4) / 3.0)
}

/// Both sides of `sum D(n) n^-s = (1 - 2^(1-s)) zeta(s) F(w, s)`, the left cut at `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    pub s: Complex64,
    pub n_max: u64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub discrepancy: f64,
}

pub fn euler_factor_identity_check(
    spec: &WordSpec,
    s: Complex64,
    n_max: u64,
    config: &SieveConfig,
) -> Result<IdentityCheck, SeriesError> {
    if s.re <= 1.0 {
        return Err(SeriesError::NonConvergence { sigma: s.re });
    }
    let mut lhs = ComplexNeumaier::default();
    for_each_chunk(spec, n_max, config, |chunk: &ParityChunk| {
        for r in chunk.records() {
            let d = r.d();
            if d != 0 {
                lhs.add(d as f64 * real_pow_neg(r.n as f64, s));
            }
        }
        Ok::<_, SeriesError>(())
    })?;
    let lhs = lhs.value();
    let f = dirichlet_truncated(spec, s, 1e-8)?;
    let (z, _) = zeta(s)?;
    let factor = 1.0 - ((1.0 - s) * std::f64::consts::LN_2).exp();
    let rhs = factor * z * f.value;
    Ok(IdentityCheck { s, n_max, lhs, rhs, discrepancy: (lhs - rhs).norm() })
}
