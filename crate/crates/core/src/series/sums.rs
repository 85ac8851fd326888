//! Running sums `sum D(n)`, `sum n D(n)` and the mollified sum
//! `M_w(x) = sum_{n <= x} D(n) (1 - n/x)`.

use super::SeriesError;
use crate::parity::{for_each_chunk, ParityChunk, SieveConfig};
use crate::word::WordSpec;

/// Sums at one checkpoint `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumPoint {
    pub x: u64,
    pub sum_d: i64,
    pub sum_nd: i128,
    /// `M_w(x)`, from the exact integers `sum_d` and `sum_nd`.
    pub mollified: f64,
}

impl SumPoint {
    fn new(x: u64, sum_d: i64, sum_nd: i128) -> Self {
        SumPoint { x, sum_d, sum_nd, mollified: mollified(x, sum_d, sum_nd) }
    }

    /// `sum_{n <= x} D(n) / x`.
    pub fn avg_d(&self) -> f64 {
        self.sum_d as f64 / self.x as f64
    }

    pub fn mollified_over_x(&self) -> f64 {
        self.mollified / self.x as f64
    }
}

/// `sum_d - sum_nd / x` with a single rounding of the remainder.
fn mollified(x: u64, sum_d: i64, sum_nd: i128) -> f64 {
    let x = x as i128;
    let numer = sum_d as i128 * x - sum_nd;
    let (q, r) = (numer.div_euclid(x), numer.rem_euclid(x));
    q as f64 + r as f64 / x as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumProfile {
    pub points: Vec<SumPoint>,
}

impl SumProfile {
    pub fn last(&self) -> Option<&SumPoint> {
        self.points.last()
    }

    pub fn at(&self, x: u64) -> Option<&SumPoint> {
        self.points.binary_search_by_key(&x, |p| p.x).ok().map(|i| &self.points[i])
    }
}

/// `10^3 * 2^k` for every `k` with the value `<= x_max`.
pub fn geometric_checkpoints(x_max: u64) -> Vec<u64> {
    std::iter::successors(Some(1000u64), |&x| x.checked_mul(2)).take_while(|&x| x <= x_max).collect()
}

/// One sieve pass over `1..=x_max`, recording the sums at each checkpoint.
pub fn accumulate(
    spec: &WordSpec,
    x_max: u64,
    checkpoints: &[u64],
    config: &SieveConfig,
) -> Result<SumProfile, SeriesError> {
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SeriesError::InvalidArgument("checkpoints must be strictly increasing".into()));
    }
    if checkpoints.first().is_some_and(|&c| c == 0) || checkpoints.last().is_some_and(|&c| c > x_max) {
        return Err(SeriesError::InvalidArgument(format!("checkpoints must lie in [1, {x_max}]")));
    }
    let mut points = Vec::with_capacity(checkpoints.len());
    let mut pending = checkpoints.iter().copied().peekable();
    let (mut sum_d, mut sum_nd) = (0i64, 0i128);
    for_each_chunk(spec, x_max, config, |chunk: &ParityChunk| {
        for r in chunk.records() {
            let d = r.d();
            sum_d += d;
            sum_nd = sum_nd.checked_add(r.n as i128 * d as i128).ok_or(SeriesError::Overflow { n: r.n })?;
            if pending.peek() == Some(&r.n) {
                pending.next();
                points.push(SumPoint::new(r.n, sum_d, sum_nd));
            }
        }
        Ok::<_, SeriesError>(())
    })?;
    Ok(SumProfile { points })
}

/// Which statistic a slope is fitted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitModel {
    /// `sum_{n <= x} D(n)` against `x`.
    SumDOverX,
    /// `M_w(x)` against `x`.
    MollifiedOverX,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_max: f64,
    pub model: FitModel,
}

/// Ordinary least squares `y = slope * x + intercept` over the checkpoints.
pub fn fit_slope(profile: &SumProfile, model: FitModel) -> Result<SlopeFit, SeriesError> {
    let pts: Vec<(f64, f64)> = profile
        .points
        .iter()
        .map(|p| {
            let y = match model {
                FitModel::SumDOverX => p.sum_d as f64,
                FitModel::MollifiedOverX => p.mollified,
            };
            (p.x as f64, y)
        })
        .collect();
    if pts.len() < 3 {
        return Err(SeriesError::DegenerateFit);
    }
    let k = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(SeriesError::DegenerateFit);
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual_max = pts.iter().map(|p| (p.1 - slope * p.0 - intercept).abs()).fold(0.0, f64::max);
    Ok(SlopeFit { slope, intercept, residual_max, model })
}

/// `(M_base(x) / x, M_perturbed(x) / x)` for the base word and its perturbation by `flips`.
pub fn perturbation_slope_invariance(
    base: &WordSpec,
    flips: &[u64],
    x: u64,
    config: &SieveConfig,
) -> Result<(f64, f64), SeriesError> {
    let perturbed = WordSpec::perturbed(base.clone(), flips.iter().copied())?;
    let at = |spec: &WordSpec| -> Result<f64, SeriesError> {
        let profile = accumulate(spec, x, &[x], config)?;
        Ok(profile.points[0].mollified_over_x())
    };
    Ok((at(base)?, at(&perturbed)?))
}
