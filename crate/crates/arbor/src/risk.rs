//! The weighted ordering risk R_alpha, reference bound curves, and
//! log-log growth-rate regression.
//!
//! The realized risk of an estimated ordering is
//! `sum_i |rank_hat(i) - rank(i)| / rank(i)^alpha`; expectations are taken
//! by Monte Carlo averaging upstream, so quartiles stay available for
//! boxplot-style summaries.

use thiserror::Error;

use crate::estimators::{Estimator, Ordering};
use crate::tree::{GroundTruth, Model};

#[derive(Debug, Error, PartialEq)]
pub enum RiskError {
    #[error("estimate is over {estimate} labels but truth is over {truth}")]
    LabelSetMismatch { estimate: usize, truth: usize },
    #[error("alpha = {0} outside the bound's validity (alpha >= 1)")]
    AlphaOutOfRange(f64),
    #[error("regression needs >= 2 distinct sizes")]
    DegenerateGrid,
    #[error("regression needs strictly positive risks, got {0}")]
    NonPositiveRisk(f64),
}

/// Realized (pre-expectation) risk of one ordering against the truth.
pub fn risk_alpha(
    estimate: &Ordering,
    truth: &GroundTruth,
    alpha: f64,
) -> Result<f64, RiskError> {
    let n = estimate.n();
    if truth.n() != n {
        return Err(RiskError::LabelSetMismatch {
            estimate: n,
            truth: truth.n(),
        });
    }
    let mut sum = 0.0;
    for label in 1..=n {
        let rank = truth.rank_of(label);
        let err = estimate.rank_of(label).abs_diff(rank) as f64;
        sum += err / (rank as f64).powf(alpha);
    }
    Ok(sum)
}

/// Minimax lower-bound curve: n^(2-alpha)/70 within the theorem's validity
/// range (n >= 200 for uniform attachment, n >= 300 for preferential
/// attachment), floored at the indistinguishability bound 1/2. Outside the
/// range only the 1/2 floor is claimed.
pub fn lower_bound(n: usize, alpha: f64, model: Model) -> f64 {
    let n_min = match model {
        Model::Urrt => 200,
        Model::Pa => 300,
    };
    if n >= n_min {
        ((n as f64).powf(2.0 - alpha) / 70.0).max(0.5)
    } else {
        0.5
    }
}

fn harmonic_alpha(n: usize, alpha: f64) -> f64 {
    (1..=n).map(|i| (i as f64).powf(-alpha)).sum()
}

/// Risk upper bound for the Jordan ordering under uniform attachment, with
/// the two unspecified proof constants exposed (`k_const`, `c_const`; both
/// default to 1 and are display-only).
///
/// For 1 <= alpha < 2 the curve is
/// `K(alpha) n^(2-alpha) + k sum_i i^-alpha + c ln^4 n` with
/// `K(alpha) = 2/(2-a) + 2e^2/(2-a)^2 + 2/(2-a)^3`; for alpha >= 2 only the
/// `c ln^4 n` term remains.
pub fn upper_bound_urrt_with(
    n: usize,
    alpha: f64,
    k_const: f64,
    c_const: f64,
) -> Result<f64, RiskError> {
    if alpha < 1.0 {
        return Err(RiskError::AlphaOutOfRange(alpha));
    }
    let log4 = (n as f64).ln().powi(4);
    if alpha >= 2.0 {
        return Ok(c_const * log4);
    }
    let gap = 2.0 - alpha;
    let k_alpha = 2.0 / gap + 2.0 * std::f64::consts::E.powi(2) / gap.powi(2) + 2.0 / gap.powi(3);
    Ok(k_alpha * (n as f64).powf(gap) + k_const * harmonic_alpha(n, alpha) + c_const * log4)
}

pub fn upper_bound_urrt(n: usize, alpha: f64) -> Result<f64, RiskError> {
    upper_bound_urrt_with(n, alpha, 1.0, 1.0)
}

/// Risk upper bound for the Jordan ordering under preferential attachment.
///
/// For 1 <= alpha < 3/2:
/// `K(alpha) n^(2-alpha) + k sum_i i^-alpha + c ln^2(n) sqrt(n)` with
/// `K(alpha) = 2/(2-a) + (8 sqrt2 + 10/sqrt2)/((3/2-a)(2-a))
///           + 20/(sqrt2 (2-a)(3/2-a)^2)`;
/// for alpha >= 3/2 the bound degrades to `c_tail n^(3/2)`.
pub fn upper_bound_pa_with(
    n: usize,
    alpha: f64,
    k_const: f64,
    c_const: f64,
    c_tail: f64,
) -> Result<f64, RiskError> {
    if alpha < 1.0 {
        return Err(RiskError::AlphaOutOfRange(alpha));
    }
    if alpha >= 1.5 {
        return Ok(c_tail * (n as f64).powf(1.5));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let g2 = 2.0 - alpha;
    let g32 = 1.5 - alpha;
    let k_alpha =
        2.0 / g2 + (8.0 * sqrt2 + 10.0 / sqrt2) / (g32 * g2) + 20.0 / (sqrt2 * g2 * g32.powi(2));
    let log2_sqrt = (n as f64).ln().powi(2) * (n as f64).sqrt();
    Ok(k_alpha * (n as f64).powf(g2) + k_const * harmonic_alpha(n, alpha) + c_const * log2_sqrt)
}

pub fn upper_bound_pa(n: usize, alpha: f64) -> Result<f64, RiskError> {
    upper_bound_pa_with(n, alpha, 1.0, 1.0, 1.0)
}

/// One Monte Carlo observation of the realized risk.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RiskSample {
    pub model: Model,
    pub n: usize,
    pub alpha: f64,
    pub estimator: Estimator,
    pub replicate: usize,
    pub seed: u64,
    pub risk: f64,
}

impl RiskSample {
    pub const CSV_HEADER: &'static str = "model,n,alpha,estimator,replicate,seed,risk";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.model, self.n, self.alpha, self.estimator, self.replicate, self.seed, self.risk
        )
    }
}

/// Boxplot-style summary of the samples in one experiment cell.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RiskSummary {
    pub model: Model,
    pub n: usize,
    pub alpha: f64,
    pub estimator: Estimator,
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

impl RiskSummary {
    pub const CSV_HEADER: &'static str = "model,n,alpha,estimator,count,mean,median,q1,q3";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.model,
            self.n,
            self.alpha,
            self.estimator,
            self.count,
            self.mean,
            self.median,
            self.q1,
            self.q3
        )
    }
}

/// Linear-interpolation quantile of a sorted slice.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let m = sorted.len();
    if m == 1 {
        return sorted[0];
    }
    let pos = p * (m - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Collapses samples into per-cell summaries. Samples are grouped by
/// (model, n, alpha, estimator); groups are emitted in the canonical
/// (model, n, alpha, estimator) order.
pub fn summarize(samples: &[RiskSample]) -> Vec<RiskSummary> {
    let mut keys: Vec<(Model, usize, u64, Estimator)> = samples
        .iter()
        .map(|s| (s.model, s.n, s.alpha.to_bits(), s.estimator))
        .collect();
    keys.sort_unstable_by_key(|k| (k.0 as u8, k.1, k.2, k.3 as u8));
    keys.dedup();

    keys.into_iter()
        .map(|(model, n, alpha_bits, estimator)| {
            let mut risks: Vec<f64> = samples
                .iter()
                .filter(|s| {
                    s.model == model
                        && s.n == n
                        && s.alpha.to_bits() == alpha_bits
                        && s.estimator == estimator
                })
                .map(|s| s.risk)
                .collect();
            risks.sort_by(f64::total_cmp);
            let count = risks.len();
            RiskSummary {
                model,
                n,
                alpha: f64::from_bits(alpha_bits),
                estimator,
                count,
                mean: risks.iter().sum::<f64>() / count as f64,
                median: quantile(&risks, 0.5),
                q1: quantile(&risks, 0.25),
                q3: quantile(&risks, 0.75),
            }
        })
        .collect()
}

/// Least-squares fit of `log risk` against `log n`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub sizes: Vec<usize>,
}

/// Ordinary least squares on (ln n, ln risk); the slope estimates the
/// growth exponent of the risk.
pub fn rate_regression(points: &[(usize, f64)]) -> Result<RateFit, RiskError> {
    let mut sizes: Vec<usize> = points.iter().map(|&(n, _)| n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(RiskError::DegenerateGrid);
    }
    for &(_, risk) in points {
        if risk <= 0.0 {
            return Err(RiskError::NonPositiveRisk(risk));
        }
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, r)| r.ln()).collect();
    let m = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(RateFit {
        slope,
        intercept,
        r_squared,
        sizes,
    })
}

impl RateFit {
    pub const CSV_HEADER: &'static str = "model,alpha,estimator,slope,intercept,r2";
}
