//! One-sided empirical likelihood for a mean, and its use as a test of
//! complete independence.
//!
//! For observations `y_1..y_N` and a hypothesised mean `mu`, the profile
//! empirical likelihood puts weight `w_i = 1 / (N (1 + lambda (y_i - mu)))`
//! on each point, where `lambda` is the unique root of
//!
//! ```text
//! g(lambda) = sum_i (y_i - mu) / (1 + lambda (y_i - mu))
//! ```
//!
//! on the interval where every `1 + lambda (y_i - mu)` is positive. The
//! log-likelihood ratio is `2 sum_i ln(1 + lambda (y_i - mu))`. `g` is
//! strictly decreasing there (its derivative is `-sum d_i^2 / (1 + lambda d_i)^2`),
//! so the root is bracketed by `lambda = 0` and whichever endpoint lies on
//! the side of the sample mean.
//!
//! The independence test applies the one-sided statistic with `mu = 1` to
//! `y_ij = (n-1) r_ij^2`, then rescales it by a factor built from
//! `sum r_ij^4` that tends to one under the null.

use crate::corr::{pairwise_sum, PairCorrStats};
use crate::error::{Error, Result};
use crate::special::std_normal_sf;
use serde::Serialize;

/// Where the hypothesised mean sits relative to the open hull `(min y, max y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullStatus {
    Interior,
    AtOrBelowLeft,
    AtOrAboveRight,
}

impl HullStatus {
    fn classify(mu: f64, min: f64, max: f64) -> Self {
        if mu <= min {
            HullStatus::AtOrBelowLeft
        } else if mu >= max {
            HullStatus::AtOrAboveRight
        } else {
            HullStatus::Interior
        }
    }
}

/// Outcome of the empirical-likelihood independence test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElResult {
    /// Lagrange multiplier; absent when the statistic short-circuits.
    pub lambda: Option<f64>,
    /// One-sided statistic `l_n`, possibly `+inf`.
    pub ell: f64,
    /// Rescaled statistic `rescale_factor * l_n`.
    pub ell_bar: f64,
    pub rescale_factor: f64,
    pub mean_y: f64,
    pub hull_status: HullStatus,
}

/// Profile weights `w_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElWeights {
    pub weights: Vec<f64>,
}

struct Sample {
    min: f64,
    max: f64,
    mean: f64,
}

fn describe(y: &[f64]) -> Result<Sample> {
    if y.len() < 2 {
        return Err(Error::Degenerate("fewer than two observations"));
    }
    if let Some(&bad) = y.iter().find(|v| !v.is_finite()) {
        return Err(Error::Domain {
            what: "observation",
            value: bad,
        });
    }
    let (min, max) = y
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if min == max {
        return Err(Error::Degenerate("all observations equal"));
    }
    Ok(Sample {
        min,
        max,
        mean: pairwise_sum(y) / y.len() as f64,
    })
}

fn check_interior(mu: f64, s: &Sample) -> Result<()> {
    if !(mu > s.min && mu < s.max) {
        return Err(Error::HullViolation {
            mu,
            min: s.min,
            max: s.max,
        });
    }
    Ok(())
}

/// Evaluates `g(lambda)` and `g'(lambda)`.
fn g_and_slope(y: &[f64], mu: f64, lambda: f64) -> (f64, f64) {
    let mut g = 0.0;
    let mut dg = 0.0;
    for &v in y {
        let d = v - mu;
        let q = d / (1.0 + lambda * d);
        g += q;
        dg -= q * q;
    }
    (g, dg)
}

/// Evaluates `g(lambda) = sum (y_i - mu) / (1 + lambda (y_i - mu))`.
pub fn estimating_function(y: &[f64], mu: f64, lambda: f64) -> f64 {
    g_and_slope(y, mu, lambda).0
}

/// The open interval of admissible multipliers,
/// `(-1/(max y - mu), 1/(mu - min y))`.
pub fn admissible_interval(y: &[f64], mu: f64) -> Result<(f64, f64)> {
    let s = describe(y)?;
    check_interior(mu, &s)?;
    Ok((-1.0 / (s.max - mu), 1.0 / (mu - s.min)))
}

fn solve_in_hull(y: &[f64], mu: f64, s: &Sample) -> Result<f64> {
    const SHRINK: f64 = 1.0 - 1e-12;
    const MAX_ITER: usize = 500;

    let n = y.len() as f64;
    let var = y.iter().map(|v| (v - s.mean).powi(2)).sum::<f64>() / (n - 1.0);
    let tol = 1e-10 * n * var.sqrt();

    let (g0, mut slope) = g_and_slope(y, mu, 0.0);
    if g0 == 0.0 {
        return Ok(0.0);
    }
    // g is decreasing: a positive g(0) puts the root to the right of zero.
    let (mut lo, mut hi) = if g0 > 0.0 {
        (0.0, SHRINK / (mu - s.min))
    } else {
        (-SHRINK / (s.max - mu), 0.0)
    };
    let mut lambda = 0.0_f64;
    let mut g = g0;

    for _ in 0..MAX_ITER {
        if hi - lo <= 1e-14 * lambda.abs().max(1.0) {
            return Ok(lambda);
        }
        if g.abs() <= tol {
            // One more Newton step costs nothing and takes |g| to rounding
            // level, which keeps sum w - 1 = -lambda g / N tiny even when
            // |lambda| sd(y) is large.
            let polished = lambda - g / slope;
            if polished > lo && polished < hi {
                let (g2, _) = g_and_slope(y, mu, polished);
                if g2.abs() < g.abs() {
                    return Ok(polished);
                }
            }
            return Ok(lambda);
        }
        let mut next = lambda - g / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        lambda = next;
        (g, slope) = g_and_slope(y, mu, lambda);
        if g > 0.0 {
            lo = lambda;
        } else {
            hi = lambda;
        }
    }
    Err(Error::NonConvergence("lambda solver"))
}

/// Root of `g(lambda) = 0` in the admissible interval, by Newton's method
/// safeguarded with bisection.
pub fn solve_lambda(y: &[f64], mu: f64) -> Result<f64> {
    let s = describe(y)?;
    check_interior(mu, &s)?;
    solve_in_hull(y, mu, &s)
}

/// Profile weights `w_i = 1 / (N (1 + lambda (y_i - mu)))`.
pub fn el_weights(y: &[f64], mu: f64, lambda: f64) -> Result<ElWeights> {
    let s = describe(y)?;
    check_interior(mu, &s)?;
    let n = y.len() as f64;
    let weights = y
        .iter()
        .map(|&v| {
            let denom = 1.0 + lambda * (v - mu);
            if denom > 0.0 {
                Ok(1.0 / (n * denom))
            } else {
                Err(Error::Domain {
                    what: "lambda",
                    value: lambda,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ElWeights { weights })
}

fn log_ratio(y: &[f64], mu: f64, lambda: f64) -> f64 {
    let terms: Vec<f64> = y.iter().map(|v| (lambda * (v - mu)).ln_1p()).collect();
    (2.0 * pairwise_sum(&terms)).max(0.0)
}

/// Two-sided log empirical likelihood ratio `l(mu0)`.
///
/// Returns `+inf` when `mu0` is not strictly inside `(min y, max y)`, where
/// the empirical likelihood is zero.
pub fn el_ratio_statistic(y: &[f64], mu0: f64) -> Result<f64> {
    let s = describe(y)?;
    if HullStatus::classify(mu0, s.min, s.max) != HullStatus::Interior {
        return Ok(f64::INFINITY);
    }
    let lambda = solve_in_hull(y, mu0, &s)?;
    Ok(log_ratio(y, mu0, lambda))
}

/// One-sided statistic `l(mu0) * I(mean y >= mu0)` for the alternative
/// `mu > mu0`.
pub fn one_sided_el(y: &[f64], mu0: f64) -> Result<f64> {
    let s = describe(y)?;
    if s.mean <= mu0 {
        return Ok(0.0);
    }
    el_ratio_statistic(y, mu0)
}

/// `2 (n-1)(n+1) / (3 (p-1)(p+4)) * sum r^4`.
pub fn rescale_factor(stats: &PairCorrStats) -> f64 {
    let n = stats.n as f64;
    let p = stats.p as f64;
    2.0 * (n - 1.0) * (n + 1.0) / (3.0 * (p - 1.0) * (p + 4.0)) * stats.sum_r4
}

/// Empirical-likelihood test of complete independence on the squared
/// correlations summarised in `stats`.
pub fn el_independence(stats: &PairCorrStats) -> Result<ElResult> {
    const MU0: f64 = 1.0;
    let y = &stats.y_values;
    if y.len() < 2 {
        return Err(Error::Degenerate("fewer than two correlation pairs"));
    }
    if stats.min_y == stats.max_y {
        return Err(Error::Degenerate("all squared correlations equal"));
    }
    let hull_status = HullStatus::classify(MU0, stats.min_y, stats.max_y);
    let factor = rescale_factor(stats);

    let (lambda, ell) = if stats.mean_y < MU0 {
        (None, 0.0)
    } else if stats.mean_y == MU0 {
        (Some(0.0), 0.0)
    } else if hull_status == HullStatus::AtOrBelowLeft {
        (None, f64::INFINITY)
    } else {
        let s = Sample {
            min: stats.min_y,
            max: stats.max_y,
            mean: stats.mean_y,
        };
        let lambda = solve_in_hull(y, MU0, &s)?;
        (Some(lambda), log_ratio(y, MU0, lambda))
    };
    let ell_bar = if ell == 0.0 { 0.0 } else { factor * ell };

    Ok(ElResult {
        lambda,
        ell,
        ell_bar,
        rescale_factor: factor,
        mean_y: stats.mean_y,
        hull_status,
    })
}

/// Upper-tail probability of `Z^2 I(Z > 0)`: `1 - Phi(sqrt(ell))` for
/// positive `ell`, one at zero (the point mass), zero at `+inf`.
pub fn el_p_value(ell: f64) -> f64 {
    if ell == f64::INFINITY {
        0.0
    } else if ell > 0.0 {
        std_normal_sf(ell.sqrt())
    } else {
        1.0
    }
}
