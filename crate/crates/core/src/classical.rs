//! Schott's normal-approximation test and Chang and Qi's chi-square
//! adjusted test, plus the common [`TestReport`] shape shared with the
//! rescaled empirical-likelihood test.

use crate::corr::PairCorrStats;
use crate::el::el_p_value;
use crate::error::{Error, Result};
use crate::special::{chisq_quantile, chisq_upper_tail, std_normal_quantile, std_normal_sf};
use serde::Serialize;
use std::fmt;

/// Relative slack on `p <= alpha`. Rejection regions are closed, and a
/// statistic sitting exactly on a critical value must not flip on rounding.
pub const BOUNDARY_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    RescaledEl,
    ChangQi,
    Schott,
}

impl Method {
    /// Column order used by the simulation tables.
    pub const ALL: [Method; 3] = [Method::RescaledEl, Method::ChangQi, Method::Schott];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::RescaledEl => "rescaled-el",
            Method::ChangQi => "chang-qi",
            Method::Schott => "schott",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Statistic, p-value and decision for one test at level `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestReport {
    pub method: Method,
    pub statistic: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub reject: bool,
}

impl TestReport {
    fn new(method: Method, statistic: f64, p_value: f64, alpha: f64) -> Self {
        Self {
            method,
            statistic,
            p_value,
            alpha,
            reject: p_value <= alpha * (1.0 + BOUNDARY_RTOL),
        }
    }
}

pub fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha > 0.0 && alpha < 0.5 {
        Ok(alpha)
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

fn n_pairs(p: usize) -> f64 {
    (p * (p - 1) / 2) as f64
}

/// `sigma_np^2 = p(p-1)(n-2) / ((n-1)^2 (n+1))`.
pub fn schott_variance(n: usize, p: usize) -> f64 {
    let (n, p) = (n as f64, p as f64);
    p * (p - 1.0) * (n - 2.0) / ((n - 1.0).powi(2) * (n + 1.0))
}

/// Schott's standardized statistic `t* = (t_np - p(p-1)/(2(n-1))) / sigma_np`.
pub fn schott_statistic(stats: &PairCorrStats) -> f64 {
    let centre = n_pairs(stats.p) / (stats.n as f64 - 1.0);
    (stats.sum_r2 - centre) / schott_variance(stats.n, stats.p).sqrt()
}

/// Upper-tail normal decision for `t*`.
pub fn schott_decision(t_star: f64, alpha: f64) -> Result<TestReport> {
    let alpha = check_alpha(alpha)?;
    Ok(TestReport::new(
        Method::Schott,
        t_star,
        std_normal_sf(t_star),
        alpha,
    ))
}

/// Chang and Qi's adjusted statistic `sqrt(p(p-1)) t* + p(p-1)/2`.
pub fn chang_qi_statistic(t_star: f64, _n: usize, p: usize) -> f64 {
    let pp = (p * (p - 1)) as f64;
    pp.sqrt() * t_star + 0.5 * pp
}

/// Decision for `t_c` against a chi-square with `p(p-1)/2` degrees of freedom.
pub fn chang_qi_decision(t_c: f64, _n: usize, p: usize, alpha: f64) -> Result<TestReport> {
    let alpha = check_alpha(alpha)?;
    let df = (p * p.saturating_sub(1) / 2) as u64;
    let p_value = chisq_upper_tail(t_c, df)?;
    Ok(TestReport::new(Method::ChangQi, t_c, p_value, alpha))
}

/// Decision for the rescaled empirical-likelihood statistic against
/// `Z^2 I(Z > 0)`.
pub fn rescaled_el_decision(ell_bar: f64, alpha: f64) -> Result<TestReport> {
    let alpha = check_alpha(alpha)?;
    Ok(TestReport::new(
        Method::RescaledEl,
        ell_bar,
        el_p_value(ell_bar),
        alpha,
    ))
}

/// Schott's rejection region written on `t_np = sum r^2`:
/// `t_np >= p(p-1)/(2(n-1)) + z_alpha sigma_np`.
pub fn schott_sum_threshold(n: usize, p: usize, alpha: f64) -> Result<f64> {
    let z = std_normal_quantile(check_alpha(alpha)?)?;
    Ok(n_pairs(p) / (n as f64 - 1.0) + z * schott_variance(n, p).sqrt())
}

/// Chang and Qi's rejection region written on `t_np = sum r^2`:
///
/// ```text
/// t_np >= N/(n-1) (1 - sqrt((n-2)/(n+1))) + chi2_N(alpha) sqrt((n-2)/((n-1)^2 (n+1)))
/// ```
///
/// with `N = p(p-1)/2`. Algebraically identical to `t_c >= chi2_N(alpha)`.
pub fn chang_qi_sum_threshold(n: usize, p: usize, alpha: f64) -> Result<f64> {
    let big_n = n_pairs(p);
    let crit = chisq_quantile(check_alpha(alpha)?, big_n as u64)?;
    let nf = n as f64;
    let shrink = ((nf - 2.0) / (nf + 1.0)).sqrt();
    Ok(big_n / (nf - 1.0) * (1.0 - shrink) + crit * shrink / (nf - 1.0))
}
