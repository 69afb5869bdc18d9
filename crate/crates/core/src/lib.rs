//! Tests for complete independence of the components of a high-dimensional
//! random vector, built on the `p(p-1)/2` squared sample correlations:
//!
//! * the rescaled one-sided empirical-likelihood statistic ([`el`]),
//! * Schott's standardized sum of squared correlations and Chang and Qi's
//!   chi-square adjustment of it ([`classical`]),
//!
//! together with the distribution functions they need ([`special`]), seeded
//! data generators ([`scenario`]) and a Monte Carlo harness for size and
//! power tables ([`harness`]).
//!
//! ```
//! use elindep_core::{generate, pairwise_sq_corr, el_independence, Family, ScenarioSpec};
//!
//! let spec = ScenarioSpec::new(Family::Normal, 50, 20, 0.0, 42).unwrap();
//! let stats = pairwise_sq_corr(&generate(&spec).unwrap()).unwrap();
//! let el = el_independence(&stats).unwrap();
//! assert!(el.ell >= 0.0);
//! ```

pub mod classical;
pub mod corr;
pub mod el;
mod error;
pub mod harness;
pub mod scenario;
pub mod special;
mod table;

pub use classical::{
    chang_qi_decision, chang_qi_statistic, rescaled_el_decision, schott_decision,
    schott_statistic, Method, TestReport,
};
pub use corr::{pairwise_sq_corr, pearson_r, DataMatrix, PairCorrStats};
pub use el::{
    el_independence, el_p_value, el_ratio_statistic, el_weights, one_sided_el, solve_lambda,
    ElResult, ElWeights, HullStatus,
};
pub use error::{Error, ReplicateFailure, Result};
pub use harness::{
    estimate, moment_check, reproduce_table, run_replicate, simulate, summarize, Grid, McEstimate,
    McSettings, MomentCheck, ReplicateOutcome, Table, TableRow,
};
pub use scenario::{generate, generate_replicate, substream, Family, ScenarioSpec, Substream};
pub use special::{
    chisq_quantile, chisq_upper_tail, expected_r2, hyp2f1_11, null_moments, std_normal_cdf,
    std_normal_quantile, NullMoments,
};

/// Runs all three tests on a data matrix at level `alpha`, in
/// [`Method::ALL`] order.
pub fn independence_tests(data: &DataMatrix, alpha: f64) -> Result<[TestReport; 3]> {
    let stats = pairwise_sq_corr(data)?;
    let el = el_independence(&stats)?;
    let t_star = schott_statistic(&stats);
    let t_c = chang_qi_statistic(t_star, stats.n, stats.p);
    Ok([
        rescaled_el_decision(el.ell_bar, alpha)?,
        chang_qi_decision(t_c, stats.n, stats.p, alpha)?,
        schott_decision(t_star, alpha)?,
    ])
}
