//! Replicated size and power experiments.
//!
//! Replicate `r` of a cell draws its data from substreams keyed by
//! `(seed, r, row)` and applies all three tests to the same dataset.
//! Replicates are partitioned across a rayon pool of the requested size and
//! collected in index order, so results do not depend on the worker count.

use crate::classical::{
    chang_qi_decision, chang_qi_statistic, check_alpha, rescaled_el_decision, schott_decision,
    schott_statistic, Method, TestReport,
};
use crate::corr::{pairwise_sq_corr, pairwise_sum, pearson_r};
use crate::el::{el_independence, ElResult};
use crate::error::{Error, ReplicateFailure, Result};
use crate::scenario::{generate_replicate, Family, ScenarioSpec, Substream};
use crate::special::{null_moments, NullMoments};
use rayon::prelude::*;
use serde::Serialize;

/// Everything computed for one simulated dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicateOutcome {
    pub index: u32,
    pub el: ElResult,
    pub t_star: f64,
    pub t_c: f64,
    /// In [`Method::ALL`] order: rescaled EL, Chang-Qi, Schott.
    pub reports: [TestReport; 3],
}

impl ReplicateOutcome {
    pub fn rejects(&self) -> [bool; 3] {
        self.reports.map(|r| r.reject)
    }

    pub fn report(&self, method: Method) -> &TestReport {
        &self.reports[Method::ALL.iter().position(|m| *m == method).unwrap()]
    }
}

/// Empirical rejection rate of one method in one cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub scenario: ScenarioSpec,
    pub method: Method,
    pub alpha: f64,
    pub reps: u32,
    pub reject_rate: f64,
    pub mc_se: f64,
}

impl McEstimate {
    fn from_count(scenario: ScenarioSpec, method: Method, alpha: f64, reps: u32, hits: u32) -> Self {
        let rate = f64::from(hits) / f64::from(reps);
        Self {
            scenario,
            method,
            alpha,
            reps,
            reject_rate: rate,
            mc_se: (rate * (1.0 - rate) / f64::from(reps)).sqrt(),
        }
    }
}

/// Runs the three tests on replicate `index` of `spec`.
pub fn run_replicate_at(spec: &ScenarioSpec, alpha: f64, index: u32) -> Result<ReplicateOutcome> {
    let data = generate_replicate(spec, index)?;
    let stats = pairwise_sq_corr(&data)?;
    let el = el_independence(&stats)?;
    let t_star = schott_statistic(&stats);
    let t_c = chang_qi_statistic(t_star, stats.n, stats.p);
    let reports = [
        rescaled_el_decision(el.ell_bar, alpha)?,
        chang_qi_decision(t_c, stats.n, stats.p, alpha)?,
        schott_decision(t_star, alpha)?,
    ];
    Ok(ReplicateOutcome {
        index,
        el,
        t_star,
        t_c,
        reports,
    })
}

/// Runs the three tests on the dataset `generate(spec)`.
pub fn run_replicate(spec: &ScenarioSpec, alpha: f64) -> Result<ReplicateOutcome> {
    run_replicate_at(spec, alpha, 0)
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to start worker pool")
}

fn collect_replicates<T: Send>(
    reps: u32,
    workers: usize,
    f: impl Fn(u32) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let results: Vec<Result<T>> = pool(workers).install(|| (0..reps).into_par_iter().map(&f).collect());
    let mut ok = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (index, r) in (0u32..).zip(results) {
        match r {
            Ok(v) => ok.push(v),
            Err(error) => failures.push(ReplicateFailure { index, error }),
        }
    }
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(Error::Replicates(failures))
    }
}

/// All `reps` replicate outcomes of a cell, in index order.
pub fn simulate(
    spec: &ScenarioSpec,
    alpha: f64,
    reps: u32,
    workers: usize,
) -> Result<Vec<ReplicateOutcome>> {
    spec.validate()?;
    check_alpha(alpha)?;
    if reps == 0 {
        return Err(Error::Domain {
            what: "reps",
            value: 0.0,
        });
    }
    collect_replicates(reps, workers, |i| run_replicate_at(spec, alpha, i))
}

/// Rejection rates of the three methods, in [`Method::ALL`] order.
pub fn summarize(
    spec: &ScenarioSpec,
    alpha: f64,
    outcomes: &[ReplicateOutcome],
) -> [McEstimate; 3] {
    let reps = outcomes.len() as u32;
    let mut hits = [0u32; 3];
    for o in outcomes {
        for (h, r) in hits.iter_mut().zip(o.rejects()) {
            *h += u32::from(r);
        }
    }
    std::array::from_fn(|k| McEstimate::from_count(*spec, Method::ALL[k], alpha, reps, hits[k]))
}

/// Monte Carlo size or power of the three tests for one cell.
pub fn estimate(
    spec: &ScenarioSpec,
    alpha: f64,
    reps: u32,
    workers: usize,
) -> Result<[McEstimate; 3]> {
    let outcomes = simulate(spec, alpha, reps, workers)?;
    Ok(summarize(spec, alpha, &outcomes))
}

/// One `(n, p)` row: estimates for every `rho`, each in [`Method::ALL`] order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub p: usize,
    pub cells: Vec<McEstimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub family: Family,
    pub alpha: f64,
    pub reps: u32,
    pub seed: u64,
    pub rhos: Vec<f64>,
    pub rows: Vec<TableRow>,
}

/// The `(n, p)` grid and dependence levels of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub ns: Vec<usize>,
    pub ps: Vec<usize>,
    pub rhos: Vec<f64>,
}

impl Grid {
    /// Sample sizes, dimensions and `rho` values used by the published tables.
    pub fn standard() -> Self {
        Self {
            ns: vec![20, 50, 100],
            ps: vec![10, 20, 50, 100],
            rhos: vec![0.0, 0.02, 0.05],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSettings {
    pub alpha: f64,
    pub reps: u32,
    pub seed: u64,
    pub workers: usize,
}

/// Size/power table over `grid`. Every cell uses `settings.seed`, so cells
/// that differ only in `rho` share their underlying draws.
pub fn reproduce_table(family: Family, grid: &Grid, settings: &McSettings) -> Result<Table> {
    if grid.ns.is_empty() || grid.ps.is_empty() || grid.rhos.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let McSettings {
        alpha,
        reps,
        seed,
        workers,
    } = *settings;
    let mut rows = Vec::with_capacity(grid.ns.len() * grid.ps.len());
    for &n in &grid.ns {
        for &p in &grid.ps {
            let mut cells = Vec::with_capacity(3 * grid.rhos.len());
            for &rho in &grid.rhos {
                let spec = ScenarioSpec::new(family, n, p, rho, seed)?;
                cells.extend(estimate(&spec, alpha, reps, workers)?);
            }
            rows.push(TableRow { n, p, cells });
        }
    }
    Ok(Table {
        family,
        alpha,
        reps,
        seed,
        rhos: grid.rhos.clone(),
        rows,
    })
}

/// Observed versus exact value of one null moment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentComparison {
    pub name: &'static str,
    pub expected: f64,
    pub observed: f64,
    pub se: f64,
    pub z: f64,
}

impl MomentComparison {
    fn new(name: &'static str, expected: f64, observed: f64, se: f64) -> Self {
        Self {
            name,
            expected,
            observed,
            se,
            z: (observed - expected) / se,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentCheck {
    pub n: usize,
    pub reps: u32,
    pub seed: u64,
    pub exact: NullMoments,
    pub comparisons: Vec<MomentComparison>,
}

impl MomentCheck {
    pub fn max_abs_z(&self) -> f64 {
        self.comparisons.iter().fold(0.0, |m, c| m.max(c.z.abs()))
    }
}

/// `reps` null draws of `r^2` from two independent normal columns of length `n`.
pub fn null_r2_draws(n: usize, reps: u32, seed: u64, workers: usize) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::InvalidDimensions { n, p: 2 });
    }
    collect_replicates(reps, workers, |i| {
        let mut rng = Substream::new(seed, i, 0);
        let x: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let r = pearson_r(&x, &y)?;
        Ok(r * r)
    })
}

/// Compares simulated `E r^2`, `E r^4` and `Var((n-1) r^2)` with their
/// exact null values; standard errors use the exact higher moments.
pub fn moment_check(n: usize, reps: u32, seed: u64, workers: usize) -> Result<MomentCheck> {
    let exact = null_moments(n)?;
    if reps < 2 {
        return Err(Error::Domain {
            what: "reps",
            value: f64::from(reps),
        });
    }
    let r2 = null_r2_draws(n, reps, seed, workers)?;
    let m = f64::from(reps);
    let scale = (n - 1) as f64;

    let mean_r2 = pairwise_sum(&r2) / m;
    let r4: Vec<f64> = r2.iter().map(|v| v * v).collect();
    let mean_r4 = pairwise_sum(&r4) / m;
    let y: Vec<f64> = r2.iter().map(|v| scale * v).collect();
    let mean_y = pairwise_sum(&y) / m;
    let dev2: Vec<f64> = y.iter().map(|v| (v - mean_y).powi(2)).collect();
    let var_y = pairwise_sum(&dev2) / (m - 1.0);

    let var_r2 = exact.e_r4 - exact.e_r2.powi(2);
    let var_r4 = exact.e_r8 - exact.e_r4.powi(2);
    let mu4_y = exact.m4 * scale.powi(4);
    let var_of_var = (mu4_y - exact.sigma_n2.powi(2)) / m;

    Ok(MomentCheck {
        n,
        reps,
        seed,
        exact,
        comparisons: vec![
            MomentComparison::new("E r^2", exact.e_r2, mean_r2, (var_r2 / m).sqrt()),
            MomentComparison::new("E r^4", exact.e_r4, mean_r4, (var_r4 / m).sqrt()),
            MomentComparison::new("Var (n-1)r^2", exact.sigma_n2, var_y, var_of_var.sqrt()),
        ],
    })
}
