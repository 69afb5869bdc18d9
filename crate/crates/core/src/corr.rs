//! Pearson correlations and the pairwise squared-correlation summary.
//!
//! Every test in this crate consumes the same [`PairCorrStats`]: the
//! `N = p(p-1)/2` squared sample correlations of an `n x p` data matrix,
//! together with the scaled values `y_ij = (n-1) r_ij^2` that have mean one
//! under independence.

use crate::error::{Error, Result};
use serde::Serialize;

/// An `n x p` observation matrix; rows are samples, columns are variables.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    n: usize,
    p: usize,
    values: Vec<f64>,
}

impl DataMatrix {
    /// Builds a matrix from row-major `values`.
    pub fn new(n: usize, p: usize, values: Vec<f64>) -> Result<Self> {
        if n < 3 || p < 2 {
            return Err(Error::InvalidDimensions { n, p });
        }
        if values.len() != n * p {
            return Err(Error::ShapeMismatch {
                expected: n * p,
                got: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: k / p,
                column: k % p,
            });
        }
        Ok(Self { n, p, values })
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let p = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(n * p);
        for row in rows {
            let row = row.as_ref();
            if row.len() != p {
                return Err(Error::ShapeMismatch {
                    expected: n * p,
                    got: n * row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(n, p, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Row-major entries.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, row: usize, column: usize) -> f64 {
        self.values[row * self.p + column]
    }

    pub fn column(&self, column: usize) -> Vec<f64> {
        (0..self.n).map(|k| self.get(k, column)).collect()
    }

    /// The `p x n` matrix with rows and columns exchanged.
    pub fn transposed(&self) -> Result<Self> {
        let mut values = Vec::with_capacity(self.values.len());
        for j in 0..self.p {
            values.extend((0..self.n).map(|k| self.get(k, j)));
        }
        Self::new(self.p, self.n, values)
    }
}

/// Summary of all `N = p(p-1)/2` squared pairwise correlations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCorrStats {
    pub n: usize,
    pub p: usize,
    pub n_pairs: usize,
    /// Sum of `r_ij^2` over `i < j`.
    pub sum_r2: f64,
    /// Sum of `r_ij^4` over `i < j`.
    pub sum_r4: f64,
    pub min_y: f64,
    pub max_y: f64,
    /// `(n-1) * sum_r2 / N`.
    pub mean_y: f64,
    /// `y_ij = (n-1) r_ij^2`, pairs enumerated as (0,1), (0,2), ..., (p-2,p-1).
    pub y_values: Vec<f64>,
    /// `(1/N) * sum (y_ij - 1)^2`.
    pub s2: f64,
}

impl PairCorrStats {
    /// Builds the summary directly from scaled squared correlations
    /// `y_ij = (n-1) r_ij^2`. Useful for synthetic inputs.
    pub fn from_y_values(n: usize, p: usize, y_values: Vec<f64>) -> Result<Self> {
        if n < 3 || p < 2 {
            return Err(Error::InvalidDimensions { n, p });
        }
        let n_pairs = p * (p - 1) / 2;
        if y_values.len() != n_pairs {
            return Err(Error::ShapeMismatch {
                expected: n_pairs,
                got: y_values.len(),
            });
        }
        let scale = (n - 1) as f64;
        if let Some(&bad) = y_values
            .iter()
            .find(|y| !y.is_finite() || **y < 0.0 || **y > scale)
        {
            return Err(Error::Domain {
                what: "y_ij",
                value: bad,
            });
        }
        let r2: Vec<f64> = y_values.iter().map(|y| y / scale).collect();
        Ok(Self::assemble(n, p, &r2, y_values))
    }

    fn assemble(n: usize, p: usize, r2: &[f64], y_values: Vec<f64>) -> Self {
        let n_pairs = r2.len();
        let sum_r2 = pairwise_sum(r2);
        let r4: Vec<f64> = r2.iter().map(|v| v * v).collect();
        let sum_r4 = pairwise_sum(&r4);
        let dev2: Vec<f64> = y_values.iter().map(|y| (y - 1.0) * (y - 1.0)).collect();
        let s2 = pairwise_sum(&dev2) / n_pairs as f64;
        let (min_y, max_y) = y_values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &y| {
                (lo.min(y), hi.max(y))
            });
        let mean_y = (n - 1) as f64 * sum_r2 / n_pairs as f64;
        Self {
            n,
            p,
            n_pairs,
            sum_r2,
            sum_r4,
            min_y,
            max_y,
            mean_y,
            y_values,
            s2,
        }
    }
}

/// Sums `values` by recursive halving; error grows as O(log n) rather than O(n).
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 16;
    if values.len() <= BLOCK {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

/// Centres `x` and scales it to unit Euclidean norm. `None` if `x` is
/// constant up to rounding.
fn standardize(x: &[f64]) -> Option<Vec<f64>> {
    let n = x.len() as f64;
    let mean = pairwise_sum(x) / n;
    let mut centred: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let sq: Vec<f64> = centred.iter().map(|c| c * c).collect();
    let ss = pairwise_sum(&sq);
    let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    // Rounding in the mean leaves residue of order eps*|x| in a constant column.
    let floor = 64.0 * f64::EPSILON * scale;
    if !(ss > n * floor * floor) {
        return None;
    }
    let inv = ss.sqrt().recip();
    centred.iter_mut().for_each(|c| *c *= inv);
    Some(centred)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0_f64; 4];
    let chunks_a = a.chunks_exact(4);
    let chunks_b = b.chunks_exact(4);
    let tail: f64 = chunks_a
        .remainder()
        .iter()
        .zip(chunks_b.remainder())
        .map(|(x, y)| x * y)
        .sum();
    for (ca, cb) in chunks_a.zip(chunks_b) {
        for k in 0..4 {
            acc[k] += ca[k] * cb[k];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// Pearson's sample correlation coefficient, clamped to `[-1, 1]`.
///
/// Fails with [`Error::DegenerateColumn`] (column 0 for `x`, 1 for `y`) if
/// either input is constant.
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::Degenerate("fewer than two observations"));
    }
    let zx = standardize(x).ok_or(Error::DegenerateColumn { column: 0 })?;
    let zy = standardize(y).ok_or(Error::DegenerateColumn { column: 1 })?;
    Ok(dot(&zx, &zy).clamp(-1.0, 1.0))
}

/// Computes every squared pairwise correlation of `data` and summarises them.
///
/// Columns are standardised once, so each `r_ij` is a single inner product.
pub fn pairwise_sq_corr(data: &DataMatrix) -> Result<PairCorrStats> {
    let (n, p) = (data.n(), data.p());
    let columns = (0..p)
        .map(|j| standardize(&data.column(j)).ok_or(Error::DegenerateColumn { column: j }))
        .collect::<Result<Vec<_>>>()?;

    let n_pairs = p * (p - 1) / 2;
    let mut r2 = Vec::with_capacity(n_pairs);
    for i in 0..p {
        for j in (i + 1)..p {
            let r = dot(&columns[i], &columns[j]).clamp(-1.0, 1.0);
            r2.push(r * r);
        }
    }
    let scale = (n - 1) as f64;
    let y_values = r2.iter().map(|v| scale * v).collect();
    Ok(PairCorrStats::assemble(n, p, &r2, y_values))
}
