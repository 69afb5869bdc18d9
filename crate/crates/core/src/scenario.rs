//! Seeded data generators for the five simulation families.
//!
//! Every family has independent components at `rho = 0` and equicorrelated
//! components (correlation `rho` off the diagonal) for `rho > 0`, except
//! `Sum`, whose small exponential perturbation slightly dilutes `rho`.
//!
//! Randomness for row `k` of replicate `r` comes only from
//! [`Substream::new`]`(seed, r, k)`, so a dataset is a pure function of its
//! spec and replicate index, independent of thread scheduling.

use crate::corr::DataMatrix;
use crate::error::{Error, Result};
use crate::special::normal_ppf;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Counter-based random stream keyed by `(seed, replicate, row)`.
///
/// The seed keys a ChaCha8 generator and `(replicate, row)` selects one of
/// its 2^64 independent streams.
#[derive(Debug, Clone)]
pub struct Substream {
    rng: ChaCha8Rng,
}

impl Substream {
    pub fn new(seed: u64, replicate: u32, row: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream((u64::from(replicate) << 32) | u64::from(row));
        Self { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest);
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    pub fn uniform(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        ((self.next_u64() >> 11) as f64 + 0.5) * SCALE
    }

    /// Standard normal by inversion.
    pub fn normal(&mut self) -> f64 {
        normal_ppf(self.uniform())
    }

    /// Unit exponential by inversion.
    pub fn exponential(&mut self) -> f64 {
        -(-self.uniform()).ln_1p()
    }
}

/// Keyed substream for `(seed, replicate, row)`.
pub fn substream(seed: u64, replicate: u32, row: u32) -> Substream {
    Substream::new(seed, replicate, row)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Multivariate normal, mean zero, covariance `Gamma_rho`.
    Normal,
    /// `c Y0 + Yi` with `Y ~ U(-1, 1)` and `c = sqrt(rho / (1 - rho))`.
    Uniform,
    /// `c Y0 + Yi` with unit exponential `Y`.
    Exponential,
    /// Per row: 90% `N(1, Gamma_rho)`, 10% i.i.d. unit exponentials.
    Mixture,
    /// `U + 0.01 V`, `U ~ N(0, Gamma_rho)`, `V` i.i.d. unit exponentials.
    Sum,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Normal,
        Family::Uniform,
        Family::Exponential,
        Family::Mixture,
        Family::Sum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Normal => "normal",
            Family::Uniform => "uniform",
            Family::Exponential => "exponential",
            Family::Mixture => "mixture",
            Family::Sum => "sum",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFamily(pub String);

impl fmt::Display for UnknownFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown family '{}' (expected normal, uniform, exponential, mixture or sum)",
            self.0
        )
    }
}

impl std::error::Error for UnknownFamily {}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioSpec {
    pub family: Family,
    pub n: usize,
    pub p: usize,
    pub rho: f64,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn new(family: Family, n: usize, p: usize, rho: f64, seed: u64) -> Result<Self> {
        let spec = Self {
            family,
            n,
            p,
            rho,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 || self.p < 2 {
            return Err(Error::InvalidDimensions {
                n: self.n,
                p: self.p,
            });
        }
        if !(self.rho >= 0.0 && self.rho < 1.0) {
            return Err(Error::Domain {
                what: "rho",
                value: self.rho,
            });
        }
        if u32::try_from(self.n).is_err() {
            return Err(Error::Domain {
                what: "n",
                value: self.n as f64,
            });
        }
        Ok(())
    }
}

/// Writes one equicorrelated normal row: `sqrt(rho) Z0 + sqrt(1-rho) Zi`.
fn normal_row(rng: &mut Substream, rho: f64, shift: f64, row: &mut [f64]) {
    let common = rho.sqrt() * rng.normal();
    let own = (1.0 - rho).sqrt();
    for x in row.iter_mut() {
        *x = shift + common + own * rng.normal();
    }
}

fn factor_row(
    rng: &mut Substream,
    rho: f64,
    row: &mut [f64],
    mut draw: impl FnMut(&mut Substream) -> f64,
) {
    let c = (rho / (1.0 - rho)).sqrt();
    let common = c * draw(rng);
    for x in row.iter_mut() {
        *x = common + draw(rng);
    }
}

fn fill_row(family: Family, rho: f64, rng: &mut Substream, row: &mut [f64]) {
    match family {
        Family::Normal => normal_row(rng, rho, 0.0, row),
        Family::Uniform => factor_row(rng, rho, row, |r| 2.0 * r.uniform() - 1.0),
        Family::Exponential => factor_row(rng, rho, row, Substream::exponential),
        Family::Mixture => {
            if rng.uniform() < 0.9 {
                normal_row(rng, rho, 1.0, row);
            } else {
                row.iter_mut().for_each(|x| *x = rng.exponential());
            }
        }
        Family::Sum => {
            normal_row(rng, rho, 0.0, row);
            row.iter_mut().for_each(|x| *x += 0.01 * rng.exponential());
        }
    }
}

/// Dataset for replicate `replicate` of `spec`.
pub fn generate_replicate(spec: &ScenarioSpec, replicate: u32) -> Result<DataMatrix> {
    spec.validate()?;
    let (n, p) = (spec.n, spec.p);
    let mut values = vec![0.0; n * p];
    for (k, row) in values.chunks_exact_mut(p).enumerate() {
        let mut rng = Substream::new(spec.seed, replicate, k as u32);
        fill_row(spec.family, spec.rho, &mut rng, row);
    }
    DataMatrix::new(n, p, values)
}

/// Dataset for `spec` (replicate 0).
pub fn generate(spec: &ScenarioSpec) -> Result<DataMatrix> {
    generate_replicate(spec, 0)
}
