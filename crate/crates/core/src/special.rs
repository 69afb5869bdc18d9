//! Distribution functions and exact null moments of squared correlations.

use crate::error::{Error, Result};
use serde::Serialize;
use libm::erfc;
use statrs::function::gamma::{gamma_lr, gamma_ur, ln_gamma};
use std::f64::consts::FRAC_1_SQRT_2;

/// Standard normal CDF.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

/// Standard normal upper tail `1 - Phi(x)`, without cancellation for large `x`.
pub fn std_normal_sf(x: f64) -> f64 {
    0.5 * erfc(x * FRAC_1_SQRT_2)
}

// Wichura's AS241 (PPND16) coefficients, highest degree last.
const CENTRAL_NUM: [f64; 8] = [
    3.387_132_872_796_366_608,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
const CENTRAL_DEN: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561e3,
];
const NEAR_NUM: [f64; 8] = [
    1.423_437_110_749_683_577_34,
    4.630_337_846_156_545_295_9,
    5.769_497_221_460_691_405_5,
    3.647_848_324_763_204_605_04,
    1.270_458_252_452_368_382_58,
    2.417_807_251_774_506_117_7e-1,
    2.272_384_498_926_918_458_33e-2,
    7.745_450_142_783_414_076_4e-4,
];
const NEAR_DEN: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_87,
    1.676_384_830_183_803_849_4,
    6.897_673_349_851_000_045_5e-1,
    1.481_039_764_274_800_745_9e-1,
    1.519_866_656_361_645_719_66e-2,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_24e-9,
];
const TAIL_NUM: [f64; 8] = [
    6.657_904_643_501_103_777_2,
    5.463_784_911_164_114_369_9,
    1.784_826_539_917_291_335_8,
    2.965_605_718_285_048_912_3e-1,
    2.653_218_952_657_612_309_3e-2,
    1.242_660_947_388_078_438_6e-3,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const TAIL_DEN: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_376_9e-1,
    1.369_298_809_227_358_053_1e-1,
    1.487_536_129_085_061_485_25e-2,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_64e-15,
];

fn horner(coeffs: &[f64; 8], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Lower-tail standard normal quantile `Phi^{-1}(prob)` (AS241).
pub(crate) fn normal_ppf(prob: f64) -> f64 {
    let q = prob - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180_625 - q * q;
        return q * horner(&CENTRAL_NUM, r) / horner(&CENTRAL_DEN, r);
    }
    let tail = if q < 0.0 { prob } else { 1.0 - prob };
    let mut r = (-tail.ln()).sqrt();
    let x = if r <= 5.0 {
        r -= 1.6;
        horner(&NEAR_NUM, r) / horner(&NEAR_DEN, r)
    } else {
        r -= 5.0;
        horner(&TAIL_NUM, r) / horner(&TAIL_DEN, r)
    };
    if q < 0.0 {
        -x
    } else {
        x
    }
}

/// Upper-alpha critical value `z_alpha`, i.e. `P(Z >= z_alpha) = alpha`.
pub fn std_normal_quantile(alpha_upper: f64) -> Result<f64> {
    if !(alpha_upper > 0.0 && alpha_upper < 1.0) {
        return Err(Error::Domain {
            what: "alpha_upper",
            value: alpha_upper,
        });
    }
    Ok(-normal_ppf(alpha_upper))
}

fn check_df(df: u64) -> Result<f64> {
    if df == 0 {
        return Err(Error::Domain {
            what: "df",
            value: 0.0,
        });
    }
    Ok(df as f64)
}

/// `P(chi2_df >= x)` through the regularized upper incomplete gamma function.
pub fn chisq_upper_tail(x: f64, df: u64) -> Result<f64> {
    let k = check_df(df)?;
    if x.is_nan() {
        return Err(Error::Domain {
            what: "x",
            value: x,
        });
    }
    if x <= 0.0 {
        return Ok(1.0);
    }
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    Ok(gamma_ur(0.5 * k, 0.5 * x))
}

fn chisq_lower_tail(x: f64, k: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        gamma_lr(0.5 * k, 0.5 * x)
    }
}

fn chisq_ln_pdf(x: f64, k: f64) -> f64 {
    let h = 0.5 * k;
    (h - 1.0) * x.ln() - 0.5 * x - h * std::f64::consts::LN_2 - ln_gamma(h)
}

/// Upper-alpha critical value `chi2_df(alpha)`: `P(chi2_df >= c) = alpha`.
///
/// Wilson-Hilferty starting point refined by bracketed Newton iteration.
pub fn chisq_quantile(alpha_upper: f64, df: u64) -> Result<f64> {
    let k = check_df(df)?;
    let z = std_normal_quantile(alpha_upper)?;

    // Solve on whichever tail is smaller to keep relative accuracy.
    let use_upper = alpha_upper < 0.5;
    let target = if use_upper { alpha_upper } else { 1.0 - alpha_upper };
    let tail = |x: f64| {
        if use_upper {
            chisq_upper_tail(x, df).unwrap_or(f64::NAN)
        } else {
            chisq_lower_tail(x, k)
        }
    };
    // f(x) = tail(x) - target is decreasing for the upper tail, increasing for the lower.
    let sign = if use_upper { -1.0 } else { 1.0 };

    let c = 2.0 / (9.0 * k);
    let mut x = (k * (1.0 - c + z * c.sqrt()).powi(3)).max(f64::MIN_POSITIVE);
    let (mut lo, mut hi) = (0.0_f64, f64::INFINITY);

    for _ in 0..200 {
        let f = tail(x) - target;
        if f.abs() <= 1e-15 * target {
            return Ok(x);
        }
        if sign * f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let slope = sign * chisq_ln_pdf(x, k).exp();
        let mut next = x - f / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * x.max(1.0) };
        }
        if (next - x).abs() <= 1e-15 * x.abs() {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NonConvergence("chi-square quantile"))
}

/// Gauss hypergeometric `2F1(1, 1; n/2 + 1; rho2)` by direct series.
pub fn hyp2f1_11(n: usize, rho2: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidDimensions { n, p: 2 });
    }
    hyp2f1_11_c(0.5 * n as f64 + 1.0, rho2)
}

/// `2F1(1, 1; c; rho2)` for `c >= 1`.
///
/// Terms are positive with ratio `(k+1) rho2 / (c+k) <= rho2`, so the
/// remainder after term `t` is at most `t * rho2 / (1 - rho2)`.
fn hyp2f1_11_c(c: f64, rho2: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&rho2) {
        return Err(Error::Domain {
            what: "rho^2",
            value: rho2,
        });
    }
    const MAX_TERMS: usize = 100_000;
    const TOL: f64 = 1e-12;
    let tail_factor = rho2 / (1.0 - rho2);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        if term * tail_factor <= TOL * sum {
            return Ok(sum);
        }
        let kf = k as f64;
        term *= (kf + 1.0) * rho2 / (c + kf);
        sum += term;
    }
    Err(Error::NonConvergence("2F1 series"))
}

/// `E(r^2)` for the sample correlation of `n` bivariate normal draws with
/// population correlation `rho`:
///
/// ```text
/// 1 - (n-2)/(n-1) (1 - rho^2) 2F1(1, 1; (n+1)/2; rho^2)
/// ```
///
/// The hypergeometric parameter is `m/2 + 1` with `m = n - 1` degrees of
/// freedom, not the sample size.
pub fn expected_r2(n: usize, rho: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidDimensions { n, p: 2 });
    }
    if !(rho > -1.0 && rho < 1.0) {
        return Err(Error::Domain {
            what: "rho",
            value: rho,
        });
    }
    let rho2 = rho * rho;
    let nf = n as f64;
    let f = hyp2f1_11_c(0.5 * (nf + 1.0), rho2)?;
    Ok(1.0 - (nf - 2.0) / (nf - 1.0) * (1.0 - rho2) * f)
}

/// Exact moments of `r^2` under independence of two normal columns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullMoments {
    pub n: usize,
    pub e_r2: f64,
    pub e_r4: f64,
    pub e_r6: f64,
    pub e_r8: f64,
    /// Variance of `(n-1) r^2`: `2(n-2)/(n+1)`.
    pub sigma_n2: f64,
    /// Fourth central moment `E(r^2 - 1/(n-1))^4`.
    pub m4: f64,
}

pub fn null_moments(n: usize) -> Result<NullMoments> {
    if n < 3 {
        return Err(Error::InvalidDimensions { n, p: 2 });
    }
    let nf = n as f64;
    let a = nf - 1.0;
    let e_r2 = 1.0 / a;
    let e_r4 = 3.0 / (a * (nf + 1.0));
    let e_r6 = 15.0 / (a * (nf + 1.0) * (nf + 3.0));
    let e_r8 = 105.0 / (a * (nf + 1.0) * (nf + 3.0) * (nf + 5.0));
    let m4 = e_r8 - 4.0 * e_r6 / a + 6.0 * e_r4 / a.powi(2) - 4.0 * e_r2 / a.powi(3)
        + 1.0 / a.powi(4);
    Ok(NullMoments {
        n,
        e_r2,
        e_r4,
        e_r6,
        e_r8,
        sigma_n2: 2.0 * (nf - 2.0) / (nf + 1.0),
        m4,
    })
}

impl NullMoments {
    /// `E(S_n^2 - sigma_n^2)^2 = (m4 (n-1)^4 - sigma_n^4) / N` for `N = p(p-1)/2`
    /// pairwise-independent squared correlations.
    pub fn s2_mean_square_error(&self, p: usize) -> f64 {
        let n_pairs = (p * (p - 1) / 2) as f64;
        (self.m4 * ((self.n - 1) as f64).powi(4) - self.sigma_n2.powi(2)) / n_pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_symmetry() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
        for &x in &[0.1, 1.0, 2.0, 3.7, 6.0] {
            assert!((std_normal_cdf(-x) - (1.0 - std_normal_cdf(x))).abs() < 1e-15);
            assert_eq!(std_normal_sf(x), std_normal_cdf(-x));
        }
    }

    #[test]
    fn quantile_domain() {
        assert!(std_normal_quantile(0.0).is_err());
        assert!(std_normal_quantile(1.0).is_err());
        assert!(std_normal_quantile(f64::NAN).is_err());
        assert_eq!(std_normal_quantile(0.5).unwrap(), 0.0);
    }

    #[test]
    fn quantile_tails_are_antisymmetric() {
        for &a in &[1e-300, 1e-20, 1e-5, 0.01, 0.2, 0.49] {
            let hi = std_normal_quantile(a).unwrap();
            assert!(hi > 0.0);
            if a > 1e-10 {
                let lo = std_normal_quantile(1.0 - a).unwrap();
                assert!((hi + lo).abs() < 1e-9 * hi.abs().max(1.0), "{a}");
            }
        }
    }

    #[test]
    fn chisq_edges() {
        assert_eq!(chisq_upper_tail(0.0, 7).unwrap(), 1.0);
        assert_eq!(chisq_upper_tail(-3.0, 7).unwrap(), 1.0);
        assert_eq!(chisq_upper_tail(f64::INFINITY, 7).unwrap(), 0.0);
        assert!(chisq_upper_tail(1.0, 0).is_err());
        assert!(chisq_quantile(0.05, 0).is_err());
        assert!(chisq_quantile(1.5, 3).is_err());
    }

    #[test]
    fn chisq_df2_is_exponential() {
        for &x in &[0.1, 1.0, 5.0, 40.0] {
            let q = chisq_upper_tail(x, 2).unwrap();
            assert!((q / (-0.5 * x).exp() - 1.0).abs() < 1e-12);
        }
        let c = chisq_quantile(0.05, 2).unwrap();
        assert!((c - (-2.0 * 0.05_f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn chisq_quantile_lower_half() {
        for &df in &[1_u64, 3, 40, 4950] {
            for &a in &[0.5, 0.7, 0.99] {
                let c = chisq_quantile(a, df).unwrap();
                let back = chisq_upper_tail(c, df).unwrap();
                assert!((back - a).abs() < 1e-8, "df={df} a={a} back={back}");
            }
        }
    }

    #[test]
    fn hyp2f1_special_values() {
        assert_eq!(hyp2f1_11(10, 0.0).unwrap(), 1.0);
        assert!(hyp2f1_11(10, 1.0).is_err());
        assert!(hyp2f1_11(10, -0.1).is_err());
        assert!(hyp2f1_11(2, 0.1).is_err());
        // c = 3, where 2F1(1,1;3;z) = 2((1-z) ln(1-z) + z) / z^2
        let v = hyp2f1_11(4, 0.5).unwrap();
        let z: f64 = 0.5;
        let closed = 2.0 * ((1.0 - z) * (1.0 - z).ln() + z) / (z * z);
        assert!((v - closed).abs() < 1e-11, "{v} vs {closed}");
    }

    #[test]
    fn expected_r2_null_value() {
        let v = expected_r2(20, 0.0).unwrap();
        assert!((v - 1.0 / 19.0).abs() < 1e-15);
        assert!(expected_r2(20, 1.0).is_err());
        assert_eq!(
            expected_r2(20, 0.3).unwrap(),
            expected_r2(20, -0.3).unwrap()
        );
        assert!(expected_r2(20, 0.5).unwrap() > 1.0 / 19.0);
    }

    #[test]
    fn null_moment_values() {
        let m = null_moments(20).unwrap();
        assert!((m.sigma_n2 - 12.0 / 7.0).abs() < 1e-15);
        assert!((m.e_r4 - 3.0 / 399.0).abs() < 1e-17);
        assert!(m.e_r2 > m.e_r4 && m.e_r4 > m.e_r6 && m.e_r6 > m.e_r8 && m.e_r8 > 0.0);
        let m200 = null_moments(200).unwrap();
        assert!((m200.sigma_n2 - 2.0 * 198.0 / 201.0).abs() < 1e-15);
        assert!(null_moments(2).is_err());
        assert!(null_moments(3).is_ok());
    }
}
