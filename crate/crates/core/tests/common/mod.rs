#![allow(dead_code)]

pub mod el_oracle;

/// Deterministic uniforms on (0, 1) for test inputs.
pub struct Uniforms(elindep_core::Substream);

impl Uniforms {
    pub fn new(seed: u64) -> Self {
        Self(elindep_core::substream(seed, u32::MAX, u32::MAX))
    }

    pub fn next(&mut self) -> f64 {
        self.0.uniform()
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next()
    }

    pub fn index(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        lo + (self.next() * (hi_inclusive - lo + 1) as f64) as usize
    }
}

/// Regularized upper gamma Q(k, x/2) for an even number of degrees of
/// freedom `2k`, as a finite Poisson sum accumulated in log space.
pub fn chisq_even_upper_tail(x: f64, df: u64) -> f64 {
    assert!(df % 2 == 0 && df > 0);
    let h = x / 2.0;
    let mut log_term = -h;
    let mut terms = Vec::with_capacity((df / 2) as usize);
    for j in 0..df / 2 {
        if j > 0 {
            log_term += h.ln() - (j as f64).ln();
        }
        terms.push(log_term);
    }
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - top).exp()).sum();
    (top + sum.ln()).exp()
}

/// Upper normal tail from the Taylor series of erf for |x| < 3 and Laplace's
/// continued fraction for the Mills ratio beyond.
pub fn normal_sf_series(x: f64) -> f64 {
    if x < 0.0 {
        return 1.0 - normal_sf_series(-x);
    }
    let phi = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    if x < 3.0 {
        // Phi(x) - 1/2 = phi(x) * sum x^(2k+1) / (1*3*...*(2k+1))
        let mut term = x;
        let mut sum = x;
        let mut k = 0.0;
        while term > 1e-18 * sum {
            k += 1.0;
            term *= x * x / (2.0 * k + 1.0);
            sum += term;
        }
        0.5 - phi * sum
    } else {
        let mut cf = 0.0;
        for k in (1..2000).rev() {
            cf = k as f64 / (x + cf);
        }
        phi / (x + cf)
    }
}
