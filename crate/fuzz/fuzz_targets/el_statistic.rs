#![no_main]

use elindep_core::{el_independence, el_ratio_statistic, PairCorrStats};
use libfuzzer_sys::fuzz_target;

// Input: two header bytes for n and p, then little-endian f64 y values.
fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let n = 3 + usize::from(data[0]);
    let p = 2 + usize::from(data[1] % 16);
    let y: Vec<f64> = data[2..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();

    if let Ok(stats) = PairCorrStats::from_y_values(n, p, y.clone()) {
        if let Ok(el) = el_independence(&stats) {
            assert!(el.ell >= 0.0 && el.ell_bar >= 0.0, "{el:?}");
        }
    }
    if y.len() >= 2 && y.iter().all(|v| v.is_finite() && v.abs() < 1e100) {
        // the rounded mean can land on the hull boundary, where the
        // statistic is infinite by definition
        let mu = y.iter().sum::<f64>() / y.len() as f64;
        let lo = y.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if let Ok(ell) = el_ratio_statistic(&y, mu) {
            assert!(ell >= 0.0, "{ell}");
            assert!(ell.is_finite() || mu <= lo || mu >= hi, "{ell}");
        }
    }
});
