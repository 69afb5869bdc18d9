#![no_main]

use elindep_cli::parse_csv;
use elindep_core::independence_tests;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    for transpose in [false, true] {
        let Ok(parsed) = parse_csv(data, transpose) else {
            continue;
        };
        let m = &parsed.matrix;
        assert_eq!(parsed.labels.len(), m.p());
        assert!(m.values().iter().all(|v| v.is_finite()));
        if let Ok(reports) = independence_tests(m, 0.05) {
            for r in reports {
                assert!((0.0..=1.0).contains(&r.p_value), "{r:?}");
                assert!(!r.statistic.is_nan());
            }
        }
    }
});
