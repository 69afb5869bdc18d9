mod common;

use elindep_core::{
    generate_replicate, pairwise_sq_corr, pearson_r, DataMatrix, Error, Family, PairCorrStats,
    ScenarioSpec,
};
use proptest::prelude::*;

/// Textbook single-pass-per-pair correlation, written out long-hand.
fn naive_r(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for k in 0..x.len() {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
        syy += (y[k] - my) * (y[k] - my);
    }
    sxy / (sxx * syy).sqrt()
}

fn naive_stats(m: &DataMatrix) -> (Vec<f64>, f64, f64) {
    let mut r2 = Vec::new();
    for i in 0..m.p() {
        for j in i + 1..m.p() {
            r2.push(naive_r(&m.column(i), &m.column(j)).powi(2));
        }
    }
    let s2 = r2.iter().sum();
    let s4 = r2.iter().map(|v| v * v).sum();
    (r2, s2, s4)
}

#[test]
fn hand_evaluated_correlation() {
    let r = pearson_r(&[1.0, 2.0, 3.0], &[1.0, 2.0, 2.0]).unwrap();
    assert!((r - 3.0_f64.sqrt() / 2.0).abs() < 1e-15);
    assert!((naive_r(&[1.0, 2.0, 3.0], &[1.0, 2.0, 2.0]) - r).abs() < 1e-15);
    assert!((pearson_r(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(
        pearson_r(&[1.0, -1.0, 1.0, -1.0], &[1.0, 1.0, -1.0, -1.0]).unwrap(),
        0.0
    );
}

#[test]
fn small_matrix_against_double_loop() {
    let m = DataMatrix::from_rows(&[
        [1.0, 1.0, 2.0],
        [2.0, 3.0, 1.0],
        [3.0, 2.0, 4.0],
        [4.0, 5.0, 3.0],
    ])
    .unwrap();
    let stats = pairwise_sq_corr(&m).unwrap();
    let (r2, s2, s4) = naive_stats(&m);
    assert_eq!(stats.n_pairs, 3);
    for (y, r) in stats.y_values.iter().zip(&r2) {
        assert!((y - 3.0 * r).abs() < 1e-14);
    }
    assert!((stats.sum_r2 - s2).abs() < 1e-14);
    assert!((stats.sum_r4 - s4).abs() < 1e-14);
    // r_12 = 5.5 / sqrt(5 * 8.75)
    assert!((r2[0] - 30.25 / 43.75).abs() < 1e-14);
}

#[test]
fn identical_and_orthogonal_pairs() {
    let x = [1.0, 4.0, 2.0, 8.0, 5.0];
    let rows: Vec<[f64; 2]> = x.iter().map(|&v| [v, v]).collect();
    let s = pairwise_sq_corr(&DataMatrix::from_rows(&rows).unwrap()).unwrap();
    assert!((s.sum_r2 - 1.0).abs() < 1e-15);
    assert!((s.min_y - 4.0).abs() < 1e-13);
    assert_eq!(s.min_y, s.max_y);

    let m = DataMatrix::from_rows(&[[1.0, 1.0], [-1.0, 1.0], [1.0, -1.0], [-1.0, -1.0]]).unwrap();
    let s = pairwise_sq_corr(&m).unwrap();
    assert_eq!(s.sum_r2, 0.0);
    assert_eq!(s.mean_y, 0.0);
}

#[test]
fn input_errors() {
    assert_eq!(
        DataMatrix::new(2, 3, vec![0.0; 6]),
        Err(Error::InvalidDimensions { n: 2, p: 3 })
    );
    assert!(matches!(
        DataMatrix::new(3, 2, vec![0.0; 5]),
        Err(Error::ShapeMismatch { .. })
    ));
    assert_eq!(
        DataMatrix::new(3, 2, vec![0.0, 1.0, f64::NAN, 2.0, 3.0, 4.0]),
        Err(Error::NonFinite { row: 1, column: 0 })
    );
    let m = DataMatrix::from_rows(&[[1.0, 5.0, 2.0], [2.0, 5.0, 1.0], [3.0, 5.0, 7.0]]).unwrap();
    assert_eq!(pairwise_sq_corr(&m), Err(Error::DegenerateColumn { column: 1 }));
    assert!(pearson_r(&[1.0, 2.0], &[1.0, 2.0, 3.0]).is_err());
}

#[test]
fn near_perfect_correlation_stays_in_range() {
    let x: Vec<f64> = (0..1000).map(|k| (k as f64 * 0.37).sin() * 1e8 + 3.0).collect();
    let y: Vec<f64> = x.iter().map(|v| 7.0 * v - 1e9).collect();
    let r = pearson_r(&x, &y).unwrap();
    assert!(r <= 1.0 && r > 1.0 - 1e-14);
    let rows: Vec<[f64; 2]> = x.iter().zip(&y).map(|(a, b)| [*a, *b]).collect();
    let s = pairwise_sq_corr(&DataMatrix::from_rows(&rows).unwrap()).unwrap();
    assert!(s.max_y <= 999.0);
}

fn matrix_strategy() -> impl Strategy<Value = DataMatrix> {
    (3_usize..12, 2_usize..7).prop_flat_map(|(n, p)| {
        proptest::collection::vec(-100.0_f64..100.0, n * p)
            .prop_map(move |v| DataMatrix::new(n, p, v).unwrap())
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn same_summary(a: &PairCorrStats, b: &PairCorrStats) -> bool {
    close(a.sum_r2, b.sum_r2, 1e-10)
        && close(a.sum_r4, b.sum_r4, 1e-10)
        && close(a.min_y, b.min_y, 1e-10)
        && close(a.max_y, b.max_y, 1e-10)
        && close(a.mean_y, b.mean_y, 1e-10)
}

proptest! {
    #[test]
    fn summary_invariants(m in matrix_strategy()) {
        let s = pairwise_sq_corr(&m).unwrap();
        let big_n = s.n_pairs as f64;
        prop_assert_eq!(s.n_pairs, m.p() * (m.p() - 1) / 2);
        prop_assert!(s.sum_r2 >= 0.0 && s.sum_r2 <= big_n);
        prop_assert!(s.sum_r4 <= s.sum_r2 + 1e-15);
        prop_assert!(s.min_y <= s.mean_y + 1e-12 && s.mean_y <= s.max_y + 1e-12);
        prop_assert!(s.y_values.iter().all(|&y| (0.0..=(m.n() - 1) as f64).contains(&y)));
        let mean = (m.n() - 1) as f64 * s.sum_r2 / big_n;
        prop_assert!((s.mean_y - mean).abs() <= 1e-12 * big_n);
        let (_, s2, s4) = naive_stats(&m);
        prop_assert!(close(s.sum_r2, s2, 1e-10) && close(s.sum_r4, s4, 1e-10));
    }

    #[test]
    fn affine_invariance(
        m in matrix_strategy(),
        col in 0_usize..7,
        a in prop_oneof![-50.0_f64..-0.1, 0.1_f64..50.0],
        b in -1e3_f64..1e3,
    ) {
        let col = col % m.p();
        let mut values = m.values().to_vec();
        for row in values.chunks_exact_mut(m.p()) {
            row[col] = a * row[col] + b;
        }
        let shifted = DataMatrix::new(m.n(), m.p(), values).unwrap();
        let s0 = pairwise_sq_corr(&m).unwrap();
        let s1 = pairwise_sq_corr(&shifted).unwrap();
        prop_assert!(same_summary(&s0, &s1));
        for (y0, y1) in s0.y_values.iter().zip(&s1.y_values) {
            prop_assert!(close(*y0, *y1, 1e-10));
        }
    }

    #[test]
    fn permutation_invariance(m in matrix_strategy(), shift in 1_usize..20) {
        let (n, p) = (m.n(), m.p());
        let s0 = pairwise_sq_corr(&m).unwrap();

        let mut rows: Vec<Vec<f64>> = (0..n).map(|k| m.values()[k * p..(k + 1) * p].to_vec()).collect();
        rows.rotate_left(shift % n);
        rows.swap(0, n - 1);
        let by_rows = pairwise_sq_corr(&DataMatrix::from_rows(&rows).unwrap()).unwrap();
        prop_assert!(same_summary(&s0, &by_rows));
        for (y0, y1) in s0.y_values.iter().zip(&by_rows.y_values) {
            prop_assert!(close(*y0, *y1, 1e-10));
        }

        let cols: Vec<Vec<f64>> = rows.iter().map(|r| {
            let mut r = r.clone();
            r.rotate_right(shift % p);
            r.reverse();
            r
        }).collect();
        let by_cols = pairwise_sq_corr(&DataMatrix::from_rows(&cols).unwrap()).unwrap();
        prop_assert!(same_summary(&s0, &by_cols));
    }

    #[test]
    fn transpose_round_trip(m in matrix_strategy()) {
        prop_assume!(m.p() >= 3);
        prop_assert_eq!(m.transposed().unwrap().transposed().unwrap(), m);
    }
}

#[test]
fn null_scaled_correlations_have_unit_mean() {
    // pooled over replicates: mean of y and its variance sigma_n^2
    let (n, p, reps) = (30, 10, 400);
    let spec = ScenarioSpec::new(Family::Normal, n, p, 0.0, 8).unwrap();
    let mut ys = Vec::new();
    let mut means = Vec::new();
    for rep in 0..reps {
        let s = pairwise_sq_corr(&generate_replicate(&spec, rep).unwrap()).unwrap();
        means.push(s.mean_y);
        ys.extend(s.y_values);
    }
    let m = means.len() as f64;
    let grand = means.iter().sum::<f64>() / m;
    let se = (means.iter().map(|v| (v - grand).powi(2)).sum::<f64>() / (m - 1.0) / m).sqrt();
    assert!((grand - 1.0).abs() <= 3.0 * se, "{grand} (se {se})");

    let exact = elindep_core::null_moments(n).unwrap();
    let k = ys.len() as f64;
    let var = ys.iter().map(|y| (y - 1.0).powi(2)).sum::<f64>() / k;
    // SE of the variance estimate from the exact fourth central moment;
    // pairs within a replicate are uncorrelated under the null.
    let se_var = ((exact.m4 * ((n - 1) as f64).powi(4) - exact.sigma_n2.powi(2)) / k).sqrt();
    assert!((var - exact.sigma_n2).abs() <= 3.0 * se_var, "{var} vs {}", exact.sigma_n2);
}
