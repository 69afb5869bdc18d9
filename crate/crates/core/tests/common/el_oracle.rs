//! Empirical likelihood by direct maximization over the weights.
//!
//! Maximizes `sum ln w_i` subject to `sum w_i = 1` and `sum w_i y_i = mu`
//! with an infeasible-start Newton method on the primal problem, so it shares
//! nothing with the Lagrange-multiplier solver under test.

fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let m = b.len();
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..m {
            let f = a[row][col] / a[col][col];
            for k in col..m {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let s: f64 = (row + 1..m).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Optimal weights, or `None` if `mu` is not strictly inside the hull.
pub fn el_weights_primal(y: &[f64], mu: f64) -> Option<Vec<f64>> {
    let n = y.len();
    let lo = y.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(mu > lo && mu < hi) {
        return None;
    }
    let mut w = vec![1.0 / n as f64; n];
    for _ in 0..500 {
        // KKT system for the Newton step dw and multipliers (nu0, nu1).
        let m = n + 2;
        let mut a = vec![vec![0.0; m]; m];
        let mut rhs = vec![0.0; m];
        for i in 0..n {
            a[i][i] = -1.0 / (w[i] * w[i]);
            a[i][n] = 1.0;
            a[i][n + 1] = y[i];
            a[n][i] = 1.0;
            a[n + 1][i] = y[i];
            rhs[i] = -1.0 / w[i];
        }
        let r0 = 1.0 - w.iter().sum::<f64>();
        let r1 = mu - w.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
        rhs[n] = r0;
        rhs[n + 1] = r1;
        let sol = solve_dense(a, rhs);
        let dw = &sol[..n];
        let residual = |w: &[f64], nu: &[f64]| -> f64 {
            let dual: f64 = (0..n)
                .map(|i| (1.0 / w[i] - nu[0] - nu[1] * y[i]).powi(2))
                .sum();
            let p0 = 1.0 - w.iter().sum::<f64>();
            let p1 = mu - w.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
            (dual + p0 * p0 + p1 * p1).sqrt()
        };
        // The returned multipliers enter with a sign flip in this layout.
        let nu = [-sol[n], -sol[n + 1]];
        let before = residual(&w, &nu);
        let mut t = 1.0;
        while (0..n).any(|i| w[i] + t * dw[i] <= 0.0) {
            t *= 0.5;
        }
        loop {
            let trial: Vec<f64> = (0..n).map(|i| w[i] + t * dw[i]).collect();
            if residual(&trial, &nu) <= (1.0 - 0.01 * t) * before || t < 1e-12 {
                w = trial;
                break;
            }
            t *= 0.5;
        }
        let step: f64 = dw.iter().map(|d| d.abs()).fold(0.0, f64::max);
        if t == 1.0 && step < 1e-15 && r0.abs() < 1e-15 && r1.abs() < 1e-13 {
            break;
        }
    }
    Some(w)
}

/// `-2 sum ln(n w_i)` at the primal optimum; infinite outside the hull.
pub fn el_ratio_primal(y: &[f64], mu: f64) -> f64 {
    match el_weights_primal(y, mu) {
        Some(w) => {
            let n = y.len() as f64;
            -2.0 * w.iter().map(|wi| (n * wi).ln()).sum::<f64>()
        }
        None => f64::INFINITY,
    }
}
