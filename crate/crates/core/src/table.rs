//! CSV and markdown rendering of simulation tables.
//!
//! Rates and standard errors are printed with four decimals. [`Table::rounded`]
//! applies the same rounding to the numbers themselves so a JSON dump of the
//! rounded table carries exactly the printed values.

use crate::classical::Method;
use crate::harness::Table;
use std::fmt::Write;

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

impl Table {
    /// Copy with every rate and standard error rounded to four decimals.
    pub fn rounded(&self) -> Table {
        let mut t = self.clone();
        for cell in t.rows.iter_mut().flat_map(|r| r.cells.iter_mut()) {
            cell.reject_rate = round4(cell.reject_rate);
            cell.mc_se = round4(cell.mc_se);
        }
        t
    }

    fn column_labels(&self) -> Vec<String> {
        self.rhos
            .iter()
            .flat_map(|rho| Method::ALL.iter().map(move |m| format!("{m}@{rho}")))
            .collect()
    }

    /// Wide CSV: one line per `(n, p)`, a rate and an `_se` column per
    /// `(method, rho)`.
    pub fn to_csv(&self) -> String {
        let labels = self.column_labels();
        let mut out = String::from("family,n,p,alpha,reps,seed");
        for l in &labels {
            write!(out, ",{l}").unwrap();
        }
        for l in &labels {
            write!(out, ",{l}_se").unwrap();
        }
        out.push('\n');
        for row in &self.rows {
            write!(
                out,
                "{},{},{},{},{},{}",
                self.family, row.n, row.p, self.alpha, self.reps, self.seed
            )
            .unwrap();
            for c in &row.cells {
                write!(out, ",{:.4}", c.reject_rate).unwrap();
            }
            for c in &row.cells {
                write!(out, ",{:.4}", c.mc_se).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Aligned markdown table; each cell reads `rate (mc_se)`.
    pub fn to_markdown(&self) -> String {
        let mut header = vec!["n".to_string(), "p".to_string()];
        header.extend(self.column_labels());
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                let mut line = vec![row.n.to_string(), row.p.to_string()];
                line.extend(
                    row.cells
                        .iter()
                        .map(|c| format!("{:.4} ({:.4})", c.reject_rate, c.mc_se)),
                );
                line
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|k| {
                body.iter()
                    .map(|l| l[k].chars().count())
                    .chain([header[k].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();

        let mut out = format!(
            "family: {}, alpha: {}, reps: {}, seed: {}\n\n",
            self.family, self.alpha, self.reps, self.seed
        );
        let render = |cells: &[String], out: &mut String| {
            out.push('|');
            for (c, w) in cells.iter().zip(&widths) {
                write!(out, " {c:>w$} |").unwrap();
            }
            out.push('\n');
        };
        render(&header, &mut out);
        out.push('|');
        for w in &widths {
            write!(out, "{}:|", "-".repeat(w + 1)).unwrap();
        }
        out.push('\n');
        for line in &body {
            render(line, &mut out);
        }
        out
    }
}
