//! Error grids over lists of mesh sizes and time steps.

use std::fmt::Write as _;

use rayon::prelude::*;

use super::case::run_case;
use super::config::CaseConfig;
use super::fmt_full;
use super::table::Computed;
use crate::error::Result;
use crate::integrators::{IntegratorId, SolveStatus};
use crate::problems::ProblemKind;

#[derive(Debug, Clone)]
pub struct ConvergenceGrid {
    pub problem: ProblemKind,
    pub method: IntegratorId,
    pub dx_list: Vec<f64>,
    pub dt_list: Vec<f64>,
    /// `cells[i][j]` is the run for `dx_list[i]`, `dt_list[j]`.
    pub cells: Vec<Vec<Computed>>,
}

/// Runs every `(dx, dt)` combination. Invalid combinations are configuration
/// errors.
pub fn run_convergence(
    problem: ProblemKind,
    method: IntegratorId,
    dx_list: &[f64],
    dt_list: &[f64],
) -> Result<ConvergenceGrid> {
    let pairs: Vec<(f64, f64)> = dx_list
        .iter()
        .flat_map(|&dx| dt_list.iter().map(move |&dt| (dx, dt)))
        .collect();
    let results: Vec<Result<Computed>> = pairs
        .par_iter()
        .map(|&(dx, dt)| {
            let r = run_case(&CaseConfig::new(problem, method, dx, dt))?;
            Ok(match r.status {
                SolveStatus::Completed => Computed::Linf(r.final_linf().expect("completed")),
                SolveStatus::Diverged { step } => Computed::Diverged { step },
            })
        })
        .collect();
    let flat: Vec<Computed> = results.into_iter().collect::<Result<_>>()?;
    let cells = flat
        .chunks(dt_list.len().max(1))
        .map(|c| c.to_vec())
        .collect();
    Ok(ConvergenceGrid {
        problem,
        method,
        dx_list: dx_list.to_vec(),
        dt_list: dt_list.to_vec(),
        cells,
    })
}

/// `log(e1 / e2) / log(h1 / h2)`.
pub fn observed_rate(e1: f64, e2: f64, h1: f64, h2: f64) -> f64 {
    (e1 / e2).ln() / (h1 / h2).ln()
}

impl ConvergenceGrid {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} / {}: maximum error at t_end (rows dx, columns dt)",
            self.problem, self.method
        );
        let _ = write!(s, "{:>10}", "dx \\ dt");
        for dt in &self.dt_list {
            let _ = write!(s, " {:>16}", dt);
        }
        let _ = writeln!(s);
        for (dx, row) in self.dx_list.iter().zip(&self.cells) {
            let _ = write!(s, "{dx:>10}");
            for c in row {
                let v = match c {
                    Computed::Linf(v) => format!("{v:.4e}"),
                    Computed::Diverged { step } => format!("diverged@{step}"),
                };
                let _ = write!(s, " {v:>16}");
            }
            let _ = writeln!(s);
        }
        // temporal rates along each row
        if self.dt_list.len() > 1 {
            let _ = writeln!(s, "observed temporal rates:");
            for (dx, row) in self.dx_list.iter().zip(&self.cells) {
                let _ = write!(s, "{dx:>10}");
                for j in 1..row.len() {
                    let rate = match (row[j - 1], row[j]) {
                        (Computed::Linf(a), Computed::Linf(b)) => format!(
                            "{:.2}",
                            observed_rate(a, b, self.dt_list[j - 1], self.dt_list[j])
                        ),
                        _ => "-".to_string(),
                    };
                    let _ = write!(s, " {rate:>16}");
                }
                let _ = writeln!(s);
            }
        }
        s
    }

    pub fn render_csv(&self) -> String {
        let mut s = String::from("problem,method,dx,dt,status,linf\n");
        for (dx, row) in self.dx_list.iter().zip(&self.cells) {
            for (dt, c) in self.dt_list.iter().zip(row) {
                let (status, v) = match c {
                    Computed::Linf(v) => ("completed".to_string(), fmt_full(*v)),
                    Computed::Diverged { step } => (format!("diverged@{step}"), String::new()),
                };
                let _ = writeln!(s, "{},{},{dx},{dt},{status},{v}", self.problem, self.method);
            }
        }
        s
    }
}
