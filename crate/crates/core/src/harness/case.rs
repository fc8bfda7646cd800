//! Single benchmark case: build, integrate, measure, write CSV.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use nalgebra::DVector;

use super::config::CaseConfig;
use super::fmt_full;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::integrators::{integrate_observed, SolveStatus};
use crate::metrics::{linf_error, ErrorSample};
use crate::problems::ProblemSpec;
use crate::semidiscrete::SemiDiscreteSystem;

/// Nodal profile at the final time.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionProfile {
    pub t: f64,
    pub x: Vec<f64>,
    pub numeric: Vec<f64>,
    pub exact: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub config: CaseConfig,
    pub problem: ProblemSpec,
    pub grid: GridSpec,
    pub n_steps: usize,
    pub status: SolveStatus,
    /// Error at the final time; `None` when the run diverged.
    pub final_error: Option<ErrorSample>,
    /// Error-vs-time samples, starting at `t = 0`.
    pub error_series: Vec<ErrorSample>,
    pub profile: Option<SolutionProfile>,
    pub wall_time: Duration,
}

impl CaseReport {
    pub fn is_completed(&self) -> bool {
        self.status == SolveStatus::Completed
    }

    pub fn final_linf(&self) -> Option<f64> {
        self.final_error.map(|e| e.linf)
    }

    /// One-line summary of the configuration, used as CSV header comment.
    pub fn describe(&self) -> String {
        let p = &self.problem;
        let status = match self.status {
            SolveStatus::Completed => "completed".to_string(),
            SolveStatus::Diverged { step } => format!("diverged@{step}"),
        };
        format!(
            "problem={} method={} dx={} dt={} t_end={} nu={} lambda={} rho={} x_tilde={} \
             amplitude={} n_nodes={} n_steps={} status={}",
            p.kind,
            self.config.method,
            self.config.dx,
            self.config.dt,
            p.t_end,
            p.params.nu,
            p.params.lambda,
            p.rho,
            p.x_tilde,
            p.amplitude,
            self.grid.n_nodes(),
            self.n_steps,
            status
        )
    }
}

/// Grid, initial condition, semi-discrete system, fixed-step integration and
/// the interior maximum error at the final time.
pub fn run_case(config: &CaseConfig) -> Result<CaseReport> {
    let start = Instant::now();
    let problem = config.problem_spec()?;
    let grid = problem.grid(config.dx)?;
    let n_steps = config.n_steps(&problem)?;
    let system = SemiDiscreteSystem::assemble(problem.params, &grid, problem.boundary_values())?;

    let nodes = grid.nodes();
    let u0 = problem.initial_condition(&grid)?;
    let interior = DVector::from_column_slice(&u0[1..u0.len() - 1]);

    let measure = |t: f64, u_int: &[f64]| -> Result<(Vec<f64>, Vec<f64>, ErrorSample)> {
        let numeric = system.full_state(t, u_int)?;
        let exact: Vec<f64> = nodes
            .iter()
            .map(|&x| problem.exact_solution(x, t))
            .collect();
        let sample = linf_error(&numeric, &exact, &grid, t)?;
        Ok((numeric, exact, sample))
    };

    let every = config.sample_interval();
    let mut series = vec![measure(0.0, interior.as_slice())?.2];
    let mut observer_error = None;
    let outcome = integrate_observed(
        &system,
        interior,
        config.dt,
        n_steps,
        config.method,
        |step, t, u| {
            if step % every == 0 && step != n_steps {
                match measure(t, u.as_slice()) {
                    Ok((_, _, s)) => series.push(s),
                    Err(e) => observer_error = Some(e),
                }
            }
        },
    )?;
    if let Some(e) = observer_error {
        return Err(e);
    }

    let (final_error, profile) = match &outcome.final_state {
        Some(u) => {
            let t = n_steps as f64 * config.dt;
            let (numeric, exact, sample) = measure(t, u.as_slice())?;
            series.push(sample);
            let profile = SolutionProfile {
                t,
                x: nodes.clone(),
                numeric,
                exact,
            };
            (Some(sample), Some(profile))
        }
        None => (None, None),
    };

    Ok(CaseReport {
        config: config.clone(),
        problem,
        grid,
        n_steps,
        status: outcome.status,
        final_error,
        error_series: series,
        profile,
        wall_time: start.elapsed(),
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Path of the error-vs-time file written next to a solution CSV:
/// `dir/name.csv` becomes `dir/name_linf.csv`.
pub fn series_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "solution".to_string());
    path.with_file_name(format!("{stem}_linf.csv"))
}

/// Writes `x,u_numeric,u_exact,abs_error` rows at the final time to `path`
/// and `t,linf` rows to [`series_path`]. Returns both paths.
pub fn emit_solution_csv(report: &CaseReport, path: &Path) -> Result<(PathBuf, PathBuf)> {
    let profile = report.profile.as_ref().ok_or(match report.status {
        SolveStatus::Diverged { step } => Error::NotCompleted { step },
        SolveStatus::Completed => Error::NotCompleted {
            step: report.n_steps,
        },
    })?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }

    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    writeln!(w, "# {}", report.describe()).map_err(io_err(path))?;
    writeln!(w, "x,u_numeric,u_exact,abs_error").map_err(io_err(path))?;
    for ((x, un), ue) in profile.x.iter().zip(&profile.numeric).zip(&profile.exact) {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_full(*x),
            fmt_full(*un),
            fmt_full(*ue),
            fmt_full((ue - un).abs())
        )
        .map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))?;

    let spath = series_path(path);
    let mut w = BufWriter::new(File::create(&spath).map_err(io_err(&spath))?);
    writeln!(w, "# {}", report.describe()).map_err(io_err(&spath))?;
    writeln!(w, "t,linf").map_err(io_err(&spath))?;
    for s in &report.error_series {
        writeln!(w, "{},{}", fmt_full(s.t), fmt_full(s.linf)).map_err(io_err(&spath))?;
    }
    w.flush().map_err(io_err(&spath))?;
    Ok((path.to_path_buf(), spath))
}
