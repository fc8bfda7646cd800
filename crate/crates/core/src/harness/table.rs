//! Reproduction reports for the embedded reference tables.

use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;

use super::case::run_case;
use super::config::CaseConfig;
use super::fmt_full;
use super::reference::{gate_for, table, Gate, RefValue, ReferenceTable, RowSource};
use crate::error::{Error, Result};
use crate::integrators::{IntegratorId, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Not checked (reference-only row or unreported cell).
    Reference,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Reference => "REF",
        }
    }
}

/// Outcome of a computed cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Computed {
    Linf(f64),
    Diverged { step: usize },
}

#[derive(Debug, Clone)]
pub struct CellResult {
    pub label: &'static str,
    pub method: Option<IntegratorId>,
    pub dx: f64,
    pub dt: f64,
    pub reference: RefValue,
    pub computed: Option<Computed>,
    pub gate: Gate,
    pub verdict: Verdict,
    pub wall_time: Duration,
}

impl CellResult {
    /// `(computed - reference) / reference` for finite pairs.
    pub fn relative_deviation(&self) -> Option<f64> {
        match (self.computed, self.reference) {
            (Some(Computed::Linf(c)), RefValue::Finite(r)) if r != 0.0 => Some((c - r) / r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub table: &'static ReferenceTable,
    pub cells: Vec<CellResult>,
}

pub fn judge(gate: Gate, reference: RefValue, computed: Option<Computed>) -> Verdict {
    let ok = match (gate, computed) {
        (Gate::ReferenceOnly, _) | (_, None) => return Verdict::Reference,
        (Gate::Diverges, Some(c)) => matches!(c, Computed::Diverged { .. }),
        (Gate::Relative(tol), Some(Computed::Linf(c))) => match reference {
            RefValue::Finite(r) => (c - r).abs() <= tol * r.abs(),
            _ => false,
        },
        (Gate::OrderOfMagnitude, Some(Computed::Linf(c))) => match reference {
            RefValue::Finite(r) => c > 0.0 && r > 0.0 && (c / r) <= 10.0 && (r / c) <= 10.0,
            _ => false,
        },
        (_, Some(Computed::Diverged { .. })) => false,
    };
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn run_cell(
    table: &ReferenceTable,
    method: IntegratorId,
    column: usize,
) -> Result<(Computed, Duration)> {
    let (dx, dt) = table.columns[column];
    let report = run_case(&CaseConfig::new(table.problem, method, dx, dt))?;
    let computed = match report.status {
        SolveStatus::Completed => Computed::Linf(report.final_linf().expect("completed case")),
        SolveStatus::Diverged { step } => Computed::Diverged { step },
    };
    Ok((computed, report.wall_time))
}

/// Every gated cell of the table as `(row index, column index, method, gate)`,
/// in row-major order.
pub fn in_scope_cells(t: &ReferenceTable) -> Vec<(usize, usize, IntegratorId, Gate)> {
    let mut cells = Vec::new();
    for (r, row) in t.rows.iter().enumerate() {
        if let RowSource::Sdqm(method) = row.source {
            for c in 0..t.columns.len() {
                if let Some(gate) = gate_for(t, method, c) {
                    cells.push((r, c, method, gate));
                }
            }
        }
    }
    cells
}

/// Runs every in-scope cell (in parallel) and assembles the report in table order.
pub fn reproduce_table(id: u8) -> Result<TableReport> {
    let t = table(id).ok_or_else(|| Error::Config(format!("unknown table id {id}")))?;
    let scope = in_scope_cells(t);
    let computed: Vec<Result<(Computed, Duration)>> = scope
        .par_iter()
        .map(|&(_, c, method, _)| run_cell(t, method, c))
        .collect();
    let mut computed_iter = scope.iter().zip(computed);

    let mut cells = Vec::new();
    let mut next = computed_iter.next();
    for (r, row) in t.rows.iter().enumerate() {
        for (c, &(dx, dt)) in t.columns.iter().enumerate() {
            let reference = row.values[c];
            match next {
                Some((&(sr, sc, method, gate), ref res)) if sr == r && sc == c => {
                    let (value, wall) = match res {
                        Ok(v) => *v,
                        Err(e) => return Err(Error::Integration(e.to_string())),
                    };
                    cells.push(CellResult {
                        label: row.label,
                        method: Some(method),
                        dx,
                        dt,
                        reference,
                        computed: Some(value),
                        gate,
                        verdict: judge(gate, reference, Some(value)),
                        wall_time: wall,
                    });
                    next = computed_iter.next();
                }
                _ => {
                    if reference == RefValue::Blank {
                        continue;
                    }
                    cells.push(CellResult {
                        label: row.label,
                        method: None,
                        dx,
                        dt,
                        reference,
                        computed: None,
                        gate: Gate::ReferenceOnly,
                        verdict: Verdict::Reference,
                        wall_time: Duration::ZERO,
                    });
                }
            }
        }
    }
    Ok(TableReport { table: t, cells })
}

fn fmt_ref(v: RefValue) -> String {
    match v {
        RefValue::Finite(x) => format!("{x:.4e}"),
        RefValue::Infinite => "inf".to_string(),
        RefValue::Blank => String::new(),
    }
}

fn fmt_computed(c: Option<Computed>) -> String {
    match c {
        Some(Computed::Linf(v)) => format!("{v:.4e}"),
        Some(Computed::Diverged { step }) => format!("diverged@{step}"),
        None => "-".to_string(),
    }
}

impl TableReport {
    pub fn checked(&self) -> impl Iterator<Item = &CellResult> {
        self.cells
            .iter()
            .filter(|c| c.verdict != Verdict::Reference)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellResult> {
        self.cells.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn cell(&self, method: IntegratorId, dx: f64, dt: f64) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.method == Some(method) && c.dx == dx && c.dt == dt)
    }

    pub fn total_wall_time(&self) -> Duration {
        self.cells.iter().map(|c| c.wall_time).sum()
    }

    /// Aligned plain-text report. Contains no timing, so it is reproducible.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let t = self.table;
        let _ = writeln!(s, "Table {}: {}", t.id, t.title);
        let _ = writeln!(
            s,
            "{:<18} {:>8} {:>8} {:>16} {:>12} {:>10} {:>11} {:>7}",
            "method", "dx", "dt", "computed", "reference", "rel_dev", "gate", "verdict"
        );
        for c in &self.cells {
            let dev = c
                .relative_deviation()
                .map(|d| format!("{:+.2}%", 100.0 * d))
                .unwrap_or_else(|| "-".to_string());
            let _ = writeln!(
                s,
                "{:<18} {:>8} {:>8} {:>16} {:>12} {:>10} {:>11} {:>7}",
                c.label,
                c.dx,
                c.dt,
                fmt_computed(c.computed),
                fmt_ref(c.reference),
                dev,
                c.gate.label(),
                c.verdict.label()
            );
        }
        let checked = self.checked().count();
        let failed = self.failures().count();
        let _ = writeln!(
            s,
            "checked {checked} cells: {} passed, {failed} failed -> {}",
            checked - failed,
            if failed == 0 { "PASS" } else { "FAIL" }
        );
        s
    }

    /// Machine-readable twin of [`TableReport::render_text`]; the last column
    /// is the wall time of each run.
    pub fn render_csv(&self) -> String {
        let mut s = String::from(
            "table,method,dx,dt,status,computed,reference,rel_dev,gate,verdict,wall_time_s\n",
        );
        for c in &self.cells {
            let (status, value) = match c.computed {
                Some(Computed::Linf(v)) => ("completed".to_string(), fmt_full(v)),
                Some(Computed::Diverged { step }) => (format!("diverged@{step}"), String::new()),
                None => ("not_run".to_string(), String::new()),
            };
            let reference = match c.reference {
                RefValue::Finite(v) => fmt_full(v),
                RefValue::Infinite => "inf".to_string(),
                RefValue::Blank => String::new(),
            };
            let dev = c.relative_deviation().map(fmt_full).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{:.6}",
                self.table.id,
                c.label,
                c.dx,
                c.dt,
                status,
                value,
                reference,
                dev,
                c.gate.label(),
                c.verdict.label(),
                c.wall_time.as_secs_f64()
            );
        }
        s
    }
}
