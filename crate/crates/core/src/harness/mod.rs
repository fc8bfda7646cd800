//! Benchmark harness: case configuration, runs, reference tables, reports.

pub mod case;
pub mod config;
pub mod convergence;
pub mod reference;
pub mod table;

pub use case::{emit_solution_csv, run_case, series_path, CaseReport, SolutionProfile};
pub use config::CaseConfig;
pub use convergence::{run_convergence, ConvergenceGrid};
pub use reference::{Gate, RefValue, ReferenceTable, TABLE_1, TABLE_2};
pub use table::{reproduce_table, CellResult, Computed, TableReport, Verdict};

/// Full round-trip formatting (17 significant digits).
pub fn fmt_full(v: f64) -> String {
    format!("{v:.16e}")
}
