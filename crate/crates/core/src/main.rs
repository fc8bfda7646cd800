use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sdqm::harness::{emit_solution_csv, reproduce_table, run_case, run_convergence, CaseConfig};
use sdqm::{Error, IntegratorId, ProblemKind, SolveStatus};

#[derive(Parser)]
#[command(
    name = "sdqm",
    version,
    about = "Sinc differential quadrature benchmarks for the 1D advection-dispersion equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single case described by a key-value config file.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Solution CSV path; overrides the `out` key of the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Steps between error-vs-time samples.
        #[arg(long)]
        sample_every: Option<usize>,
    },
    /// Reproduce one of the reference error tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        /// Directory for `table<id>.txt` and `table<id>.csv`.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Error grid over lists of mesh sizes and time steps.
    Convergence {
        #[arg(long)]
        problem: ProblemKind,
        #[arg(long)]
        method: IntegratorId,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        dx_list: Vec<f64>,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        dt_list: Vec<f64>,
        /// CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Solve {
            config,
            out,
            sample_every,
        } => {
            let mut cfg = CaseConfig::from_file(&config)?;
            if out.is_some() {
                cfg.out = out;
            }
            cfg.sample_every = sample_every;
            let report = run_case(&cfg)?;
            println!("{}", report.describe());
            match report.status {
                SolveStatus::Completed => {
                    let e = report.final_error.expect("completed case");
                    println!(
                        "linf = {:.6e} at node {} (t = {}), wall time {:.3}s",
                        e.linf,
                        e.argmax_node,
                        e.t,
                        report.wall_time.as_secs_f64()
                    );
                    if let Some(path) = &cfg.out {
                        let (sol, series) = emit_solution_csv(&report, path)?;
                        println!("wrote {} and {}", sol.display(), series.display());
                    }
                    Ok(true)
                }
                SolveStatus::Diverged { step } => {
                    println!("diverged at step {step} of {}", report.n_steps);
                    Ok(false)
                }
            }
        }
        Command::Table { id, out_dir } => {
            let report = reproduce_table(id)?;
            let text = report.render_text();
            print!("{text}");
            if let Some(dir) = out_dir {
                write_file(&dir.join(format!("table{id}.txt")), &text)?;
                write_file(&dir.join(format!("table{id}.csv")), &report.render_csv())?;
            }
            Ok(report.all_pass())
        }
        Command::Convergence {
            problem,
            method,
            dx_list,
            dt_list,
            out,
        } => {
            let grid = run_convergence(problem, method, &dx_list, &dt_list)?;
            print!("{}", grid.render_text());
            if let Some(path) = out {
                write_file(&path, &grid.render_csv())?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
