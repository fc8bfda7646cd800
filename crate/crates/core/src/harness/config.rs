//! Case configuration and its flat `key = value` file format.
//!
//! ```text
//! # pure advection, RK4
//! problem = pure_advection
//! method  = RK4
//! dx      = 25
//! dt      = 10
//! out     = results/advection_rk4.csv
//! ```
//!
//! Recognised keys: `problem`, `method`, `dx`, `dt`, `t_end`, `nu`,
//! `lambda`, `rho`, `x_tilde`, `out`. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::grid::DIVISIBILITY_TOL;
use crate::integrators::IntegratorId;
use crate::problems::{ProblemKind, ProblemSpec};

pub const KEYS: [&str; 10] = [
    "problem", "method", "dx", "dt", "t_end", "nu", "lambda", "rho", "x_tilde", "out",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CaseConfig {
    pub problem: ProblemKind,
    pub method: IntegratorId,
    pub dx: f64,
    pub dt: f64,
    pub t_end: Option<f64>,
    pub nu: Option<f64>,
    pub lambda: Option<f64>,
    pub rho: Option<f64>,
    pub x_tilde: Option<f64>,
    pub out: Option<PathBuf>,
    /// Steps between error-vs-time samples; defaults per problem kind.
    pub sample_every: Option<usize>,
}

impl CaseConfig {
    pub fn new(problem: ProblemKind, method: IntegratorId, dx: f64, dt: f64) -> Self {
        Self {
            problem,
            method,
            dx,
            dt,
            t_end: None,
            nu: None,
            lambda: None,
            rho: None,
            x_tilde: None,
            out: None,
            sample_every: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Config(format!(
                    "line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
            if value.is_empty() {
                return Err(Error::Config(format!(
                    "line {}: empty value for `{key}`",
                    lineno + 1
                )));
            }
            if entries.insert(key, (lineno + 1, value)).is_some() {
                return Err(Error::Config(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }

        let required = |key: &str| {
            entries
                .get(key)
                .map(|&(_, v)| v)
                .ok_or_else(|| Error::Config(format!("missing required key `{key}`")))
        };
        let number = |key: &str| -> Result<Option<f64>> {
            entries
                .get(key)
                .map(|&(line, v)| {
                    v.parse::<f64>().map_err(|_| {
                        Error::Config(format!("line {line}: `{key}` is not a number: `{v}`"))
                    })
                })
                .transpose()
        };

        let problem: ProblemKind = required("problem")?.parse()?;
        let method: IntegratorId = required("method")?.parse()?;
        required("dx")?;
        required("dt")?;
        let mut config = CaseConfig::new(
            problem,
            method,
            number("dx")?.expect("checked"),
            number("dt")?.expect("checked"),
        );
        config.t_end = number("t_end")?;
        config.nu = number("nu")?;
        config.lambda = number("lambda")?;
        config.rho = number("rho")?;
        config.x_tilde = number("x_tilde")?;
        config.out = entries.get("out").map(|&(_, v)| PathBuf::from(v));
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Problem defaults with this config's overrides applied and validated.
    pub fn problem_spec(&self) -> Result<ProblemSpec> {
        let mut p = ProblemSpec::defaults(self.problem);
        if let Some(v) = self.t_end {
            p.t_end = v;
        }
        if let Some(v) = self.nu {
            p.params.nu = v;
        }
        if let Some(v) = self.lambda {
            p.params.lambda = v;
        }
        if let Some(v) = self.rho {
            p.rho = v;
        }
        if let Some(v) = self.x_tilde {
            p.x_tilde = v;
        }
        p.validate()?;
        Ok(p)
    }

    /// `round(t_end / dt)`, rejected unless `dt` divides `t_end` to relative
    /// tolerance [`DIVISIBILITY_TOL`].
    pub fn n_steps(&self, problem: &ProblemSpec) -> Result<usize> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        let steps = (problem.t_end / self.dt).round();
        if steps < 1.0 || (steps * self.dt - problem.t_end).abs() > DIVISIBILITY_TOL * problem.t_end
        {
            return Err(Error::Config(format!(
                "dt = {} does not divide t_end = {}",
                self.dt, problem.t_end
            )));
        }
        Ok(steps as usize)
    }

    pub fn sample_interval(&self) -> usize {
        self.sample_every
            .unwrap_or_else(|| self.problem.default_sample_interval())
            .max(1)
    }

    /// Serialize back to the key-value format.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "problem = {}", self.problem);
        let _ = writeln!(s, "method = {}", self.method);
        let _ = writeln!(s, "dx = {}", self.dx);
        let _ = writeln!(s, "dt = {}", self.dt);
        let optional = [
            ("t_end", self.t_end),
            ("nu", self.nu),
            ("lambda", self.lambda),
            ("rho", self.rho),
            ("x_tilde", self.x_tilde),
        ];
        for (key, value) in optional {
            if let Some(v) = value {
                let _ = writeln!(s, "{key} = {v}");
            }
        }
        if let Some(out) = &self.out {
            let _ = writeln!(s, "out = {}", out.display());
        }
        s
    }
}
