//! The two benchmark initial-boundary-value problems.
//!
//! Pure advection of a Gaussian pulse (lengths in metres, times in seconds)
//!
//! ```text
//! u(x, t) = A exp(-(x - x0 - nu t)^2 / (2 rho^2))
//! ```
//!
//! and advection with dispersion of a unit pulse that fades as it moves
//!
//! ```text
//! u(x, t) = A / sqrt(4t + 1) exp(-(x - x0 - nu t)^2 / (lambda (4t + 1)))
//! ```
//!
//! Both use homogeneous Dirichlet data at the channel ends.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::semidiscrete::{AdeParameters, BoundarySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    PureAdvection,
    AdvectionDispersion,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::PureAdvection => "pure_advection",
            ProblemKind::AdvectionDispersion => "advection_dispersion",
        }
    }

    /// Steps between error-vs-time samples in harness runs.
    pub fn default_sample_interval(self) -> usize {
        match self {
            ProblemKind::PureAdvection => 50,
            ProblemKind::AdvectionDispersion => 10,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        match key.as_str() {
            "pureadvection" | "advection" | "transport" | "1" => Ok(ProblemKind::PureAdvection),
            "advectiondispersion" | "advectiondiffusion" | "fadeout" | "2" => {
                Ok(ProblemKind::AdvectionDispersion)
            }
            _ => Err(Error::UnknownProblem(s.trim().to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub a: f64,
    pub b: f64,
    pub t_end: f64,
    pub params: AdeParameters,
    /// Pulse standard deviation; only used by [`ProblemKind::PureAdvection`].
    pub rho: f64,
    /// Initial peak position.
    pub x_tilde: f64,
    pub amplitude: f64,
}

impl ProblemSpec {
    pub fn pure_advection() -> Self {
        Self {
            kind: ProblemKind::PureAdvection,
            a: 0.0,
            b: 9000.0,
            t_end: 9600.0,
            params: AdeParameters {
                nu: 0.5,
                lambda: 0.0,
            },
            rho: 264.0,
            x_tilde: 2000.0,
            amplitude: 10.0,
        }
    }

    pub fn advection_dispersion() -> Self {
        Self {
            kind: ProblemKind::AdvectionDispersion,
            a: 0.0,
            b: 9.0,
            t_end: 5.0,
            params: AdeParameters {
                nu: 0.8,
                lambda: 0.005,
            },
            rho: f64::NAN,
            x_tilde: 1.0,
            amplitude: 1.0,
        }
    }

    pub fn defaults(kind: ProblemKind) -> Self {
        match kind {
            ProblemKind::PureAdvection => Self::pure_advection(),
            ProblemKind::AdvectionDispersion => Self::advection_dispersion(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        AdeParameters::new(self.params.nu, self.params.lambda)?;
        if self.a.is_nan() || self.b.is_nan() || self.b <= self.a {
            return Err(Error::Config(format!(
                "empty domain [{}, {}]",
                self.a, self.b
            )));
        }
        if !(self.a <= self.x_tilde && self.x_tilde <= self.b) {
            return Err(Error::Config(format!(
                "x_tilde = {} outside domain [{}, {}]",
                self.x_tilde, self.a, self.b
            )));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(Error::Config(format!(
                "t_end must be positive, got {}",
                self.t_end
            )));
        }
        match self.kind {
            ProblemKind::PureAdvection if !(self.rho.is_finite() && self.rho > 0.0) => Err(
                Error::Config(format!("rho must be positive, got {}", self.rho)),
            ),
            ProblemKind::AdvectionDispersion if self.params.lambda <= 0.0 => Err(Error::Config(
                "advection-dispersion problem needs lambda > 0".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn exact_solution(&self, x: f64, t: f64) -> f64 {
        let xi = x - self.x_tilde - self.params.nu * t;
        match self.kind {
            ProblemKind::PureAdvection => {
                self.amplitude * (-xi * xi / (2.0 * self.rho * self.rho)).exp()
            }
            ProblemKind::AdvectionDispersion => {
                let spread = 4.0 * t + 1.0;
                self.amplitude / spread.sqrt() * (-xi * xi / (self.params.lambda * spread)).exp()
            }
        }
    }

    /// Exact solution sampled at every grid node.
    pub fn sample(&self, grid: &GridSpec, t: f64) -> Result<Vec<f64>> {
        self.check_grid(grid)?;
        Ok(grid
            .nodes()
            .iter()
            .map(|&x| self.exact_solution(x, t))
            .collect())
    }

    pub fn initial_condition(&self, grid: &GridSpec) -> Result<Vec<f64>> {
        self.sample(grid, 0.0)
    }

    pub fn boundary_values(&self) -> BoundarySpec {
        BoundarySpec::homogeneous()
    }

    /// Uniform grid over the problem domain with spacing `dx`.
    pub fn grid(&self, dx: f64) -> Result<GridSpec> {
        GridSpec::with_spacing(self.a, self.b, dx)
    }

    fn check_grid(&self, grid: &GridSpec) -> Result<()> {
        let tol = 1e-12 * (self.b - self.a);
        if (grid.a() - self.a).abs() > tol || (grid.b() - self.b).abs() > tol {
            return Err(Error::DomainMismatch {
                grid_a: grid.a(),
                grid_b: grid.b(),
                a: self.a,
                b: self.b,
            });
        }
        Ok(())
    }
}
