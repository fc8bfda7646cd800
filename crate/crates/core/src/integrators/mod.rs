//! Fixed-step time integrators for the semi-discrete system.
//!
//! Single-step methods are driven by explicit Butcher tableaus. The
//! four-step Adams methods bootstrap their first three steps with RK4.
//! Every step is followed by a divergence check; a blow-up ends the run
//! early with [`SolveStatus::Diverged`], which is a result, not an error.

mod multistep;
mod tableau;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use nalgebra::DVector;

use crate::error::{Error, Result};

pub use multistep::{ab4_step, am4_pece_step, DerivativeHistory, HISTORY_LEN};
pub use tableau::{
    rk_step, rk_step_embedded, ButcherTableau, CASH_KARP45, CLASSICAL_RK4, FEHLBERG45,
    FORWARD_EULER, HEUN, KUTTA3, MIDPOINT,
};

/// Right-hand side `f(t, u)` of `du/dt = f(t, u)`.
pub trait OdeRhs {
    fn eval(&self, t: f64, u: &DVector<f64>) -> DVector<f64>;
}

impl<F> OdeRhs for F
where
    F: Fn(f64, &DVector<f64>) -> DVector<f64>,
{
    fn eval(&self, t: f64, u: &DVector<f64>) -> DVector<f64> {
        self(t, u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntegratorId {
    Fore,
    Impoly,
    Heun,
    Rk2,
    Rk3,
    Rk4,
    Rkf45,
    Rkck45,
    Ab4,
    Am4,
}

impl IntegratorId {
    pub const ALL: [IntegratorId; 10] = [
        IntegratorId::Fore,
        IntegratorId::Impoly,
        IntegratorId::Heun,
        IntegratorId::Rk2,
        IntegratorId::Rk3,
        IntegratorId::Rk4,
        IntegratorId::Rkf45,
        IntegratorId::Rkck45,
        IntegratorId::Ab4,
        IntegratorId::Am4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IntegratorId::Fore => "FORE",
            IntegratorId::Impoly => "IMPOLY",
            IntegratorId::Heun => "HEUN",
            IntegratorId::Rk2 => "RK2",
            IntegratorId::Rk3 => "RK3",
            IntegratorId::Rk4 => "RK4",
            IntegratorId::Rkf45 => "RKF45",
            IntegratorId::Rkck45 => "RKCK45",
            IntegratorId::Ab4 => "AB4",
            IntegratorId::Am4 => "AM4",
        }
    }

    /// Tableau for single-step methods, `None` for the multistep ones.
    pub fn tableau(self) -> Option<&'static ButcherTableau> {
        match self {
            IntegratorId::Fore => Some(&FORWARD_EULER),
            IntegratorId::Impoly | IntegratorId::Rk2 => Some(&MIDPOINT),
            IntegratorId::Heun => Some(&HEUN),
            IntegratorId::Rk3 => Some(&KUTTA3),
            IntegratorId::Rk4 => Some(&CLASSICAL_RK4),
            IntegratorId::Rkf45 => Some(&FEHLBERG45),
            IntegratorId::Rkck45 => Some(&CASH_KARP45),
            IntegratorId::Ab4 | IntegratorId::Am4 => None,
        }
    }

    pub fn is_multistep(self) -> bool {
        matches!(self, IntegratorId::Ab4 | IntegratorId::Am4)
    }

    /// Global order of accuracy of the propagated solution.
    pub fn order(self) -> u32 {
        match self.tableau() {
            Some(t) => t.order,
            None => 4,
        }
    }
}

impl fmt::Display for IntegratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IntegratorId {
    type Err = Error;

    /// Case-insensitive; an `SDQM-` prefix is accepted.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let upper = trimmed.to_ascii_uppercase();
        let key = upper.strip_prefix("SDQM-").unwrap_or(&upper);
        IntegratorId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::UnknownMethod(trimmed.to_string()))
    }
}

/// Magnitude above which a state is treated as blown up.
pub const DIVERGENCE_THRESHOLD: f64 = 1e10;

/// True iff some component is non-finite or exceeds [`DIVERGENCE_THRESHOLD`]
/// in magnitude.
pub fn detect_divergence(state: &[f64]) -> bool {
    state
        .iter()
        .any(|v| !v.is_finite() || v.abs() > DIVERGENCE_THRESHOLD)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Completed,
    /// Divergence detected after step `step` (1-based).
    Diverged {
        step: usize,
    },
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// State after the last step; `None` when the run diverged.
    pub final_state: Option<DVector<f64>>,
    pub steps_taken: usize,
    pub wall_time: Duration,
}

impl SolveOutcome {
    pub fn is_completed(&self) -> bool {
        self.status == SolveStatus::Completed
    }

    pub fn wall_seconds(&self) -> f64 {
        self.wall_time.as_secs_f64()
    }
}

/// Advance `u0` from `t = 0` by `n_steps` fixed steps of size `dt`.
pub fn integrate<F: OdeRhs + ?Sized>(
    rhs: &F,
    u0: DVector<f64>,
    dt: f64,
    n_steps: usize,
    method: IntegratorId,
) -> Result<SolveOutcome> {
    integrate_observed(rhs, u0, dt, n_steps, method, |_, _, _| {})
}

/// [`integrate`] with `observer(step, t, state)` called after every accepted
/// (non-divergent) step.
pub fn integrate_observed<F, O>(
    rhs: &F,
    u0: DVector<f64>,
    dt: f64,
    n_steps: usize,
    method: IntegratorId,
    mut observer: O,
) -> Result<SolveOutcome>
where
    F: OdeRhs + ?Sized,
    O: FnMut(usize, f64, &DVector<f64>),
{
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Integration(format!("dt must be positive, got {dt}")));
    }
    if n_steps == 0 {
        return Err(Error::Integration("n_steps must be at least 1".into()));
    }
    if method.is_multistep() && n_steps < HISTORY_LEN {
        return Err(Error::Integration(format!(
            "{method} needs at least {HISTORY_LEN} steps, got {n_steps}"
        )));
    }

    let start = Instant::now();
    let time = |k: usize| k as f64 * dt;
    let mut u = u0;
    let mut history = DerivativeHistory::new();
    if method.is_multistep() {
        history.push(rhs.eval(0.0, &u));
    }

    for step in 1..=n_steps {
        let t = time(step - 1);
        u = match (method, method.tableau()) {
            (_, Some(tab)) => rk_step(tab, rhs, t, &u, dt),
            (_, None) if step < HISTORY_LEN => {
                let next = rk_step(&CLASSICAL_RK4, rhs, t, &u, dt);
                history.push(rhs.eval(time(step), &next));
                next
            }
            (IntegratorId::Ab4, None) => {
                let next = ab4_step(&history, &u, dt)?;
                history.push(rhs.eval(time(step), &next));
                next
            }
            (_, None) => {
                let (next, f_next) = am4_pece_step(rhs, &history, t, &u, dt)?;
                history.push(f_next);
                next
            }
        };

        if detect_divergence(u.as_slice()) {
            return Ok(SolveOutcome {
                status: SolveStatus::Diverged { step },
                final_state: None,
                steps_taken: step,
                wall_time: start.elapsed(),
            });
        }
        observer(step, time(step), &u);
    }

    Ok(SolveOutcome {
        status: SolveStatus::Completed,
        final_state: Some(u),
        steps_taken: n_steps,
        wall_time: start.elapsed(),
    })
}
