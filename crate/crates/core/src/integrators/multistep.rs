//! Fourth-order Adams-Bashforth and Adams-Bashforth-Moulton (PECE) steps.

use std::collections::VecDeque;

use nalgebra::DVector;

use super::OdeRhs;
use crate::error::{Error, Result};

/// Most recent derivative evaluations, newest first: `f_n, f_{n-1}, ...`.
#[derive(Debug, Clone, Default)]
pub struct DerivativeHistory {
    values: VecDeque<DVector<f64>>,
}

/// Number of stored evaluations both four-step formulas need.
pub const HISTORY_LEN: usize = 4;

impl DerivativeHistory {
    pub fn new() -> Self {
        Self::default()
    }

    /// Push `f_{n+1}`; only the newest [`HISTORY_LEN`] entries are kept.
    pub fn push(&mut self, f: DVector<f64>) {
        self.values.push_front(f);
        self.values.truncate(HISTORY_LEN);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `lag = 0` is `f_n`.
    pub fn get(&self, lag: usize) -> Option<&DVector<f64>> {
        self.values.get(lag)
    }

    fn require(&self, needed: usize) -> Result<()> {
        if self.values.len() < needed {
            return Err(Error::InsufficientHistory {
                needed,
                available: self.values.len(),
            });
        }
        Ok(())
    }
}

fn weighted_update(u: &DVector<f64>, dt: f64, terms: &[(f64, &DVector<f64>)]) -> DVector<f64> {
    let mut next = u.clone();
    for &(w, f) in terms {
        next.axpy(dt * w / 24.0, f, 1.0);
    }
    next
}

/// `u_{n+1} = u_n + dt/24 (55 f_n - 59 f_{n-1} + 37 f_{n-2} - 9 f_{n-3})`.
pub fn ab4_step(history: &DerivativeHistory, u: &DVector<f64>, dt: f64) -> Result<DVector<f64>> {
    history.require(4)?;
    let f = |lag| history.get(lag).expect("history length checked");
    Ok(weighted_update(
        u,
        dt,
        &[(55.0, f(0)), (-59.0, f(1)), (37.0, f(2)), (-9.0, f(3))],
    ))
}

/// Predict with AB4, evaluate, correct once with the three-step implicit
/// Adams formula `u_{n+1} = u_n + dt/24 (9 f* + 19 f_n - 5 f_{n-1} + f_{n-2})`,
/// evaluate again. Returns the corrected state and its derivative, which the
/// caller pushes onto the history.
pub fn am4_pece_step<F: OdeRhs + ?Sized>(
    rhs: &F,
    history: &DerivativeHistory,
    t: f64,
    u: &DVector<f64>,
    dt: f64,
) -> Result<(DVector<f64>, DVector<f64>)> {
    let predicted = ab4_step(history, u, dt)?;
    let t_next = t + dt;
    let f_pred = rhs.eval(t_next, &predicted);
    let f = |lag| history.get(lag).expect("history length checked");
    let corrected = weighted_update(
        u,
        dt,
        &[(9.0, &f_pred), (19.0, f(0)), (-5.0, f(1)), (1.0, f(2))],
    );
    let f_corr = rhs.eval(t_next, &corrected);
    Ok((corrected, f_corr))
}
