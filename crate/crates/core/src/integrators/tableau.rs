//! Explicit Butcher tableaus for the single-step integrators.

use nalgebra::DVector;

use super::OdeRhs;

/// Explicit Runge-Kutta tableau. Row `k` of `a` holds the `k` coefficients
/// strictly below the diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ButcherTableau {
    pub name: &'static str,
    pub a: &'static [&'static [f64]],
    pub b: &'static [f64],
    pub c: &'static [f64],
    /// Lower-order weights of an embedded pair, if any.
    pub b_embedded: Option<&'static [f64]>,
    /// Order of the solution propagated with `b`.
    pub order: u32,
}

/// Tolerance for the row-sum and weight-sum consistency checks.
const CONSISTENCY_TOL: f64 = 1e-14;

impl ButcherTableau {
    pub fn stages(&self) -> usize {
        self.b.len()
    }

    /// Checks shape, strict lower triangularity, `c[k] = sum_j a[k][j]` and
    /// `sum b = 1` (also for the embedded weights).
    pub fn validate(&self) -> Result<(), String> {
        let s = self.stages();
        if s == 0 || self.a.len() != s || self.c.len() != s {
            return Err(format!("{}: inconsistent stage counts", self.name));
        }
        for (k, row) in self.a.iter().enumerate() {
            if row.len() != k {
                return Err(format!(
                    "{}: row {k} has {} entries, expected {k}",
                    self.name,
                    row.len()
                ));
            }
            let sum: f64 = row.iter().sum();
            if (sum - self.c[k]).abs() > CONSISTENCY_TOL {
                return Err(format!(
                    "{}: row {k} sums to {sum}, c = {}",
                    self.name, self.c[k]
                ));
            }
        }
        let weights = std::iter::once(self.b).chain(self.b_embedded);
        for b in weights {
            if b.len() != s {
                return Err(format!("{}: weight vector has wrong length", self.name));
            }
            let sum: f64 = b.iter().sum();
            if (sum - 1.0).abs() > CONSISTENCY_TOL {
                return Err(format!("{}: weights sum to {sum}", self.name));
            }
        }
        Ok(())
    }
}

pub const FORWARD_EULER: ButcherTableau = ButcherTableau {
    name: "FORE",
    a: &[&[]],
    b: &[1.0],
    c: &[0.0],
    b_embedded: None,
    order: 1,
};

/// Explicit midpoint (improved polygon / modified Euler).
pub const MIDPOINT: ButcherTableau = ButcherTableau {
    name: "midpoint",
    a: &[&[], &[0.5]],
    b: &[0.0, 1.0],
    c: &[0.0, 0.5],
    b_embedded: None,
    order: 2,
};

/// Two-stage trapezoidal rule (improved Euler).
pub const HEUN: ButcherTableau = ButcherTableau {
    name: "HEUN",
    a: &[&[], &[1.0]],
    b: &[0.5, 0.5],
    c: &[0.0, 1.0],
    b_embedded: None,
    order: 2,
};

/// Kutta's third-order method.
pub const KUTTA3: ButcherTableau = ButcherTableau {
    name: "RK3",
    a: &[&[], &[0.5], &[-1.0, 2.0]],
    b: &[1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
    c: &[0.0, 0.5, 1.0],
    b_embedded: None,
    order: 3,
};

pub const CLASSICAL_RK4: ButcherTableau = ButcherTableau {
    name: "RK4",
    a: &[&[], &[0.5], &[0.0, 0.5], &[0.0, 0.0, 1.0]],
    b: &[1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
    c: &[0.0, 0.5, 0.5, 1.0],
    b_embedded: None,
    order: 4,
};

/// Runge-Kutta-Fehlberg 4(5), fifth-order weights propagated.
pub const FEHLBERG45: ButcherTableau = ButcherTableau {
    name: "RKF45",
    a: &[
        &[],
        &[1.0 / 4.0],
        &[3.0 / 32.0, 9.0 / 32.0],
        &[1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0],
        &[439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0],
        &[
            -8.0 / 27.0,
            2.0,
            -3544.0 / 2565.0,
            1859.0 / 4104.0,
            -11.0 / 40.0,
        ],
    ],
    b: &[
        16.0 / 135.0,
        0.0,
        6656.0 / 12825.0,
        28561.0 / 56430.0,
        -9.0 / 50.0,
        2.0 / 55.0,
    ],
    c: &[0.0, 1.0 / 4.0, 3.0 / 8.0, 12.0 / 13.0, 1.0, 1.0 / 2.0],
    b_embedded: Some(&[
        25.0 / 216.0,
        0.0,
        1408.0 / 2565.0,
        2197.0 / 4104.0,
        -1.0 / 5.0,
        0.0,
    ]),
    order: 5,
};

/// Cash-Karp 4(5), fifth-order weights propagated.
pub const CASH_KARP45: ButcherTableau = ButcherTableau {
    name: "RKCK45",
    a: &[
        &[],
        &[1.0 / 5.0],
        &[3.0 / 40.0, 9.0 / 40.0],
        &[3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0],
        &[-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0],
        &[
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ],
    b: &[
        37.0 / 378.0,
        0.0,
        250.0 / 621.0,
        125.0 / 594.0,
        0.0,
        512.0 / 1771.0,
    ],
    c: &[0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0],
    b_embedded: Some(&[
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        1.0 / 4.0,
    ]),
    order: 5,
};

fn stage_derivatives<F: OdeRhs + ?Sized>(
    tableau: &ButcherTableau,
    rhs: &F,
    t: f64,
    u: &DVector<f64>,
    dt: f64,
) -> Vec<DVector<f64>> {
    let mut k: Vec<DVector<f64>> = Vec::with_capacity(tableau.stages());
    for (stage, row) in tableau.a.iter().enumerate() {
        let mut y = u.clone();
        for (kj, &aij) in k.iter().zip(row.iter()) {
            if aij != 0.0 {
                y.axpy(dt * aij, kj, 1.0);
            }
        }
        k.push(rhs.eval(t + tableau.c[stage] * dt, &y));
    }
    k
}

fn combine(u: &DVector<f64>, k: &[DVector<f64>], weights: &[f64], dt: f64) -> DVector<f64> {
    let mut next = u.clone();
    for (kj, &bj) in k.iter().zip(weights) {
        if bj != 0.0 {
            next.axpy(dt * bj, kj, 1.0);
        }
    }
    next
}

/// One explicit Runge-Kutta step from `(t, u)`. Non-finite stage values are
/// propagated into the result.
pub fn rk_step<F: OdeRhs + ?Sized>(
    tableau: &ButcherTableau,
    rhs: &F,
    t: f64,
    u: &DVector<f64>,
    dt: f64,
) -> DVector<f64> {
    let k = stage_derivatives(tableau, rhs, t, u, dt);
    combine(u, &k, tableau.b, dt)
}

/// One step of an embedded pair: the propagated solution and the difference
/// between it and the lower-order solution. `None` for tableaus without an
/// embedded pair.
pub fn rk_step_embedded<F: OdeRhs + ?Sized>(
    tableau: &ButcherTableau,
    rhs: &F,
    t: f64,
    u: &DVector<f64>,
    dt: f64,
) -> Option<(DVector<f64>, DVector<f64>)> {
    let low = tableau.b_embedded?;
    let k = stage_derivatives(tableau, rhs, t, u, dt);
    let next = combine(u, &k, tableau.b, dt);
    let lower = combine(u, &k, low, dt);
    let estimate = &next - &lower;
    Some((next, estimate))
}
