//! Differential quadrature weights built from the Sinc basis.
//!
//! The weight `w[m][i]` is the `p`-th derivative of the `i`-th Sinc function
//! evaluated at node `m`, which reduces to closed forms on a uniform grid:
//!
//! ```text
//! p = 1:  w[m][i] = (-1)^(m-i) / (dx (m-i)),          w[m][m] = 0
//! p = 2:  w[m][i] = 2 (-1)^(m-i+1) / (dx^2 (m-i)^2),  w[m][m] = -pi^2 / (3 dx^2)
//! ```

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::grid::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivativeOrder {
    First,
    Second,
}

impl DerivativeOrder {
    pub fn as_u32(self) -> u32 {
        match self {
            DerivativeOrder::First => 1,
            DerivativeOrder::Second => 2,
        }
    }
}

impl TryFrom<u32> for DerivativeOrder {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        match p {
            1 => Ok(DerivativeOrder::First),
            2 => Ok(DerivativeOrder::Second),
            other => Err(Error::UnsupportedOrder(other)),
        }
    }
}

/// Dense `N x N` quadrature weight matrix, stored 0-based internally.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    order: DerivativeOrder,
    grid: GridSpec,
    w: DMatrix<f64>,
}

/// Closed-form entry for node offset `d = m - i`.
fn closed_form(order: DerivativeOrder, d: i64, dx: f64) -> f64 {
    if d == 0 {
        return match order {
            DerivativeOrder::First => 0.0,
            DerivativeOrder::Second => -PI * PI / (3.0 * dx * dx),
        };
    }
    let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
    let d = d as f64;
    match order {
        DerivativeOrder::First => sign / (dx * d),
        DerivativeOrder::Second => -2.0 * sign / (dx * dx * d * d),
    }
}

impl WeightMatrix {
    pub fn new(grid: &GridSpec, order: DerivativeOrder) -> Self {
        let n = grid.n_nodes();
        let dx = grid.dx();
        let w = DMatrix::from_fn(n, n, |m, i| closed_form(order, m as i64 - i as i64, dx));
        Self {
            order,
            grid: *grid,
            w,
        }
    }

    pub fn order(&self) -> DerivativeOrder {
        self.order
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn n_nodes(&self) -> usize {
        self.grid.n_nodes()
    }

    pub fn dx(&self) -> f64 {
        self.grid.dx()
    }

    /// Entry `w[m][i]` with 1-based indices.
    pub fn get(&self, m: usize, i: usize) -> f64 {
        self.w[(m - 1, i - 1)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.w
    }

    /// `out[m] = sum_i w[m][i] * u[i]`.
    pub fn apply(&self, u_nodal: &[f64]) -> Result<DVector<f64>> {
        let n = self.n_nodes();
        if u_nodal.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: u_nodal.len(),
            });
        }
        Ok(&self.w * DVector::from_column_slice(u_nodal))
    }
}

pub fn first_order_weights(grid: &GridSpec) -> WeightMatrix {
    WeightMatrix::new(grid, DerivativeOrder::First)
}

pub fn second_order_weights(grid: &GridSpec) -> WeightMatrix {
    WeightMatrix::new(grid, DerivativeOrder::Second)
}

/// Free-function form of [`WeightMatrix::apply`].
pub fn apply_weights(w: &WeightMatrix, u_nodal: &[f64]) -> Result<DVector<f64>> {
    w.apply(u_nodal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sinc::{sinc_derivative, sinc_eval};
    use approx::assert_relative_eq;

    fn grid(n: usize, dx: f64) -> GridSpec {
        GridSpec::new(0.0, dx * (n - 1) as f64, n).unwrap()
    }

    /// Weights via the derivation route: derivative of basis function `i`
    /// evaluated at node `m`.
    fn derived_weights(g: &GridSpec, p: u32) -> DMatrix<f64> {
        let n = g.n_nodes();
        DMatrix::from_fn(n, n, |m, i| {
            sinc_derivative(g.node(m + 1), i + 1, g, p).unwrap()
        })
    }

    #[test]
    fn first_order_examples() {
        let w = first_order_weights(&grid(6, 1.0));
        for m in 1..=6 {
            assert_eq!(w.get(m, m), 0.0);
        }
        assert_eq!(w.get(1, 2), 1.0);
        assert_eq!(w.get(2, 1), -1.0);

        let w = first_order_weights(&grid(6, 0.5));
        assert_eq!(w.get(3, 1), 1.0);
    }

    #[test]
    fn second_order_examples() {
        let w = second_order_weights(&grid(6, 1.0));
        assert_relative_eq!(w.get(4, 4), -3.289_868_13, epsilon = 1e-8);
        assert_eq!(w.get(1, 2), 2.0);
        assert_eq!(w.get(2, 1), 2.0);
        assert_eq!(w.get(1, 3), -0.5);
        assert_eq!(w.get(5, 3), -0.5);
    }

    #[test]
    fn structural_invariants() {
        for &n in &[5usize, 50, 361, 500] {
            for &dx in &[0.025, 1.0, 25.0] {
                let g = grid(n, dx);
                let w1 = first_order_weights(&g);
                let w2 = second_order_weights(&g);
                let h = g.dx();
                let diag2 = -PI * PI / (3.0 * h * h);
                for m in 1..=n {
                    assert_eq!(w1.get(m, m), 0.0);
                    assert_eq!(w2.get(m, m), diag2);
                    for i in 1..=n {
                        assert_eq!(w1.get(m, i), -w1.get(i, m));
                        assert_eq!(w2.get(m, i), w2.get(i, m));
                        if m > 1 && i > 1 {
                            assert_eq!(w1.get(m, i), w1.get(m - 1, i - 1));
                            assert_eq!(w2.get(m, i), w2.get(m - 1, i - 1));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spacing_scaling() {
        let base = grid(40, 1.0);
        for &s in &[0.025, 3.0, 25.0] {
            let scaled = grid(40, s);
            let (b1, s1) = (first_order_weights(&base), first_order_weights(&scaled));
            let (b2, s2) = (second_order_weights(&base), second_order_weights(&scaled));
            for m in 1..=40 {
                for i in 1..=40 {
                    assert_relative_eq!(s1.get(m, i), b1.get(m, i) / s, max_relative = 1e-14);
                    assert_relative_eq!(s2.get(m, i), b2.get(m, i) / (s * s), max_relative = 1e-14);
                }
            }
        }
    }

    #[test]
    fn derivation_route_matches_closed_form() {
        for n in 3..=12 {
            for &dx in &[0.025, 0.2, 1.0, 25.0, 200.0] {
                let g = grid(n, dx);
                for (p, w) in [(1, first_order_weights(&g)), (2, second_order_weights(&g))] {
                    let derived = derived_weights(&g, p);
                    let tol = 1e-12 / dx.powi(p as i32);
                    let diff = (&derived - w.matrix()).abs().max();
                    assert!(diff <= tol, "n={n} dx={dx} p={p}: {diff:e} > {tol:e}");
                }
            }
        }
    }

    #[test]
    fn apply_zero_and_mismatch() {
        let w = first_order_weights(&grid(7, 0.5));
        assert_eq!(w.apply(&[0.0; 7]).unwrap(), DVector::zeros(7));
        assert!(matches!(
            apply_weights(&w, &[1.0; 3]),
            Err(Error::LengthMismatch {
                expected: 7,
                actual: 3
            })
        ));
    }

    #[test]
    fn apply_to_basis_samples_gives_basis_derivative() {
        let g = grid(15, 0.4);
        for (p, w) in [(1, first_order_weights(&g)), (2, second_order_weights(&g))] {
            for j in [1, 6, 15] {
                let samples: Vec<f64> = g
                    .nodes()
                    .iter()
                    .map(|&x| sinc_eval(x, j, &g).unwrap())
                    .collect();
                let out = w.apply(&samples).unwrap();
                for m in 1..=15 {
                    let expected = sinc_derivative(g.node(m), j, &g, p).unwrap();
                    assert!(
                        (out[m - 1] - expected).abs() <= 1e-13 / 0.4f64.powi(p as i32),
                        "p={p} j={j} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn gaussian_derivatives() {
        let dx = 1.0;
        let n = 201;
        let g = grid(n, dx);
        let (c, sigma) = (100.0, 10.0);
        let u: Vec<f64> = g
            .nodes()
            .iter()
            .map(|&x| (-(x - c) * (x - c) / (2.0 * sigma * sigma)).exp())
            .collect();
        let d1 = first_order_weights(&g).apply(&u).unwrap();
        let d2 = second_order_weights(&g).apply(&u).unwrap();
        let exact1 =
            |x: f64| -(x - c) / (sigma * sigma) * (-(x - c).powi(2) / (2.0 * sigma * sigma)).exp();
        let exact2 = |x: f64| {
            ((x - c).powi(2) / sigma.powi(4) - 1.0 / (sigma * sigma))
                * (-(x - c).powi(2) / (2.0 * sigma * sigma)).exp()
        };
        let scale1 = 1.0 / (sigma * std::f64::consts::E.sqrt());
        let scale2 = 1.0 / (sigma * sigma);
        for m in 71..=131 {
            let x = g.node(m);
            assert!((d1[m - 1] - exact1(x)).abs() <= 1e-6 * scale1, "u' at {x}");
            assert!((d2[m - 1] - exact2(x)).abs() <= 1e-6 * scale2, "u'' at {x}");
        }
    }

    #[test]
    fn order_conversion() {
        assert_eq!(
            DerivativeOrder::try_from(1).unwrap(),
            DerivativeOrder::First
        );
        assert_eq!(DerivativeOrder::try_from(2).unwrap().as_u32(), 2);
        assert!(DerivativeOrder::try_from(3).is_err());
    }
}
