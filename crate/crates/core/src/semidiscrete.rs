//! Method-of-lines system for `u_t = -nu u_x + lambda u_xx` with Dirichlet
//! data eliminated into a forcing term.
//!
//! Unknowns are the interior nodal values `u(x_2), ..., u(x_{N-1})`. For an
//! interior node `m`,
//!
//! ```text
//! du_m/dt = sum_{i=2}^{N-1} c[m][i] u_i + c[m][1] b1(t) + c[m][N] b2(t),
//! c[m][i] = -nu w1[m][i] + lambda w2[m][i].
//! ```

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::integrators::OdeRhs;
use crate::weights::{first_order_weights, second_order_weights};

/// Flow velocity `nu` and dispersion coefficient `lambda >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdeParameters {
    pub nu: f64,
    pub lambda: f64,
}

impl AdeParameters {
    pub fn new(nu: f64, lambda: f64) -> Result<Self> {
        if !nu.is_finite() || !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::Config(format!(
                "invalid ADE parameters nu = {nu}, lambda = {lambda} (need finite values, lambda >= 0)"
            )));
        }
        Ok(Self { nu, lambda })
    }
}

type BoundaryFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Dirichlet data `u(a, t) = b1(t)`, `u(b, t) = b2(t)`.
#[derive(Clone)]
pub struct BoundarySpec {
    b1: BoundaryFn,
    b2: BoundaryFn,
    homogeneous: bool,
}

impl BoundarySpec {
    pub fn new(
        b1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        b2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            b1: Arc::new(b1),
            b2: Arc::new(b2),
            homogeneous: false,
        }
    }

    /// `b1 = b2 = 0`.
    pub fn homogeneous() -> Self {
        Self {
            b1: Arc::new(|_| 0.0),
            b2: Arc::new(|_| 0.0),
            homogeneous: true,
        }
    }

    pub fn constant(left: f64, right: f64) -> Self {
        Self::new(move |_| left, move |_| right)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// `(b1(t), b2(t))`.
    pub fn values(&self, t: f64) -> (f64, f64) {
        ((self.b1)(t), (self.b2)(t))
    }

    /// Nodal vector `[b1(t), u_int..., b2(t)]`.
    pub fn full_state(&self, t: f64, u_int: &[f64]) -> Vec<f64> {
        let (left, right) = self.values(t);
        let mut full = Vec::with_capacity(u_int.len() + 2);
        full.push(left);
        full.extend_from_slice(u_int);
        full.push(right);
        full
    }
}

impl fmt::Debug for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundarySpec")
            .field("homogeneous", &self.homogeneous)
            .finish_non_exhaustive()
    }
}

/// Interior operator `A`, boundary couplings `g1`, `gN` and the data needed
/// to evaluate the forcing.
#[derive(Debug, Clone)]
pub struct SemiDiscreteSystem {
    params: AdeParameters,
    grid: GridSpec,
    boundary: BoundarySpec,
    operator: DMatrix<f64>,
    g1: DVector<f64>,
    gn: DVector<f64>,
}

impl SemiDiscreteSystem {
    pub fn assemble(
        params: AdeParameters,
        grid: &GridSpec,
        boundary: BoundarySpec,
    ) -> Result<Self> {
        let n = grid.n_nodes();
        if n < 4 {
            return Err(Error::InvalidGrid(format!(
                "semi-discretization needs at least 4 nodes, got {n}"
            )));
        }
        let w1 = first_order_weights(grid);
        let w2 = second_order_weights(grid);
        let AdeParameters { nu, lambda } = params;
        let coef = |m: usize, i: usize| -nu * w1.get(m, i) + lambda * w2.get(m, i);

        let interior = n - 2;
        // Row r / column c of the interior system correspond to nodes r + 2, c + 2.
        let operator = DMatrix::from_fn(interior, interior, |r, c| coef(r + 2, c + 2));
        let g1 = DVector::from_fn(interior, |r, _| coef(r + 2, 1));
        let gn = DVector::from_fn(interior, |r, _| coef(r + 2, n));
        Ok(Self {
            params,
            grid: *grid,
            boundary,
            operator,
            g1,
            gn,
        })
    }

    pub fn params(&self) -> AdeParameters {
        self.params
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn boundary(&self) -> &BoundarySpec {
        &self.boundary
    }

    /// Interior operator `A`, `(N-2) x (N-2)`.
    pub fn operator(&self) -> &DMatrix<f64> {
        &self.operator
    }

    pub fn left_coupling(&self) -> &DVector<f64> {
        &self.g1
    }

    pub fn right_coupling(&self) -> &DVector<f64> {
        &self.gn
    }

    pub fn dim(&self) -> usize {
        self.grid.n_interior()
    }

    /// `A u + g1 b1(t) + gN b2(t)`.
    pub fn rhs(&self, t: f64, u_int: &[f64]) -> Result<DVector<f64>> {
        self.check_len(u_int.len())?;
        Ok(self.eval_unchecked(t, &DVector::from_column_slice(u_int)))
    }

    /// Boundary forcing `g1 b1(t) + gN b2(t)`.
    pub fn forcing(&self, t: f64) -> DVector<f64> {
        let mut f = DVector::zeros(self.dim());
        self.add_forcing(t, &mut f);
        f
    }

    pub fn full_state(&self, t: f64, u_int: &[f64]) -> Result<Vec<f64>> {
        self.check_len(u_int.len())?;
        Ok(self.boundary.full_state(t, u_int))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                actual: len,
            });
        }
        Ok(())
    }

    fn add_forcing(&self, t: f64, out: &mut DVector<f64>) {
        if self.boundary.is_homogeneous() {
            return;
        }
        let (left, right) = self.boundary.values(t);
        out.axpy(left, &self.g1, 1.0);
        out.axpy(right, &self.gn, 1.0);
    }

    fn eval_unchecked(&self, t: f64, u: &DVector<f64>) -> DVector<f64> {
        let mut out = &self.operator * u;
        self.add_forcing(t, &mut out);
        out
    }
}

impl OdeRhs for SemiDiscreteSystem {
    fn eval(&self, t: f64, u: &DVector<f64>) -> DVector<f64> {
        assert_eq!(u.len(), self.dim(), "state length does not match system");
        self.eval_unchecked(t, u)
    }
}
