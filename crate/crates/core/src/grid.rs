use crate::error::{Error, Result};

/// Uniform one-dimensional node layout `x_m = a + (m - 1) dx`, `m = 1..=N`.
///
/// Node indices are 1-based in every public method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    a: f64,
    b: f64,
    n_nodes: usize,
    dx: f64,
}

/// Relative tolerance used when checking that a spacing divides an interval.
pub const DIVISIBILITY_TOL: f64 = 1e-9;

impl GridSpec {
    /// Grid with `n_nodes` equally spaced nodes covering `[a, b]`.
    pub fn new(a: f64, b: f64, n_nodes: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "non-finite endpoints [{a}, {b}]"
            )));
        }
        if b <= a {
            return Err(Error::InvalidGrid(format!("need b > a, got [{a}, {b}]")));
        }
        if n_nodes < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 nodes, got {n_nodes}"
            )));
        }
        let dx = (b - a) / (n_nodes - 1) as f64;
        Ok(Self { a, b, n_nodes, dx })
    }

    /// Grid over `[a, b]` with spacing `dx`, which must divide `b - a` into an
    /// integer number of cells (relative tolerance [`DIVISIBILITY_TOL`]).
    pub fn with_spacing(a: f64, b: f64, dx: f64) -> Result<Self> {
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "spacing must be positive, got {dx}"
            )));
        }
        let cells = (b - a) / dx;
        let rounded = cells.round();
        if rounded < 1.0 || (cells - rounded).abs() > DIVISIBILITY_TOL * rounded.max(1.0) {
            return Err(Error::InvalidGrid(format!(
                "dx = {dx} does not divide [{a}, {b}] into an integer number of cells"
            )));
        }
        Self::new(a, b, rounded as usize + 1)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Number of interior nodes `N - 2`.
    pub fn n_interior(&self) -> usize {
        self.n_nodes - 2
    }

    /// Coordinate of node `m` (1-based). The last node is exactly `b`.
    ///
    /// Panics if `m` is outside `1..=N`; use [`GridSpec::checked_node`] for a
    /// fallible variant.
    pub fn node(&self, m: usize) -> f64 {
        assert!(
            (1..=self.n_nodes).contains(&m),
            "node index {m} out of range 1..={}",
            self.n_nodes
        );
        if m == self.n_nodes {
            self.b
        } else {
            self.a + (m - 1) as f64 * self.dx
        }
    }

    pub fn checked_node(&self, m: usize) -> Result<f64> {
        self.check_index(m)?;
        Ok(self.node(m))
    }

    pub(crate) fn check_index(&self, m: usize) -> Result<()> {
        if (1..=self.n_nodes).contains(&m) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: m,
                n_nodes: self.n_nodes,
            })
        }
    }

    /// All node coordinates in order.
    pub fn nodes(&self) -> Vec<f64> {
        (1..=self.n_nodes).map(|m| self.node(m)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_spacing() {
        let g = GridSpec::new(0.0, 9000.0, 361).unwrap();
        assert_eq!(g.dx(), 25.0);
        assert_eq!(g.node(1), 0.0);
        assert_eq!(g.node(361), 9000.0);
        assert_eq!(g.node(81), 2000.0);
        assert_eq!(g.n_interior(), 359);
    }

    #[test]
    fn spacing_constructor() {
        let g = GridSpec::with_spacing(0.0, 9.0, 0.025).unwrap();
        assert_eq!(g.n_nodes(), 361);
        let g = GridSpec::with_spacing(0.0, 9000.0, 200.0).unwrap();
        assert_eq!(g.n_nodes(), 46);
        assert!(GridSpec::with_spacing(0.0, 9.0, 0.4).is_err());
        assert!(GridSpec::with_spacing(0.0, 9.0, -1.0).is_err());
    }

    #[test]
    fn rejects_degenerate() {
        assert!(GridSpec::new(0.0, 1.0, 2).is_err());
        assert!(GridSpec::new(1.0, 1.0, 5).is_err());
        assert!(GridSpec::new(2.0, 1.0, 5).is_err());
        assert!(GridSpec::new(0.0, f64::NAN, 5).is_err());
    }

    #[test]
    fn checked_node_bounds() {
        let g = GridSpec::new(0.0, 1.0, 5).unwrap();
        assert!(g.checked_node(0).is_err());
        assert!(g.checked_node(6).is_err());
        assert_eq!(g.checked_node(3).unwrap(), 0.5);
    }
}
