//! Sinc differential quadrature (SDQM) solver for the one-dimensional
//! advection-dispersion equation
//!
//! ```text
//! u_t + nu * u_x - lambda * u_xx = 0,   a <= x <= b,
//! u(a, t) = b1(t),  u(b, t) = b2(t)
//! ```
//!
//! Space is discretized with dense Sinc differential quadrature weight
//! matrices on a uniform grid; the resulting linear ODE system over the
//! interior nodes is advanced with fixed-step explicit Runge-Kutta and
//! Adams multistep integrators.
//!
//! Layout:
//! - [`grid`] and [`sinc`]: uniform node layout and Sinc cardinal functions.
//! - [`weights`]: first and second order quadrature weight matrices.
//! - [`semidiscrete`]: method-of-lines system with Dirichlet elimination.
//! - [`integrators`]: Butcher tableaus, AB4 / AM4 (PECE), divergence checks.
//! - [`problems`]: the two benchmark problems and their exact solutions.
//! - [`metrics`]: discrete maximum error over interior nodes.
//! - [`harness`]: case runner, reference tables and report formatting.

pub mod error;
pub mod grid;
pub mod harness;
pub mod integrators;
pub mod metrics;
pub mod problems;
pub mod semidiscrete;
pub mod sinc;
pub mod weights;

pub use error::{Error, Result};
pub use grid::GridSpec;
pub use integrators::{integrate, IntegratorId, SolveOutcome, SolveStatus};
pub use metrics::{linf_error, ErrorSample};
pub use problems::{ProblemKind, ProblemSpec};
pub use semidiscrete::{AdeParameters, BoundarySpec, SemiDiscreteSystem};
pub use weights::{DerivativeOrder, WeightMatrix};
