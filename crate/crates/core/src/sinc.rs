//! Sinc cardinal functions on a uniform grid.
//!
//! `S_m(x) = sin(pi (x - x_m) / dx) / (pi (x - x_m) / dx)` with 1-based node
//! index `m`. Each function is 1 at its own node and 0 at every other node,
//! so the truncated cardinal series interpolates grid samples exactly.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Offsets closer than `SINGULARITY_GUARD * dx` to the centre node use the
/// limit values instead of the ratio forms.
pub const SINGULARITY_GUARD: f64 = 1e-9;

/// `sin(pi s)` and `cos(pi s)` with the argument reduced to `[-1/2, 1/2]`,
/// so both are exact (up to sign) at integer `s`.
fn sin_cos_pi(s: f64) -> (f64, f64) {
    let k = s.round();
    let (sin_r, cos_r) = (PI * (s - k)).sin_cos();
    // (-1)^k without converting possibly huge k to an integer.
    if (k * 0.5).fract() == 0.0 {
        (sin_r, cos_r)
    } else {
        (-sin_r, -cos_r)
    }
}

/// `S_m(x)`. Within the guard distance of any node the exact nodal value
/// (1 or 0) is returned.
pub fn sinc_eval(x: f64, m: usize, grid: &GridSpec) -> Result<f64> {
    grid.check_index(m)?;
    let dx = grid.dx();
    let h = x - grid.node(m);
    if h.abs() < SINGULARITY_GUARD * dx {
        return Ok(1.0);
    }
    let s = h / dx;
    // Other nodes: the sine vanishes, so each basis function is exactly 0 there.
    if (s - s.round()).abs() < SINGULARITY_GUARD {
        return Ok(0.0);
    }
    let (sin_z, _) = sin_cos_pi(s);
    Ok(sin_z / (PI * s))
}

/// First (`order = 1`) or second (`order = 2`) derivative of `S_m` at `x`.
pub fn sinc_derivative(x: f64, m: usize, grid: &GridSpec, order: u32) -> Result<f64> {
    if !(1..=2).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    grid.check_index(m)?;
    let dx = grid.dx();
    let h = x - grid.node(m);
    if h.abs() < SINGULARITY_GUARD * dx {
        return Ok(match order {
            1 => 0.0,
            _ => -PI * PI / (3.0 * dx * dx),
        });
    }
    let k = PI / dx;
    let (sin_z, cos_z) = sin_cos_pi(h / dx);
    Ok(match order {
        1 => (k * h * cos_z - sin_z) / (k * h * h),
        _ => -k * sin_z / h - 2.0 * cos_z / (h * h) + 2.0 * sin_z / (k * h * h * h),
    })
}

/// Truncated cardinal series `sum_m samples[m] * S_m(x)` over the grid nodes.
pub fn cardinal_interpolate(samples: &[f64], x: f64, grid: &GridSpec) -> Result<f64> {
    if samples.len() != grid.n_nodes() {
        return Err(Error::LengthMismatch {
            expected: grid.n_nodes(),
            actual: samples.len(),
        });
    }
    samples
        .iter()
        .enumerate()
        .map(|(i, &u)| sinc_eval(x, i + 1, grid).map(|s| u * s))
        .sum()
}
