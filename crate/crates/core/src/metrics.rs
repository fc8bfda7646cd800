use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Discrete maximum error over interior nodes at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSample {
    pub t: f64,
    pub linf: f64,
    /// 1-based node index in `2..=N-1`.
    pub argmax_node: usize,
}

/// `max_{2 <= m <= N-1} |exact[m] - numeric[m]|`; boundary nodes are excluded
/// and ties resolve to the smallest index. A NaN difference is returned as is.
pub fn linf_error(numeric: &[f64], exact: &[f64], grid: &GridSpec, t: f64) -> Result<ErrorSample> {
    let n = grid.n_nodes();
    for len in [numeric.len(), exact.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: len,
            });
        }
    }
    let mut best = ErrorSample {
        t,
        linf: 0.0,
        argmax_node: 2,
    };
    for m in 2..n {
        let d = (exact[m - 1] - numeric[m - 1]).abs();
        if d.is_nan() {
            return Ok(ErrorSample {
                t,
                linf: f64::NAN,
                argmax_node: m,
            });
        }
        if d > best.linf {
            best.linf = d;
            best.argmax_node = m;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g5() -> GridSpec {
        GridSpec::new(0.0, 4.0, 5).unwrap()
    }

    #[test]
    fn identical_is_zero() {
        let u = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(linf_error(&u, &u, &g5(), 0.0).unwrap().linf, 0.0);
    }

    #[test]
    fn boundary_differences_ignored() {
        let e = linf_error(&[7.0, 0.0, 0.0, 0.0, 7.0], &[0.0; 5], &g5(), 0.0).unwrap();
        assert_eq!(e.linf, 0.0);
    }

    #[test]
    fn interior_max_and_argmax() {
        let e = linf_error(&[0.0, 0.1, -0.3, 0.05, 0.0], &[0.0; 5], &g5(), 2.5).unwrap();
        assert_eq!(e.linf, 0.3);
        assert_eq!(e.argmax_node, 3);
        assert_eq!(e.t, 2.5);
    }

    #[test]
    fn ties_pick_smallest_index() {
        let e = linf_error(&[0.0, 0.2, -0.2, 0.2, 0.0], &[0.0; 5], &g5(), 0.0).unwrap();
        assert_eq!(e.argmax_node, 2);
    }

    #[test]
    fn length_mismatch() {
        assert!(linf_error(&[0.0; 4], &[0.0; 5], &g5(), 0.0).is_err());
        assert!(linf_error(&[0.0; 5], &[0.0; 6], &g5(), 0.0).is_err());
    }

    #[test]
    fn nan_propagates() {
        let e = linf_error(&[0.0, 0.5, f64::NAN, 0.0, 0.0], &[0.0; 5], &g5(), 0.0).unwrap();
        assert!(e.linf.is_nan());
    }

    fn vec8() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-100.0f64..100.0, 8)
    }

    proptest! {
        #[test]
        fn symmetric(u in vec8(), v in vec8()) {
            let g = GridSpec::new(0.0, 1.0, 8).unwrap();
            prop_assert_eq!(linf_error(&u, &v, &g, 0.0).unwrap().linf, linf_error(&v, &u, &g, 0.0).unwrap().linf);
        }

        #[test]
        fn triangle_inequality(u in vec8(), v in vec8(), w in vec8()) {
            let g = GridSpec::new(0.0, 1.0, 8).unwrap();
            let uv = linf_error(&u, &v, &g, 0.0).unwrap().linf;
            let uw = linf_error(&u, &w, &g, 0.0).unwrap().linf;
            let wv = linf_error(&w, &v, &g, 0.0).unwrap().linf;
            prop_assert!(uv <= (uw + wv) * (1.0 + 1e-15));
        }

        #[test]
        fn scale_equivariant(u in vec8(), v in vec8(), s in -10.0f64..10.0) {
            let g = GridSpec::new(0.0, 1.0, 8).unwrap();
            let base = linf_error(&u, &v, &g, 0.0).unwrap().linf;
            let su: Vec<f64> = u.iter().map(|x| s * x).collect();
            let sv: Vec<f64> = v.iter().map(|x| s * x).collect();
            let scaled = linf_error(&su, &sv, &g, 0.0).unwrap().linf;
            prop_assert!((scaled - s.abs() * base).abs() <= 1e-12 * (1.0 + s.abs() * base));
        }
    }
}
