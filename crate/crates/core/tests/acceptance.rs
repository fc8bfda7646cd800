//! Acceptance suite. Each test checks one criterion and prints a single
//! `[ACn] PASS|FAIL` line (plus per-cell detail lines for the table checks).
//!
//! Run with `cargo test -p sdqm --test acceptance -- --nocapture --test-threads 1`
//! to see the lines in order.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use sdqm::harness::{run_case, CaseConfig};
use sdqm::integrators::{integrate, integrate_observed, IntegratorId, SolveStatus};
use sdqm::sinc::sinc_derivative;
use sdqm::weights::{first_order_weights, second_order_weights};
use sdqm::{AdeParameters, BoundarySpec, GridSpec, ProblemKind, ProblemSpec, SemiDiscreteSystem};

use IntegratorId as M;
use ProblemKind::{AdvectionDispersion as AD, PureAdvection as PA};

const REL_TOL: f64 = 0.10;
const COARSE_TOL: f64 = 0.05;
const MAGNITUDE_FACTOR: f64 = 10.0;
const RUNTIME_LIMIT_S: f64 = 60.0;

#[derive(Clone, Copy)]
enum Expect {
    Within(f64, f64),
    Factor(f64),
    Diverged,
}

struct Check {
    problem: ProblemKind,
    method: IntegratorId,
    dx: f64,
    dt: f64,
    expect: Expect,
}

fn check(problem: ProblemKind, method: IntegratorId, dx: f64, dt: f64, expect: Expect) -> Check {
    Check {
        problem,
        method,
        dx,
        dt,
        expect,
    }
}

/// Runs the checks, prints one detail line each, and returns the number of failures.
fn run_checks(tag: &str, checks: &[Check]) -> usize {
    let mut failures = 0;
    for c in checks {
        let report = run_case(&CaseConfig::new(c.problem, c.method, c.dx, c.dt)).unwrap();
        let (ok, detail) = match (c.expect, report.status) {
            (Expect::Within(reference, tol), SolveStatus::Completed) => {
                let v = report.final_linf().unwrap();
                let dev = (v - reference) / reference;
                (
                    dev.abs() <= tol,
                    format!(
                        "{v:.4e} vs {reference:.4e} ({:+.2}%, tol {:.0}%)",
                        100.0 * dev,
                        100.0 * tol
                    ),
                )
            }
            (Expect::Factor(reference), SolveStatus::Completed) => {
                let v = report.final_linf().unwrap();
                let ratio = v / reference;
                (
                    (1.0 / MAGNITUDE_FACTOR..=MAGNITUDE_FACTOR).contains(&ratio),
                    format!("{v:.4e} vs {reference:.4e} (ratio {ratio:.3}, factor <= 10)"),
                )
            }
            (Expect::Diverged, SolveStatus::Diverged { step }) => {
                (true, format!("diverged at step {step}"))
            }
            (Expect::Diverged, SolveStatus::Completed) => (
                false,
                format!(
                    "completed with {:.4e}, expected divergence",
                    report.final_linf().unwrap()
                ),
            ),
            (_, SolveStatus::Diverged { step }) => (false, format!("diverged at step {step}")),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "  [{tag}] {} {:<7} dx={:<6} dt={:<7} {}  {detail}",
            c.problem,
            c.method,
            c.dx,
            c.dt,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    failures
}

fn verdict(tag: &str, what: &str, failures: usize, total: usize) {
    let status = if failures == 0 { "PASS" } else { "FAIL" };
    println!(
        "[{tag}] {status}: {what} ({} of {total} checks passed)",
        total - failures
    );
    assert_eq!(failures, 0, "{tag}: {failures} of {total} checks failed");
}

#[test]
fn ac1_table1_unambiguous_methods() {
    let w = |v| Expect::Within(v, REL_TOL);
    let checks = [
        check(PA, M::Fore, 200.0, 50.0, w(533.5714)),
        check(PA, M::Rk3, 200.0, 50.0, w(1.9080e-2)),
        check(PA, M::Rk3, 50.0, 50.0, w(1.8821e-2)),
        check(PA, M::Rk3, 25.0, 10.0, w(1.5429e-4)),
        check(PA, M::Rk4, 200.0, 50.0, w(1.9151e-3)),
        check(PA, M::Rk4, 50.0, 50.0, w(7.0186e-5)),
        check(PA, M::Rk4, 25.0, 10.0, w(1.1436e-6)),
        check(PA, M::Ab4, 200.0, 50.0, w(2.8709e-2)),
        check(PA, M::Ab4, 25.0, 10.0, w(4.6886e-5)),
        check(PA, M::Am4, 200.0, 50.0, w(2.5487e-3)),
        check(PA, M::Am4, 25.0, 10.0, w(3.5583e-6)),
    ];
    let start = Instant::now();
    let failures = run_checks("AC1", &checks);
    let elapsed = start.elapsed().as_secs_f64();
    println!("  [AC1] runtime {elapsed:.2}s (limit {RUNTIME_LIMIT_S}s)");
    let failures = failures + usize::from(elapsed >= RUNTIME_LIMIT_S);
    verdict(
        "AC1",
        "pure advection, unambiguous methods within 10%",
        failures,
        checks.len() + 1,
    );
}

#[test]
fn ac2_table1_instabilities() {
    let d = Expect::Diverged;
    let mut checks = Vec::new();
    for (dx, dt) in [(50.0, 50.0), (25.0, 50.0), (25.0, 10.0)] {
        checks.push(check(PA, M::Fore, dx, dt, d));
    }
    for m in [M::Impoly, M::Heun, M::Rk2] {
        checks.push(check(PA, m, 50.0, 50.0, d));
        checks.push(check(PA, m, 25.0, 50.0, d));
    }
    checks.push(check(PA, M::Rk3, 25.0, 50.0, d));
    checks.push(check(PA, M::Rk4, 25.0, 50.0, d));
    for m in [M::Ab4, M::Am4] {
        checks.push(check(PA, m, 50.0, 50.0, d));
        checks.push(check(PA, m, 25.0, 50.0, d));
    }
    let failures = run_checks("AC2", &checks);
    verdict(
        "AC2",
        "pure advection, infinite cells diverge",
        failures,
        checks.len(),
    );
}

#[test]
fn ac3_table2_reproduction() {
    let dt = 0.0125;
    let cols = [0.2, 0.1, 0.05, 0.025];
    // None marks an infinite reference cell.
    let rows: [(IntegratorId, [Option<f64>; 4]); 6] = [
        (
            M::Impoly,
            [
                Some(1.3818e-1),
                Some(9.9836e-3),
                Some(1.6755e-3),
                Some(1.6842e-3),
            ],
        ),
        (
            M::Heun,
            [
                Some(1.3818e-1),
                Some(9.9836e-3),
                Some(1.6755e-3),
                Some(1.6842e-3),
            ],
        ),
        (
            M::Rk3,
            [
                Some(1.3848e-1),
                Some(9.9843e-3),
                Some(1.1087e-4),
                Some(3.9909e-5),
            ],
        ),
        (
            M::Rk4,
            [
                Some(1.3855e-1),
                Some(9.9863e-3),
                Some(1.1070e-4),
                Some(8.8121e-7),
            ],
        ),
        (M::Ab4, [Some(1.3856e-1), Some(9.9860e-3), None, None]),
        (
            M::Am4,
            [Some(1.3855e-1), Some(9.9864e-3), Some(1.1073e-4), None],
        ),
    ];
    let mut checks = Vec::new();
    for (m, vals) in rows {
        for (c, v) in vals.into_iter().enumerate() {
            let expect = match v {
                Some(r) if c == 0 => Expect::Within(r, COARSE_TOL),
                Some(r) => Expect::Within(r, REL_TOL),
                None => Expect::Diverged,
            };
            checks.push(check(AD, m, cols[c], dt, expect));
        }
    }
    // coarse column for the remaining methods
    for (m, r) in [
        (M::Fore, 4.7876e-1),
        (M::Rk2, 1.3855e-1),
        (M::Rkf45, 1.3855e-1),
        (M::Rkck45, 1.3855e-1),
    ] {
        checks.push(check(AD, m, 0.2, dt, Expect::Within(r, COARSE_TOL)));
    }
    let start = Instant::now();
    let failures = run_checks("AC3", &checks);
    let elapsed = start.elapsed().as_secs_f64();
    println!("  [AC3] runtime {elapsed:.2}s (limit {RUNTIME_LIMIT_S}s)");
    let failures = failures + usize::from(elapsed >= RUNTIME_LIMIT_S);
    verdict(
        "AC3",
        "fadeout rows within 10%, coarse column within 5%",
        failures,
        checks.len() + 1,
    );
}

#[test]
fn ac4_variant_rows_order_of_magnitude() {
    let f = Expect::Factor;
    let checks = [
        check(PA, M::Rk2, 200.0, 50.0, f(3.9486e-1)),
        check(PA, M::Rk2, 25.0, 10.0, f(1.7442e-2)),
        check(PA, M::Rkf45, 200.0, 50.0, f(1.9186e-3)),
        check(PA, M::Rkf45, 50.0, 50.0, f(1.8497e-5)),
        check(PA, M::Rkf45, 25.0, 50.0, f(1.8834e-5)),
        check(PA, M::Rkf45, 25.0, 10.0, f(7.5235e-8)),
        check(PA, M::Rkck45, 200.0, 50.0, f(1.9183e-3)),
        check(PA, M::Rkck45, 50.0, 50.0, f(3.0192e-6)),
        check(PA, M::Rkck45, 25.0, 50.0, f(23025.3677)),
        check(PA, M::Rkck45, 25.0, 10.0, f(7.4091e-8)),
        check(AD, M::Rk2, 0.2, 0.0125, f(1.3855e-1)),
        check(AD, M::Rk2, 0.1, 0.0125, f(9.9836e-3)),
        check(AD, M::Rk2, 0.05, 0.0125, f(1.7655e-3)),
        check(AD, M::Rk2, 0.025, 0.0125, f(1.6842e-3)),
        check(AD, M::Rkf45, 0.2, 0.0125, f(1.3855e-1)),
        check(AD, M::Rkf45, 0.1, 0.0125, f(9.9863e-3)),
        check(AD, M::Rkf45, 0.05, 0.0125, f(1.1071e-4)),
        check(AD, M::Rkf45, 0.025, 0.0125, f(1.1869e-8)),
        check(AD, M::Rkck45, 0.2, 0.0125, f(1.3855e-1)),
        check(AD, M::Rkck45, 0.1, 0.0125, f(9.9863e-3)),
        check(AD, M::Rkck45, 0.05, 0.0125, f(1.1071e-4)),
        check(AD, M::Rkck45, 0.025, 0.0125, f(8.6012e-9)),
    ];
    let failures = run_checks("AC4", &checks);
    verdict(
        "AC4",
        "RK2/RKF45/RKCK45 within a factor of 10",
        failures,
        checks.len(),
    );
}

// ---------------------------------------------------------------------------
// AC5: property suite

fn uniform(n: usize, dx: f64) -> GridSpec {
    GridSpec::new(0.0, dx * (n - 1) as f64, n).unwrap()
}

fn weight_structure_ok() -> bool {
    for n in [5usize, 50, 361] {
        for dx in [0.025, 1.0, 25.0] {
            let g = uniform(n, dx);
            let h = g.dx();
            let w1 = first_order_weights(&g);
            let w2 = second_order_weights(&g);
            let g2 = uniform(n, 3.0 * dx);
            let s1 = first_order_weights(&g2);
            let s2 = second_order_weights(&g2);
            let s = g2.dx() / h;
            for m in 1..=n {
                if w1.get(m, m) != 0.0 || w2.get(m, m) != -PI * PI / (3.0 * h * h) {
                    return false;
                }
                for i in 1..=n {
                    if w1.get(m, i) != -w1.get(i, m) || w2.get(m, i) != w2.get(i, m) {
                        return false;
                    }
                    if m > 1
                        && i > 1
                        && (w1.get(m, i) != w1.get(m - 1, i - 1)
                            || w2.get(m, i) != w2.get(m - 1, i - 1))
                    {
                        return false;
                    }
                    let e1 =
                        (s1.get(m, i) - w1.get(m, i) / s).abs() <= 1e-14 * w1.get(m, i).abs() / s;
                    let e2 = (s2.get(m, i) - w2.get(m, i) / (s * s)).abs()
                        <= 1e-14 * w2.get(m, i).abs() / (s * s);
                    if !(e1 && e2) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn derivation_route_ok() -> bool {
    for n in 3..=12 {
        for dx in [0.025, 0.2, 1.0, 25.0, 200.0] {
            let g = uniform(n, dx);
            for p in [1u32, 2] {
                let closed = if p == 1 {
                    first_order_weights(&g)
                } else {
                    second_order_weights(&g)
                };
                let derived = DMatrix::from_fn(n, n, |m, i| {
                    sinc_derivative(g.node(m + 1), i + 1, &g, p).unwrap()
                });
                if (&derived - closed.matrix()).abs().max() > 1e-12 / g.dx().powi(p as i32) {
                    return false;
                }
            }
        }
    }
    true
}

fn rhs_oracle_ok() -> bool {
    let mut runner = TestRunner::new(Config {
        cases: 100,
        ..Config::default()
    });
    let strategy = (
        prop::sample::select(vec![5usize, 20, 101]),
        0.0f64..10.0,
        prop::collection::vec(-10.0f64..10.0, 99),
        -2.0f64..2.0,
        0.0f64..0.5,
    );
    runner
        .run(&strategy, |(n, t, seed, nu, lambda)| {
            let g = uniform(n, 0.1);
            let params = AdeParameters::new(nu, lambda).unwrap();
            let boundary = BoundarySpec::new(|t: f64| (0.3 * t).cos(), |t: f64| 2.0 - t);
            let sys = SemiDiscreteSystem::assemble(params, &g, boundary.clone()).unwrap();
            let u_int: Vec<f64> = seed.iter().copied().take(n - 2).collect();
            let got = sys.rhs(t, &u_int).unwrap();
            let w1 = first_order_weights(&g);
            let w2 = second_order_weights(&g);
            let full = boundary.full_state(t, &u_int);
            for m in 2..n {
                let terms: Vec<f64> = (1..=n)
                    .map(|i| (-nu * w1.get(m, i) + lambda * w2.get(m, i)) * full[i - 1])
                    .collect();
                let expected: f64 = terms.iter().sum();
                let scale: f64 = terms.iter().map(|v| v.abs()).sum();
                prop_assert!((got[m - 2] - expected).abs() <= 1e-13 * scale.max(f64::MIN_POSITIVE));
            }
            Ok(())
        })
        .is_ok()
}

fn temporal_orders_ok() -> bool {
    let decay = |_t: f64, u: &DVector<f64>| -u;
    let error = |m: IntegratorId, dt: f64| {
        let n = (1.0 / dt).round() as usize;
        let out = integrate(&decay, DVector::from_element(1, 1.0), dt, n, m).unwrap();
        (out.final_state.unwrap()[0] - (-1.0f64).exp()).abs()
    };
    let mut ok = true;
    for m in IntegratorId::ALL {
        let expected = 2f64.powi(m.order() as i32);
        let ratio = error(m, 0.1) / error(m, 0.05);
        let good = ratio >= 0.7 * expected && ratio <= 1.3 * expected;
        println!(
            "  [AC5] order {m:<7} ratio {ratio:8.3} (2^{} = {expected})  {}",
            m.order(),
            if good { "PASS" } else { "FAIL" }
        );
        ok &= good;
    }
    ok
}

fn bootstrap_identity_ok() -> bool {
    let rhs =
        |t: f64, u: &DVector<f64>| DVector::from_vec(vec![u[1], -u[0] - 0.2 * u[1] + t.cos()]);
    let u0 = DVector::from_vec(vec![0.5, -1.0]);
    let record = |m| {
        let mut states = Vec::new();
        integrate_observed(&rhs, u0.clone(), 0.05, 10, m, |k, _, u| {
            if k <= 3 {
                states.push(u.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
            }
        })
        .unwrap();
        states
    };
    let rk4 = record(M::Rk4);
    rk4.len() == 3 && record(M::Ab4) == rk4 && record(M::Am4) == rk4
}

fn pde_residual_ok() -> bool {
    let mut runner = TestRunner::new(Config {
        cases: 100,
        ..Config::default()
    });
    let strategy = (0.0f64..1.0, 0.0f64..1.0, prop::bool::ANY);
    runner
        .run(&strategy, |(fx, ft, advection)| {
            let p = if advection {
                ProblemSpec::pure_advection()
            } else {
                ProblemSpec::advection_dispersion()
            };
            let x = p.a + fx * (p.b - p.a);
            let t = 1e-3 + ft * (p.t_end - 1e-3);
            let h = 1e-5;
            let u = |x, t| p.exact_solution(x, t);
            let ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
            let ux = (u(x + h, t) - u(x - h, t)) / (2.0 * h);
            let uxx = (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
            let r = ut + p.params.nu * ux - p.params.lambda * uxx;
            prop_assert!(r.abs() < 1e-5, "residual {} at x={}, t={}", r, x, t);
            Ok(())
        })
        .is_ok()
}

type Property = (&'static str, fn() -> bool);

#[test]
fn ac5_property_suite() {
    let props: [Property; 6] = [
        (
            "weight structure (Toeplitz, symmetry, diagonal, scaling), N in {5,50,361}",
            weight_structure_ok,
        ),
        (
            "derivation route equals closed form, N <= 12, 1e-12/dx^p",
            derivation_route_ok,
        ),
        (
            "rhs equals brute-force sum, 100 draws, 1e-13 relative",
            rhs_oracle_ok,
        ),
        (
            "empirical temporal orders within 30% of 2^p",
            temporal_orders_ok,
        ),
        (
            "AB4/AM4 bootstrap bit-identical to RK4 for steps 1-3",
            bootstrap_identity_ok,
        ),
        (
            "exact solutions satisfy the PDE to 1e-5 at 100 samples",
            pde_residual_ok,
        ),
    ];
    let mut failures = 0;
    for (name, f) in props {
        let ok = f();
        println!("  [AC5] {}  {name}", if ok { "PASS" } else { "FAIL" });
        failures += usize::from(!ok);
    }
    verdict("AC5", "property suite", failures, props.len());
}

#[test]
fn ac6_table_report_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let output = Command::new(env!("CARGO_BIN_EXE_sdqm"))
            .args(["table", "--id", "1", "--out-dir"])
            .arg(&out)
            .output()
            .unwrap();
        let csv = std::fs::read_to_string(out.join("table1.csv")).unwrap();
        // drop the trailing wall_time_s column
        let csv: Vec<String> = csv
            .lines()
            .map(|l| {
                l.rsplit_once(',')
                    .map(|(head, _)| head.to_string())
                    .unwrap_or_default()
            })
            .collect();
        let txt = std::fs::read(out.join("table1.txt")).unwrap();
        (output.stdout, txt, csv)
    };
    let a = run("first");
    let b = run("second");
    let identical = a == b && !a.0.is_empty();
    verdict(
        "AC6",
        "two `table --id 1` runs produce identical reports",
        usize::from(!identical),
        1,
    );
}
