//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.
//! Runs without the libtest harness so every line reaches the log.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mrl_core::analytics::{inv_zeta_identity, j_lambda, swmh_ratio, zeta_eq_real};
use mrl_core::explicit::{explicit_with_direct, perron_kernel_check, residue_series, PERRON_BOUND_CONSTANT};
use mrl_core::kernel::{zeta_real, Precision};
use mrl_core::moebius::{
    divim_sign_scan, mertens, riesz_mean_direct, riesz_recurrence_check, sieve_segment, weak_mertens_integral,
    RieszQuery,
};
use mrl_core::zeros::{find_zeros, verify_count, ZeroTable, BUILTIN_T_MAX};
use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn mu_by_trial_division(mut n: u64) -> i8 {
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn gamma(table: &ZeroTable, k: usize) -> f64 {
    table.gamma(k).expect("table holds 649 zeros")
}

fn sieve_correctness() -> Outcome {
    let seg = sieve_segment(1, 100_001).unwrap();
    let bad = (1..=100_000u64).filter(|&n| seg.get(n) != Some(mu_by_trial_division(n))).count();
    let (m10, m2) = (mertens(10).unwrap(), mertens(2).unwrap());
    outcome(bad == 0 && m10 == -1 && m2 == 0, format!("mismatches {bad}, M(10) = {m10}, M(2) = {m2}"))
}

fn kernel_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut fails = 0;
    for &y in &[0.5, 0.9, 1.1, 2.0, 10.0] {
        for &tau in &[0.5, 1.0, 2.0] {
            let c = perron_kernel_check(y, tau, 2.0, 200.0, 0.01).unwrap();
            worst = worst.max(c.fitted_constant);
            if !(c.within_bound && c.fitted_constant <= 10.0) {
                fails += 1;
            }
        }
    }
    outcome(fails == 0, format!("15 points, {fails} outside bound, largest fitted constant {worst:.3e} (bound constant {PERRON_BOUND_CONSTANT})"))
}

fn explicit_formula(table: &ZeroTable) -> Outcome {
    let heights: Vec<f64> = [100, 200, 400, 649].iter().map(|&k| gamma(table, k)).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for &x in &[10.5, 50.5, 100.5] {
        let r: Vec<f64> = heights
            .iter()
            .map(|&t| explicit_with_direct(x, 1.0, table, t, 40).unwrap().residual().unwrap())
            .collect();
        let steps_ok = r.windows(2).all(|w| w[1] <= 1.1 * w[0]);
        let drop_ok = r[3] * 2.0 <= r[0];
        pass &= steps_ok && drop_ok;
        let shown: Vec<String> = r.iter().map(|v| format!("{v:.3e}")).collect();
        parts.push(format!(
            "x={x}: [{}]{}",
            shown.join(", "),
            match (steps_ok, drop_ok) {
                (true, true) => "",
                (false, true) => " step >10%",
                (true, false) => " drop <2x",
                (false, false) => " step >10%, drop <2x",
            }
        ));
    }
    outcome(pass, parts.join("; "))
}

fn residue_tail() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for &x in &[2.0, 10.0, 100.0] {
        for &tau in &[0.5, 1.0, 2.0] {
            let a = residue_series(x, tau, 40).unwrap().sum;
            let b = residue_series(x, tau, 20).unwrap().sum;
            let d = (a - b).abs();
            worst = worst.max(d * x);
            pass &= d <= 1e-6 / x;
        }
    }
    outcome(pass, format!("max x·|R40 − R20| = {worst:.3e}, limit 1e-6"))
}

fn inverse_zeta_values(table: &ZeroTable) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &s in &[3.0, 5.0] {
        let full = inv_zeta_identity(Complex64::new(s, 0.0), table, gamma(table, 649), 40).unwrap();
        let few = inv_zeta_identity(Complex64::new(s, 0.0), table, gamma(table, 100), 40).unwrap();
        let (rf, r100) = (full.residual.unwrap(), few.residual.unwrap());
        pass &= rf.is_finite() && r100.is_finite() && rf < r100 && !full.trace.is_empty();
        parts.push(format!("1/zeta({s}): 649 zeros {rf:.3e}, 100 zeros {r100:.3e}, trace {} points", full.trace.len()));
    }
    outcome(pass, parts.join("; "))
}

fn zero_counting(table: &ZeroTable) -> Outcome {
    let reports: Vec<_> = [50.0, 100.0, 500.0, 1000.0].iter().map(|&t| verify_count(table, t)).collect();
    let pass = reports.iter().all(|r| r.within_bound);
    let shown: Vec<String> = reports.iter().map(|r| format!("N({})={} diff {:.3}", r.t, r.observed, r.difference)).collect();
    outcome(pass, shown.join(", "))
}

fn moment_sums(table: &ZeroTable) -> Outcome {
    let exact = [50.0, 100.0, 500.0, 1000.0]
        .iter()
        .all(|&t| j_lambda(table, 0.0, t).unwrap().value.re() == table.count_up_to(t) as f64);
    let j = j_lambda(table, -1.0, 1000.0).unwrap().value.re();
    let ratio = j / (3.0 / PI.powi(3) * 1000.0);
    outcome(exact && (0.5..=1.5).contains(&ratio), format!("J0 = N exact: {exact}, J-1(1000)/(3T/pi^3) = {ratio:.4}"))
}

fn riesz_recurrence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x: f64 = rng.gen_range(1.0..1e5);
        let m1 = riesz_mean_direct(&RieszQuery::new(x, 1.0)).unwrap();
        let r = riesz_recurrence_check(x, 1).unwrap();
        worst = worst.max(r / (x * (1.0 + m1.abs())));
    }
    outcome(worst <= 1e-9, format!("max residual/(x(1+|M1|)) = {worst:.3e}"))
}

/// Fixed ahead of the run: Σ 1/|ρζ'(ρ)|² ≈ 0.029 is the conjectured limit and
/// desk-scale values sit a few times above it.
const WEAK_MERTENS_CONSTANT: f64 = 1.0;

fn weak_mertens(table: &ZeroTable) -> Outcome {
    let xs = [1e3, 1e4, 1e5, 1e6];
    let ratios: Vec<f64> = xs.iter().map(|&x| weak_mertens_integral(x).unwrap() / x.ln()).collect();
    let pass = ratios.iter().all(|r| r.is_finite() && *r > 0.0 && *r <= WEAK_MERTENS_CONSTANT);
    let swmh: Vec<String> = xs
        .iter()
        .map(|&x| format!("{:.3}", swmh_ratio(x, table, 1000.0).unwrap().value.re()))
        .collect();
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
    outcome(
        pass,
        format!("I(x)/log x = [{}] <= {WEAK_MERTENS_CONSTANT}; swmh ratio (informational) [{}]", shown.join(", "), swmh.join(", ")),
    )
}

fn real_zeta_equation(table: &ZeroTable) -> Outcome {
    let full = zeta_eq_real(2.0, table, gamma(table, 649), 40).unwrap().residual.unwrap();
    let few = zeta_eq_real(2.0, table, gamma(table, 100), 40).unwrap().residual.unwrap();
    outcome(full < few && full < 1e-2, format!("kappa=2: 649 zeros {full:.3e}, 100 zeros {few:.3e}"))
}

fn divim_sign_changes() -> Outcome {
    let offset = 2.0 / zeta_real(0.5).unwrap();
    let r = divim_sign_scan(1.5, offset, 1e7, 10).unwrap();
    let first = r.crossings.first().map_or("none".to_string(), |u| format!("{u:.1}"));
    outcome(!r.crossings.is_empty(), format!("{} sign changes up to 1e7, first at {first} (evidence only)", r.total))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let table = find_zeros(BUILTIN_T_MAX, Precision::DOUBLE).expect("builtin zero table");
    assert!(table.count_up_to(1000.0) == 649, "builtin table must hold the 649 zeros below 1000");
    println!("zero table: {} zeros up to {} in {:.1?}", table.len(), table.t_max, started.elapsed());

    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Option<Duration>, Check)> = vec![
        ("sieve correctness", Some(Duration::from_secs(5)), Box::new(sieve_correctness)),
        ("kernel identity", Some(Duration::from_secs(30)), Box::new(kernel_identity)),
        ("explicit formula convergence", Some(Duration::from_secs(120)), Box::new(|| explicit_formula(&table))),
        ("residue series tail", None, Box::new(residue_tail)),
        ("1/zeta(3) and 1/zeta(5) identities", None, Box::new(|| inverse_zeta_values(&table))),
        ("zero counting", None, Box::new(|| zero_counting(&table))),
        ("moment sums J0 and J-1", None, Box::new(|| moment_sums(&table))),
        ("Riesz recurrence", None, Box::new(riesz_recurrence)),
        ("weak Mertens shape", None, Box::new(|| weak_mertens(&table))),
        ("real zeta equation", None, Box::new(|| real_zeta_equation(&table))),
        ("divIM sign changes", None, Box::new(divim_sign_changes)),
    ];

    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let mut o = check();
        let took = t0.elapsed();
        if let Some(limit) = limit {
            if took > *limit {
                o.pass = false;
                o.detail.push_str(&format!("; over time limit {limit:?}"));
            }
        }
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {} [{took:.2?}]", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
