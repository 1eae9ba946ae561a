use std::io::Write;

use mrl_core::analytics::{
    a_constant_report, hko_prediction, im_constants, integral_m_explicit, inv_zeta_identity, j_lambda, swmh_ratio,
    zeta_eq_real, ZeroSumReport,
};
use mrl_core::explicit::{compare_direct_explicit, explicit_M_tau, BARTZ_WARNING, COMPARE_HEADER};
use mrl_core::kernel::{zeta_real, ComplexValue};
use mrl_core::moebius::{
    density_s_scaled, divim_sign_scan, riesz_mean_direct, tau_regime_scan, RieszQuery, TauSchedule,
};
use mrl_core::report::{format_float, Cell, CsvOut};
use mrl_core::zeros::verify_count;

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::{Command, IdentityArgs, IdentityKind, ScanKind, ScheduleName};

pub const EXPLICIT_HEADER: [&str; 11] = [
    "x", "tau", "T", "L", "zeros_used", "zero_sum", "s0_residue", "residue_sum", "explicit", "error_estimate", "bartz_mode",
];

fn json<W: Write, T: serde::Serialize>(out: &mut W, v: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

pub fn run<W: Write>(cfg: &RunConfig, cmd: Command, out: &mut W) -> Result<(), CliError> {
    match cmd {
        Command::Mertens { x } => {
            let mut engine = cfg.mertens_engine()?;
            let m = engine.mertens(x).map_err(CliError::from_moebius)?;
            engine.flush().map_err(CliError::from_moebius)?;
            writeln!(out, "{m}")?;
        }
        Command::Riesz { x, tau } => {
            let v = riesz_mean_direct(&RieszQuery::new(x, tau)).map_err(CliError::from_moebius)?;
            writeln!(out, "{}", format_float(v))?;
        }
        Command::Integral { x, kappa, weak } => {
            if !(x >= 1.0) || x > mrl_core::moebius::MAX_N as f64 {
                return Err(CliError::Usage(format!("x = {x} must lie in [1, {}]", mrl_core::moebius::MAX_N)));
            }
            let mut engine = cfg.mertens_engine()?;
            let v = if weak { engine.weak_mertens_integral(x) } else { engine.integral_m(x, kappa) }
                .map_err(CliError::from_moebius)?;
            engine.flush().map_err(CliError::from_moebius)?;
            writeln!(out, "{}", format_float(v))?;
        }
        Command::Explicit { x, tau, compare } => explicit(cfg, &x, tau, compare, out)?,
        Command::Identity(args) => identity(cfg, &args, out)?,
        Command::Scan { kind } => scan(cfg, kind, out)?,
        Command::Zeros { verify } => zeros(cfg, verify, out)?,
    }
    Ok(())
}

fn explicit<W: Write>(cfg: &RunConfig, xs: &[f64], tau: f64, compare: bool, out: &mut W) -> Result<(), CliError> {
    let table = cfg.zero_table_for_cutoff()?;
    if tau == 0.0 {
        eprintln!("warning: {BARTZ_WARNING}");
    }
    if compare {
        let rows = compare_direct_explicit(xs, tau, &table, cfg.t, cfg.l).map_err(CliError::from_explicit)?;
        if cfg.format == OutputFormat::Json {
            return json(out, &rows);
        }
        let mut w = CsvOut::new(out, &COMPARE_HEADER)?;
        for r in &rows {
            w.row(&[
                Cell::F(r.x),
                Cell::F(r.tau),
                Cell::F(r.t),
                Cell::U(r.l as u64),
                Cell::F(r.direct),
                Cell::F(r.explicit),
                Cell::F(r.abs_diff),
                Cell::F(r.error_estimate),
                Cell::B(r.within_estimate),
                r.note.as_deref().map_or(Cell::Empty, Cell::S),
            ])?;
        }
        return Ok(w.finish()?);
    }
    let evals = xs
        .iter()
        .map(|&x| explicit_M_tau(x, tau, &table, cfg.t, cfg.l))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::from_explicit)?;
    if cfg.format == OutputFormat::Json {
        return json(out, &evals);
    }
    let mut w = CsvOut::new(out, &EXPLICIT_HEADER)?;
    for e in &evals {
        w.row(&[
            Cell::F(e.x),
            Cell::F(e.tau),
            Cell::F(e.t),
            Cell::U(e.l as u64),
            Cell::U(e.zeros_used as u64),
            Cell::F(e.zero_sum),
            Cell::F(e.s0_residue),
            Cell::F(e.residue_sum),
            Cell::F(e.value()),
            Cell::F(e.error_estimate),
            Cell::B(e.bartz_mode),
        ])?;
    }
    Ok(w.finish()?)
}

fn identity<W: Write>(cfg: &RunConfig, a: &IdentityArgs, out: &mut W) -> Result<(), CliError> {
    let an = CliError::from_analytics;
    let report: ZeroSumReport = match a.kind {
        IdentityKind::Hko => {
            let mut rep = hko_prediction(a.lambda, cfg.t, a.prime_cutoff, a.g_terms).map_err(an)?;
            // pair with the observed moment when a table is available
            if cfg.zeros.is_some() {
                let table = cfg.zero_table_for_cutoff()?;
                let j = j_lambda(&table, a.lambda, cfg.t).map_err(an)?;
                rep.extra.insert("observed".into(), j.value.re());
                rep.extra.insert("observed_over_prediction".into(), j.value.re() / rep.value.re());
            }
            rep
        }
        kind => {
            let table = cfg.zero_table_for_cutoff()?;
            match kind {
                IdentityKind::InvZeta => inv_zeta_identity(ComplexValue::new(a.s, a.s_im), &table, cfg.t, cfg.l),
                IdentityKind::AConst => a_constant_report(a.kappa, &table, cfg.t, cfg.l),
                IdentityKind::ZetaReal => zeta_eq_real(a.kappa, &table, cfg.t, cfg.l),
                IdentityKind::Swmh => swmh_ratio(a.x, &table, cfg.t),
                IdentityKind::ImConst => im_constants(a.kappa, &table, cfg.t),
                IdentityKind::Jsum => j_lambda(&table, a.lambda, cfg.t),
                IdentityKind::IntegralM => integral_m_explicit(a.x, a.kappa, &table, cfg.t, cfg.l),
                IdentityKind::Hko => unreachable!("handled above"),
            }
            .map_err(an)?
        }
    };
    json(out, &report)
}

fn log_grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if points == 0 || !(from > 0.0) || !(to >= from) {
        return Err(CliError::Usage(format!("empty range: from {from} to {to} with {points} points")));
    }
    if points == 1 {
        return Ok(vec![from]);
    }
    let (a, b) = (from.ln(), to.ln());
    Ok((0..points)
        .map(|i| match i {
            0 => from,
            i if i + 1 == points => to,
            i => (a + (b - a) * i as f64 / (points - 1) as f64).exp(),
        })
        .collect())
}

fn opt(v: Option<f64>) -> Cell<'static> {
    v.map_or(Cell::S("undefined"), Cell::F)
}

fn scan<W: Write>(_cfg: &RunConfig, kind: ScanKind, out: &mut W) -> Result<(), CliError> {
    let mb = CliError::from_moebius;
    match kind {
        ScanKind::TauRegime { from, to, points, schedule, c } => {
            let xs = log_grid(from, to, points)?;
            let sched = match schedule {
                ScheduleName::Constant => TauSchedule::Constant(c),
                ScheduleName::InverseLog => TauSchedule::InverseLog(c),
                ScheduleName::Aszc => TauSchedule::Aszc(c),
            };
            let rows = tau_regime_scan(&xs, sched).map_err(mb)?;
            let mut w = CsvOut::new(out, &["x", "schedule", "tau", "m_tau", "normalized", "tau_scaled", "ln_mycon_factor"])?;
            let name = sched.name();
            for r in &rows {
                w.row(&[
                    Cell::F(r.x),
                    Cell::S(&name),
                    opt(r.tau),
                    opt(r.m_tau),
                    opt(r.normalized),
                    opt(r.tau_scaled),
                    opt(r.ln_mycon_factor),
                ])?;
            }
            w.finish()?;
        }
        ScanKind::Density { x, grid, c } => {
            if grid == 0 {
                return Err(CliError::Usage("empty range: grid must be positive".into()));
            }
            let r = density_s_scaled(x, grid, c).map_err(mb)?;
            let mut w = CsvOut::new(out, &["X", "c", "density"])?;
            for &(xi, v) in &r.trace {
                w.row(&[Cell::F(xi), Cell::F(c), Cell::F(v)])?;
            }
            w.finish()?;
        }
        ScanKind::DivimSign { kappa, x, keep } => {
            if !(x > 1.0) {
                return Err(CliError::Usage(format!("empty range: X = {x}")));
            }
            let offset = if kappa == 1.5 { 2.0 / zeta_real(0.5).map_err(|e| CliError::Usage(e.to_string()))? } else { 0.0 };
            let r = divim_sign_scan(kappa, offset, x, keep).map_err(mb)?;
            eprintln!("{} sign changes up to X = {}; normalized value at X: {}", r.total, format_float(x), format_float(r.final_value));
            let mut w = CsvOut::new(out, &["index", "x", "kappa", "offset"])?;
            for (i, &u) in r.crossings.iter().enumerate() {
                w.row(&[Cell::U(i as u64 + 1), Cell::F(u), Cell::F(kappa), Cell::F(offset)])?;
            }
            w.finish()?;
        }
    }
    Ok(())
}

fn zeros<W: Write>(cfg: &RunConfig, verify: bool, out: &mut W) -> Result<(), CliError> {
    let table = cfg.zero_table()?;
    if verify {
        let reports: Vec<_> = [50.0, 100.0, 500.0, 1000.0, cfg.t]
            .iter()
            .copied()
            .filter(|&t| t <= table.t_max)
            .fold(Vec::new(), |mut v, t| {
                if !v.contains(&t) {
                    v.push(t)
                }
                v
            })
            .into_iter()
            .map(|t| verify_count(&table, t))
            .collect();
        if cfg.format == OutputFormat::Json {
            return json(out, &reports);
        }
        let mut w = CsvOut::new(out, &["T", "observed", "main_term", "difference", "bound", "within_bound"])?;
        for r in &reports {
            w.row(&[
                Cell::F(r.t),
                Cell::U(r.observed as u64),
                Cell::F(r.main_term),
                Cell::F(r.difference),
                Cell::F(r.bound),
                Cell::B(r.within_bound),
            ])?;
        }
        return Ok(w.finish()?);
    }
    if cfg.format == OutputFormat::Json {
        return json(out, &table);
    }
    let mut w = CsvOut::new(out, &["index", "gamma", "zeta_prime_re", "zeta_prime_im"])?;
    for r in &table.records {
        let d = r.zeta_prime.unwrap_or_default();
        w.row(&[Cell::U(r.index), Cell::F(r.gamma), Cell::F(d.re), Cell::F(d.im)])?;
    }
    Ok(w.finish()?)
}
