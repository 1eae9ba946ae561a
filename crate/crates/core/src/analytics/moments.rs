//! Sums of powers of |ζ'(ρ)| and the constants built from them.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_height, zero_sum_traced, AnalyticsError, ReportKind, ReportValue, ZeroSumReport};
use crate::kernel::zeta_real;
use crate::moebius::weak_mertens_integral;
use crate::zeros::ZeroTable;

/// Heights T' at which the tail Σ_{T'<γ<=T} 1/|ρζ'(ρ)|² is reported.
pub const IM_TAIL_POINTS: [f64; 3] = [100.0, 300.0, 600.0];

/// J_λ(T) = Σ_{0<γ<=T} |ζ'(ρ)|^{2λ}.
pub fn j_lambda(table: &ZeroTable, lambda: f64, t: f64) -> Result<ZeroSumReport, AnalyticsError> {
    if !(lambda > -1.5) || !lambda.is_finite() {
        return Err(AnalyticsError::Domain(format!("J_lambda needs lambda > -3/2, got {lambda}")));
    }
    check_height(table, t)?;
    let (v, trace) = zero_sum_traced(table, t, |_, d| {
        // λ = 0 counts exactly, whatever |ζ'| is
        Complex64::new(if lambda == 0.0 { 1.0 } else { d.norm().powf(2.0 * lambda) }, 0.0)
    })?;
    let growth = if t > 1.0 { t * t.ln().powf((lambda + 1.0).powi(2)) } else { f64::NAN };
    let mut rep = ZeroSumReport::new(ReportKind::JLambda, &[("lambda", lambda), ("T", t)], ReportValue::Real(v.re))
        .with_extra(&[("zeros_used", table.count_up_to(t) as f64)])
        .with_trace(trace);
    if growth.is_finite() && growth > 0.0 {
        rep.extra.insert("growth_ratio".into(), v.re / growth);
    }
    if lambda == -1.0 && t > 0.0 {
        rep.extra.insert("sharp_ratio".into(), v.re / (3.0 / PI.powi(3) * t));
    }
    Ok(rep)
}

/// Σ over all zeros with |γ| <= T of 1/|ρζ'(ρ)|², with its partial trace.
pub fn inverse_square_sum(table: &ZeroTable, t: f64) -> Result<(f64, Vec<(f64, f64)>), AnalyticsError> {
    let (v, trace) = zero_sum_traced(table, t, |r, d| Complex64::new(2.0 / (r.rho() * d).norm_sqr(), 0.0))?;
    Ok((v.re, trace))
}

/// ∫₁ˣ(M(u)/u)²du / (log x · Σ_ρ 1/|ρζ'(ρ)|²). The value sums over all
/// zeros; `ratio_positive` uses only 0 < γ <= T, so it is twice as large.
pub fn swmh_ratio(x: f64, table: &ZeroTable, t: f64) -> Result<ZeroSumReport, AnalyticsError> {
    if !(x >= 10.0) {
        return Err(AnalyticsError::Domain(format!("swmh_ratio needs x >= 10, got {x}")));
    }
    check_height(table, t)?;
    let (sum_all, trace) = inverse_square_sum(table, t)?;
    if sum_all == 0.0 {
        return Err(AnalyticsError::DivisionByZero("no zeros below T".into()));
    }
    let integral = weak_mertens_integral(x)?;
    let ratio = integral / (x.ln() * sum_all);
    let mut rep = ZeroSumReport::new(ReportKind::SwmhRatio, &[("x", x), ("T", t)], ReportValue::Real(ratio))
        .with_extra(&[
            ("integral", integral),
            ("integral_over_log", integral / x.ln()),
            ("sum_all", sum_all),
            ("sum_positive", 0.5 * sum_all),
            ("ratio_positive", 2.0 * ratio),
        ])
        .with_trace(trace);
    // The integral is log x · Σ + O(1) with a sizeable constant, so the plain
    // ratio approaches 1 slowly. The growth over the last decade isolates
    // the slope.
    if x >= 100.0 {
        let below = weak_mertens_integral(x / 10.0)?;
        rep.extra.insert("increment_ratio".into(), (integral - below) / (std::f64::consts::LN_10 * sum_all));
    }
    Ok(rep)
}

/// Lower bound for the limsup (and upper bound for the liminf) of
/// x^{κ−3/2}∫₁ˣM(u)u^{−κ}du: ±(1/2)Σ_ρ 1/|ρ(ρ−κ+1)ζ'(ρ)|, offset by
/// 2/ζ(1/2) only when κ = 3/2.
pub fn im_constants(kappa: f64, table: &ZeroTable, t: f64) -> Result<ZeroSumReport, AnalyticsError> {
    if !(kappa <= 1.5) {
        return Err(AnalyticsError::Domain(format!("im_constants needs kappa <= 3/2, got {kappa}")));
    }
    check_height(table, t)?;
    let constant = if kappa == 1.5 { Some(2.0 / zeta_real(0.5)?) } else { None };
    // |ρ̄(ρ̄−κ+1)ζ'(ρ̄)| = |ρ(ρ−κ+1)ζ'(ρ)| for real κ
    let (full, trace) = zero_sum_traced(table, t, |r, d| {
        let rho = r.rho();
        Complex64::new(2.0 / (rho * (rho - kappa + 1.0) * d).norm(), 0.0)
    })?;
    let half = 0.5 * full.re;
    let c = constant.unwrap_or(0.0);
    let (weak, _) = inverse_square_sum(table, t)?;
    let mut rep = ZeroSumReport::new(ReportKind::ImConstants, &[("kappa", kappa), ("T", t)], ReportValue::Real(c + half))
        .with_extra(&[
            ("full_sum", full.re),
            ("half_sum", half),
            ("limsup_lower_bound", c + half),
            ("liminf_upper_bound", c - half),
            ("inverse_square_sum", weak),
        ])
        .with_trace(trace);
    if let Some(c) = constant {
        rep.extra.insert("constant".into(), c);
    }
    for &tp in IM_TAIL_POINTS.iter().filter(|&&tp| tp < t) {
        let (below, _) = inverse_square_sum(table, tp)?;
        let tail = weak - below;
        rep.extra.insert(format!("tail_{tp}"), tail);
        rep.extra.insert(format!("tail_times_height_{tp}"), tail * tp);
    }
    Ok(rep)
}
