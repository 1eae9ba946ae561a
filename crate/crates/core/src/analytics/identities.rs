//! A(κ), the zero-sum representation of 1/ζ(s), and the integral of M(u)u^{−κ}.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_height, shift_trace, zero_sum_traced, AnalyticsError, ReportKind, ReportValue, ZeroSumReport};
use crate::kernel::{ln_factorial, zeta, zeta_real, Precision, LN_2PI};
use crate::moebius::integral_m;
use crate::sum::{ComplexSum, NeumaierSum};
use crate::zeros::ZeroTable;

/// 2(−1)^l (2l−2)! (2π)^{2l} / ({(2l)!}² ζ(2l+1)), built from logarithms.
pub fn trivial_coefficient(l: u32) -> Result<f64, AnalyticsError> {
    if l == 0 {
        return Err(AnalyticsError::Domain("trivial coefficients start at l = 1".into()));
    }
    let l2 = 2 * l as u64;
    let ln = std::f64::consts::LN_2 + ln_factorial(l2 - 2) + l2 as f64 * LN_2PI
        - 2.0 * ln_factorial(l2)
        - zeta_real((l2 + 1) as f64)?.ln();
    Ok(if l.is_multiple_of(2) { ln.exp() } else { -ln.exp() })
}

/// Σ_{l=1}^{L} c_l / (2l + shift), plus |next ten terms| as a tail figure.
fn trivial_series(shift: Complex64, l_max: u32) -> Result<(Complex64, f64), AnalyticsError> {
    let mut acc = ComplexSum::new();
    for l in 1..=l_max {
        let den = 2.0 * l as f64 + shift;
        if den.norm() == 0.0 {
            return Err(AnalyticsError::SingularPoint(format!("2l + s vanishes at l = {l}")));
        }
        acc.add(trivial_coefficient(l)? / den);
    }
    let mut tail = NeumaierSum::new();
    for l in l_max + 1..=l_max + 10 {
        tail.add((trivial_coefficient(l)? / (2.0 * l as f64 + shift)).norm());
    }
    Ok((acc.value(), tail.value()))
}

/// Rough size of the zero sum past T: terms ~ 2/(|ζ'|γ³), zero density
/// log(t/2π)/2π, with |1/ζ'| replaced by its mean over the last zeros used.
fn zero_tail(table: &ZeroTable, t: f64) -> f64 {
    let z = table.up_to(t);
    if z.is_empty() {
        return f64::INFINITY;
    }
    let last = &z[z.len().saturating_sub(100)..];
    let mean: f64 = last.iter().filter_map(|r| r.zeta_prime).map(|d| 1.0 / d.norm()).sum::<f64>() / last.len() as f64;
    let top = z[z.len() - 1].gamma;
    2.0 * mean * ((top / (2.0 * PI)).ln() + 0.5) / (4.0 * PI * top * top)
}

/// A(κ) with both truncations, as a report.
pub fn a_constant_report(kappa: f64, table: &ZeroTable, t: f64, l_max: u32) -> Result<ZeroSumReport, AnalyticsError> {
    if kappa == 1.0 {
        return Err(AnalyticsError::PoleAtKappaOne);
    }
    if !kappa.is_finite() {
        return Err(AnalyticsError::Domain(format!("kappa = {kappa}")));
    }
    check_height(table, t)?;
    let head = (10.0 * kappa - 12.0) / (kappa - 1.0);
    let (triv, triv_tail) = trivial_series(Complex64::new(kappa - 1.0, 0.0), l_max)?;
    // all zeros: ρ and ρ̄ give conjugate terms for real κ
    let (zs, mut trace) = zero_sum_traced(table, t, |r, d| {
        let rho = r.rho();
        let w = 1.0 / (d * rho * (rho + 1.0) * (rho - kappa + 1.0));
        w + w.conj()
    })?;
    let fixed = head + kappa * triv.re;
    shift_trace(&mut trace, -kappa, fixed);
    let value = fixed - kappa * zs.re;
    Ok(ZeroSumReport::new(ReportKind::AKappa, &[("kappa", kappa), ("T", t), ("L", l_max as f64)], ReportValue::Real(value))
        .with_extra(&[
            ("head", head),
            ("trivial_sum", kappa * triv.re),
            ("zero_sum", -kappa * zs.re),
            ("trivial_tail", kappa.abs() * triv_tail),
            ("zero_tail", kappa.abs() * zero_tail(table, t)),
            ("zeros_used", table.count_up_to(t) as f64),
        ])
        .with_trace(trace))
}

/// A(κ) = (10κ−12)/(κ−1) + κΣ_l c_l/(2l+κ−1) − κΣ_ρ 1/(ζ'(ρ)ρ(ρ+1)(ρ−κ+1)).
pub fn a_constant(kappa: f64, table: &ZeroTable, t: f64, l_max: u32) -> Result<f64, AnalyticsError> {
    Ok(a_constant_report(kappa, table, t, l_max)?.value.re())
}

/// 1/ζ(s) against 10s − 2 + s(s+1)Σ_l c_l/(2l+s) − s(s+1)Σ_ρ 1/(ζ'(ρ)ρ(ρ+1)(ρ−s)).
pub fn inv_zeta_identity(s: Complex64, table: &ZeroTable, t: f64, l_max: u32) -> Result<ZeroSumReport, AnalyticsError> {
    if s.im == 0.0 && s.re < 0.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 == 0 {
        return Err(AnalyticsError::SingularPoint(format!("s = {} is a trivial zero", s.re)));
    }
    check_height(table, t)?;
    if let Some(r) = table.records.iter().find(|r| (r.rho() - s).norm() < 1e-9 || (r.rho().conj() - s).norm() < 1e-9) {
        return Err(AnalyticsError::SingularPoint(format!("s is the zero 1/2 ± {}i", r.gamma)));
    }
    let target = if s == Complex64::new(1.0, 0.0) { Complex64::new(0.0, 0.0) } else { 1.0 / zeta(s, Precision::DOUBLE)? };
    if !(target.re.is_finite() && target.im.is_finite()) {
        return Err(AnalyticsError::SingularPoint("zeta vanishes at s".into()));
    }
    let f = s * (s + 1.0);
    let (triv, triv_tail) = trivial_series(s, l_max)?;
    let (zs, mut trace) = zero_sum_traced(table, t, |r, d| {
        let up = r.rho();
        let dn = up.conj();
        1.0 / (d * up * (up + 1.0) * (up - s)) + 1.0 / (d.conj() * dn * (dn + 1.0) * (dn - s))
    })?;
    let fixed = 10.0 * s - 2.0 + f * triv;
    // the trace records real parts; for real s it is the partial identity itself
    let zero_scale = -f.re;
    shift_trace(&mut trace, zero_scale, fixed.re);
    let rhs = fixed - f * zs;
    let residual = (rhs - target).norm();
    let mut rep = ZeroSumReport::new(
        ReportKind::InvZeta,
        &[("s_re", s.re), ("s_im", s.im), ("T", t), ("L", l_max as f64)],
        if s.im == 0.0 { ReportValue::Real(rhs.re) } else { rhs.into() },
    )
    .with_extra(&[
        ("target_re", target.re),
        ("target_im", target.im),
        ("constant", (10.0 * s - 2.0).re),
        ("factor", f.re),
        ("trivial_tail", f.norm() * triv_tail),
        ("zero_tail", f.norm() * zero_tail(table, t)),
        ("zeros_used", table.count_up_to(t) as f64),
    ])
    .with_trace(trace);
    rep.residual = Some(residual);
    Ok(rep)
}

/// |1/ζ(κ) − κA(κ+1)|. At κ = 1 the target is 1/ζ(1) = 0.
pub fn zeta_eq_real(kappa: f64, table: &ZeroTable, t: f64, l_max: u32) -> Result<ZeroSumReport, AnalyticsError> {
    if !(kappa > 0.5) || !kappa.is_finite() {
        return Err(AnalyticsError::Domain(format!("zeta_eq_real needs kappa > 1/2, got {kappa}")));
    }
    let a = a_constant_report(kappa + 1.0, table, t, l_max)?;
    let target = if kappa == 1.0 { 0.0 } else { 1.0 / zeta_real(kappa)? };
    let value = kappa * a.value.re();
    let mut trace = a.trace.clone();
    shift_trace(&mut trace, kappa, 0.0);
    let mut rep = ZeroSumReport::new(ReportKind::ZetaEqReal, &[("kappa", kappa), ("T", t), ("L", l_max as f64)], ReportValue::Real(value))
        .with_extra(&[("target", target), ("A", a.value.re())])
        .with_trace(trace);
    rep.residual = Some((value - target).abs());
    Ok(rep)
}

/// ∫₁ˣ M(u)u^{−κ}du against x^{3/2−κ}Σ_ρ x^{iγ}/(ζ'(ρ)ρ(ρ+1−κ)) (+ A(κ) when κ > 1).
pub fn integral_m_explicit(x: f64, kappa: f64, table: &ZeroTable, t: f64, l_max: u32) -> Result<ZeroSumReport, AnalyticsError> {
    if !(x >= 1.0) {
        return Err(AnalyticsError::Domain(format!("integral needs x >= 1, got {x}")));
    }
    check_height(table, t)?;
    let direct = integral_m(x, kappa)?;
    let lx = x.ln();
    let scale = x.powf(1.5 - kappa);
    let (zs, mut trace) = zero_sum_traced(table, t, |r, d| {
        let rho = r.rho();
        let w = Complex64::from_polar(1.0, r.gamma * lx) / (d * rho * (rho + 1.0 - kappa));
        w + w.conj()
    })?;
    let zero_term = scale * zs.re;
    let a = if kappa > 1.0 { a_constant(kappa, table, t, l_max)? } else { 0.0 };
    shift_trace(&mut trace, scale, a);
    let predicted = zero_term + a;
    let residual = (direct - predicted).abs();
    // E_κ(x) − A(κ) is O(x^{1−κ}) for κ > 1 and E_κ(x) itself is O(x^{1−κ}) for κ < 1
    let remainder_scale = if kappa == 1.0 { lx.max(1.0) } else { x.powf(1.0 - kappa) };
    let mut rep = ZeroSumReport::new(ReportKind::IntegralM, &[("x", x), ("kappa", kappa), ("T", t), ("L", l_max as f64)], ReportValue::Real(predicted))
        .with_extra(&[
            ("direct", direct),
            ("zero_term", zero_term),
            ("A", a),
            ("normalized_direct", direct / scale),
            ("normalized_residual", residual / remainder_scale),
        ])
        .with_trace(trace);
    rep.residual = Some(residual);
    Ok(rep)
}

impl ZeroSumReport {
    pub(crate) fn with_trace(mut self, trace: Vec<(f64, f64)>) -> Self {
        self.trace = trace;
        self
    }
}
