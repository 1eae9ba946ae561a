//! Empirical scans over the integer side: the logarithmic density of
//! S = {t : |M(t)| <= √t}, Riesz means along τ schedules, and sign changes of
//! the normalized weighted Mertens integral.

use serde::{Deserialize, Serialize};

use super::riesz::{check_x, riesz_mean_direct, unit_power_integral, RieszQuery};
use super::sieve::stream_mertens;
use super::MoebiusError;
use crate::kernel::ln_gamma_real;
use crate::sum::NeumaierSum;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub x: f64,
    pub value: f64,
    /// (X_i, estimate at X_i) on a log-spaced grid ending at X.
    pub trace: Vec<(f64, f64)>,
}

/// (1/log(X/2)) ∫_{[2,X]∩S} dt/t, with membership resolved exactly on each
/// unit step: on [n, n+1) the condition |M(n)| <= √t holds for t >= M(n)².
///
/// The normalization uses the measure of [2, X] rather than log X, so the
/// estimate lies in [0, 1] for every X; both tend to the same limit.
pub fn density_s(x_max: f64, grid: usize) -> Result<DensityReport, MoebiusError> {
    density_s_scaled(x_max, grid, 1.0)
}

/// As [`density_s`] for S_c = {t : |M(t)| <= c√t}. Since |M(t)| < √t far
/// beyond any sieveable range, c = 1 gives exactly 1 at desk scale and
/// smaller c is what makes the estimate informative.
pub fn density_s_scaled(x_max: f64, grid: usize, c: f64) -> Result<DensityReport, MoebiusError> {
    if !(c > 0.0) {
        return Err(MoebiusError::Domain(format!("density scale c = {c} must be positive")));
    }
    if !(x_max >= 4.0) {
        return Err(MoebiusError::Domain(format!("density needs X >= 4, got {x_max}")));
    }
    check_x(x_max)?;
    let grid = grid.max(1);
    let lx = (x_max / 2.0).ln();
    // checkpoints 2·(X/2)^{i/grid}
    let mut marks: Vec<f64> = (1..=grid).map(|i| 2.0 * (lx * i as f64 / grid as f64).exp()).collect();
    marks[grid - 1] = x_max;
    let mut trace = Vec::with_capacity(grid);
    let mut acc = NeumaierSum::new();
    let mut next = 0usize;
    let top = x_max.floor() as u64;
    let add_piece = |a: f64, b: f64, m: i64, acc: &mut NeumaierSum| {
        if b <= a {
            return;
        }
        // |M| <= c√t  ⇔  t >= (M/c)²
        let m2 = (m as f64 / c).powi(2);
        let lo = a.max(m2);
        if lo < b {
            acc.add(((b - lo) / lo).ln_1p());
        }
    };
    stream_mertens(top + 1, |n, _, m| {
        if n < 2 {
            return;
        }
        let a = n as f64;
        let b = (a + 1.0).min(x_max);
        while next < marks.len() && marks[next] <= b {
            let mk = marks[next].max(a);
            let mut part = acc;
            add_piece(a, mk, m, &mut part);
            let denom = (marks[next] / 2.0).ln();
            trace.push((marks[next], if denom > 0.0 { part.value() / denom } else { 1.0 }));
            next += 1;
        }
        add_piece(a, b, m, &mut acc);
    })?;
    let value = (acc.value() / lx).clamp(0.0, 1.0);
    if trace.last().is_none_or(|(t, _)| *t < x_max) {
        trace.push((x_max, value));
    }
    Ok(DensityReport { x: x_max, value, trace })
}

/// τ as a function of x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "c", rename_all = "snake_case")]
pub enum TauSchedule {
    /// τ = c.
    Constant(f64),
    /// τ = c / log x.
    InverseLog(f64),
    /// τ = c · log log x / log log log log x.
    Aszc(f64),
}

impl TauSchedule {
    pub fn tau_at(&self, x: f64) -> Result<f64, MoebiusError> {
        let undefined = || MoebiusError::ScheduleUndefined { x };
        let tau = match *self {
            TauSchedule::Constant(c) => c,
            TauSchedule::InverseLog(c) => {
                let l = x.ln();
                if l <= 0.0 {
                    return Err(undefined());
                }
                c / l
            }
            TauSchedule::Aszc(c) => {
                let l1 = x.ln();
                if l1 <= 0.0 {
                    return Err(undefined());
                }
                let l2 = l1.ln();
                if l2 <= 0.0 {
                    return Err(undefined());
                }
                let l3 = l2.ln();
                if l3 <= 0.0 {
                    return Err(undefined());
                }
                let l4 = l3.ln();
                if l4 <= 0.0 {
                    return Err(undefined());
                }
                c * l2 / l4
            }
        };
        if !(tau >= 0.0) || !tau.is_finite() {
            return Err(undefined());
        }
        Ok(tau)
    }

    pub fn name(&self) -> String {
        match self {
            TauSchedule::Constant(c) => format!("constant({c})"),
            TauSchedule::InverseLog(c) => format!("inverse_log({c})"),
            TauSchedule::Aszc(c) => format!("aszc({c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauRegimeRow {
    pub x: f64,
    /// None where the schedule is undefined.
    pub tau: Option<f64>,
    pub m_tau: Option<f64>,
    /// M_τ(x)/x^{1/2}
    pub normalized: Option<f64>,
    /// M_τ(x)·τ^{3/2}/x^{1/2}
    pub tau_scaled: Option<f64>,
    /// log of (τ/e)^{−τ−1}; kept in log form because it over/underflows fast.
    pub ln_mycon_factor: Option<f64>,
}

pub fn tau_regime_scan(x_list: &[f64], schedule: TauSchedule) -> Result<Vec<TauRegimeRow>, MoebiusError> {
    let mut rows = Vec::with_capacity(x_list.len());
    for &x in x_list {
        check_x(x)?;
        let tau = match schedule.tau_at(x) {
            Ok(t) => t,
            Err(MoebiusError::ScheduleUndefined { .. }) => {
                rows.push(TauRegimeRow {
                    x,
                    tau: None,
                    m_tau: None,
                    normalized: None,
                    tau_scaled: None,
                    ln_mycon_factor: None,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let m = riesz_mean_direct(&RieszQuery::new(x, tau))?;
        let root = x.sqrt();
        let ln_mycon = if tau > 0.0 { Some(-(tau + 1.0) * (tau.ln() - 1.0)) } else { None };
        rows.push(TauRegimeRow {
            x,
            tau: Some(tau),
            m_tau: Some(m),
            normalized: Some(m / root),
            tau_scaled: Some(m * tau.powf(1.5) / root),
            ln_mycon_factor: ln_mycon,
        });
    }
    Ok(rows)
}

/// Value M_τ(x) takes when only n = 1 survives, (1 − 1/x)^τ/Γ(1+τ); the
/// large-τ limit of the schedules above.
pub fn single_term_limit(x: f64, tau: f64) -> f64 {
    (tau * (-1.0 / x).ln_1p() - ln_gamma_real(1.0 + tau).expect("τ >= 0")).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignChangeReport {
    pub kappa: f64,
    pub x_max: f64,
    /// Constant subtracted before normalizing (2/ζ(1/2) at κ = 3/2, else 0).
    pub offset: f64,
    pub total: usize,
    /// First abscissae where the normalized integral crosses zero.
    pub crossings: Vec<f64>,
    /// Normalized value at x_max.
    pub final_value: f64,
}

fn power_antiderivative_inverse(f_val: f64, kappa: f64) -> f64 {
    // inverse of F(u) = u^{1−κ}/(1−κ), or log u at κ = 1
    if kappa == 1.0 {
        f_val.exp()
    } else {
        let e = 1.0 - kappa;
        (f_val * e).powf(1.0 / e)
    }
}

fn power_antiderivative(u: f64, kappa: f64) -> f64 {
    if kappa == 1.0 {
        u.ln()
    } else {
        let e = 1.0 - kappa;
        u.powf(e) / e
    }
}

/// Sign changes of (∫₁^x M(u)u^{−κ}du − offset)/x^{3/2−κ} on [1, x_max].
///
/// On [n, n+1) the integral is monotone with slope M(n)u^{−κ}, so each
/// crossing is found in closed form.
pub fn divim_sign_scan(
    kappa: f64,
    offset: f64,
    x_max: f64,
    keep: usize,
) -> Result<SignChangeReport, MoebiusError> {
    check_x(x_max)?;
    if kappa > 1.5 {
        return Err(MoebiusError::Domain(format!("kappa = {kappa} must be <= 3/2")));
    }
    let top = x_max.floor() as u64;
    let mut integral = NeumaierSum::new();
    let mut crossings = Vec::new();
    let mut total = 0usize;
    let mut prev_sign = (0.0 - offset).signum();
    stream_mertens(top + 1, |n, _, m| {
        let a = n as f64;
        let b = if n == top { x_max } else { a + 1.0 };
        if b <= a {
            return;
        }
        let start = integral.value() - offset;
        let piece = m as f64 * unit_power_integral(a, b, kappa);
        let end = start + piece;
        let end_sign = end.signum();
        if m != 0 && end_sign != prev_sign && end != 0.0 {
            total += 1;
            if crossings.len() < keep {
                // solve start + M(F(u) − F(a)) = 0
                let target = power_antiderivative(a, kappa) - start / m as f64;
                let u = power_antiderivative_inverse(target, kappa).clamp(a, b);
                crossings.push(u);
            }
            prev_sign = end_sign;
        }
        integral.add(piece);
    })?;
    let final_value = (integral.value() - offset) / x_max.powf(1.5 - kappa);
    Ok(SignChangeReport { kappa, x_max, offset, total, crossings, final_value })
}
