//! Aggregates over the zeros and the identities that tie them back to ζ.
//!
//! Convention: "all zeros" sums pair each stored γ > 0 with its conjugate.
//! J_λ and the counting sums run over 0 < γ <= T only. Each function says
//! which one it uses.

mod hko;
mod identities;
mod moments;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::explicit::{derivative, ExplicitError};
use crate::kernel::KernelError;
use crate::moebius::MoebiusError;
use crate::sum::ComplexSum;
use crate::zeros::{ZeroRecord, ZeroTable};

pub use hko::{barnes_g, hko_prediction, ln_barnes_g, HKO_LAMBDA_MAX};
pub use identities::{
    a_constant, a_constant_report, integral_m_explicit, inv_zeta_identity, trivial_coefficient, zeta_eq_real,
};
pub use moments::{im_constants, inverse_square_sum, j_lambda, swmh_ratio, IM_TAIL_POINTS};

pub const DEFAULT_L: u32 = 40;
pub const DEFAULT_PRIME_CUTOFF: u64 = 10_000;
pub const DEFAULT_G_TERMS: usize = 200;
/// A partial value is recorded after every this many zeros.
pub const TRACE_STRIDE: usize = 50;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    #[error("domain: {0}")]
    Domain(String),
    #[error("A(kappa) has a pole at kappa = 1")]
    PoleAtKappaOne,
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("cutoff T = {t} lies above the table height {t_max}")]
    BeyondTable { t: f64, t_max: f64 },
    #[error("lambda = {0} is outside the supported set {{-1, -1/2}} ∪ [0, 6]")]
    UnsupportedLambda(f64),
    #[error(transparent)]
    Explicit(#[from] ExplicitError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportKind {
    #[serde(rename = "J_lambda")]
    JLambda,
    #[serde(rename = "A_kappa")]
    AKappa,
    #[serde(rename = "inv_zeta")]
    InvZeta,
    #[serde(rename = "zeta_eq_real")]
    ZetaEqReal,
    #[serde(rename = "swmh_ratio")]
    SwmhRatio,
    #[serde(rename = "im_constants")]
    ImConstants,
    #[serde(rename = "integral_M")]
    IntegralM,
    #[serde(rename = "hko")]
    Hko,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportValue {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl ReportValue {
    pub fn re(&self) -> f64 {
        match *self {
            ReportValue::Real(v) => v,
            ReportValue::Complex { re, .. } => re,
        }
    }
}

impl From<Complex64> for ReportValue {
    fn from(z: Complex64) -> Self {
        ReportValue::Complex { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSumReport {
    pub kind: ReportKind,
    pub params: BTreeMap<String, f64>,
    pub value: ReportValue,
    /// (cutoff, partial value); cutoffs strictly increasing.
    pub trace: Vec<(f64, f64)>,
    pub residual: Option<f64>,
    /// Derived quantities, named.
    pub extra: BTreeMap<String, f64>,
}

impl ZeroSumReport {
    pub(crate) fn new(kind: ReportKind, params: &[(&str, f64)], value: ReportValue) -> Self {
        Self {
            kind,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            value,
            trace: Vec::new(),
            residual: None,
            extra: BTreeMap::new(),
        }
    }

    pub(crate) fn with_extra(mut self, items: &[(&str, f64)]) -> Self {
        self.extra.extend(items.iter().map(|&(k, v)| (k.to_string(), v)));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports hold finite floats")
    }
}

pub(crate) fn check_height(table: &ZeroTable, t: f64) -> Result<(), AnalyticsError> {
    if !table.is_empty() && t > table.t_max {
        return Err(AnalyticsError::BeyondTable { t, t_max: table.t_max });
    }
    Ok(())
}

/// Σ over ρ with 0 < γ <= T of `term(ρ, ζ'(ρ))`, ascending and compensated,
/// with a partial value every TRACE_STRIDE zeros and at the end. The
/// closure includes the conjugate zero itself when the sum runs over all
/// zeros.
pub(crate) fn zero_sum_traced(
    table: &ZeroTable,
    t: f64,
    mut term: impl FnMut(&ZeroRecord, Complex64) -> Complex64,
) -> Result<(Complex64, Vec<(f64, f64)>), AnalyticsError> {
    let zeros = table.up_to(t);
    let mut acc = ComplexSum::new();
    let mut trace = Vec::new();
    for (i, r) in zeros.iter().enumerate() {
        let d = derivative(r)?;
        acc.add(term(r, d));
        if (i + 1) % TRACE_STRIDE == 0 || i + 1 == zeros.len() {
            trace.push((r.gamma, acc.value().re));
        }
    }
    Ok((acc.value(), trace))
}

/// Shift a trace of partial sums by a constant.
pub(crate) fn shift_trace(trace: &mut [(f64, f64)], scale: f64, offset: f64) {
    for p in trace {
        p.1 = scale * p.1 + offset;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_round_trip() {
        let mut r = ZeroSumReport::new(ReportKind::InvZeta, &[("s", 3.0)], ReportValue::Real(0.8319));
        r.trace = vec![(14.1, 0.8), (21.0, 0.83)];
        r.residual = Some(1e-5);
        let r = r.with_extra(&[("target", 0.83)]);
        let back: ZeroSumReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let c = ZeroSumReport::new(ReportKind::Hko, &[], Complex64::new(1.0, -2.0).into());
        let back: ZeroSumReport = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(c.to_json().contains("\"kind\": \"hko\""));
    }
}
