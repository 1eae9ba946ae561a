//! Explicit formula for the Riesz mean:
//! M_τ(x) = Σ_ρ x^ρ Γ(ρ)/(ζ'(ρ)Γ(1+τ+ρ)) + Σ_{l>=0} Res_{s=−l}.

mod perron;
mod residue;
mod zero_sum;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::KernelError;
use crate::moebius::{riesz_mean_direct, MoebiusError, RieszQuery};
use crate::zeros::ZeroTable;

pub use perron::{perron_case_bound, perron_kernel_check, perron_target, PerronCheck, MAX_PHASE_STEP, PERRON_BOUND_CONSTANT};
pub use residue::{residue_series, residue_series_general, ResidueSeries, MAX_RESIDUE_INDEX};
pub use zero_sum::{zero_sum_term, ZeroSum, IMAGINARY_RESIDUE_TOLERANCE};
pub(crate) use zero_sum::derivative;


#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExplicitError {
    #[error("domain: {0}")]
    Domain(String),
    #[error("suspected multiple zero at gamma = {gamma}: |zeta'(rho)| = {modulus:e}")]
    MultipleZeroFlag { gamma: f64, modulus: f64 },
    #[error("paired zero sum kept an imaginary part {imag:e} against real part {real:e}")]
    ImaginaryResidue { real: f64, imag: f64 },
    #[error("quadrature step {step} does not resolve y^(it) for y = {y}")]
    QuadratureDiverged { step: f64, y: f64 },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

/// Calibration constants of the heuristic remainder. The true O-constants
/// are not known.
pub const ERROR_C1: f64 = 1.0;
pub const ERROR_C2: f64 = 1.0;
/// ε in T^{−1−τ+ε}.
pub const ERROR_EPSILON: f64 = 0.01;

/// c₁x²/(τT^τ) + c₂x²T^{−1−τ+ε}/log x. Infinite at τ = 0; log x is floored
/// at log 2 so that the estimate stays finite near x = 1.
pub fn error_estimate(x: f64, tau: f64, t: f64) -> f64 {
    if tau <= 0.0 || t <= 0.0 {
        return f64::INFINITY;
    }
    let lx = x.ln().max(std::f64::consts::LN_2);
    ERROR_C1 * x * x / (tau * t.powf(tau)) + ERROR_C2 * x * x * t.powf(-1.0 - tau + ERROR_EPSILON) / lx
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplicitEvaluation {
    pub x: f64,
    pub tau: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "L")]
    pub l: u32,
    pub zeros_used: usize,
    pub zero_sum: f64,
    /// Residues at s = −1..−L (the s = 0 residue is separate).
    pub residue_sum: f64,
    pub s0_residue: f64,
    pub residue_tail: f64,
    #[serde(with = "crate::report::float_repr")]
    pub error_estimate: f64,
    pub direct_value: Option<f64>,
    /// τ = 0: the zero sum is not known to converge.
    pub bartz_mode: bool,
}

impl ExplicitEvaluation {
    pub fn value(&self) -> f64 {
        self.zero_sum + self.s0_residue + self.residue_sum
    }

    /// |direct − explicit| once the direct value is attached.
    pub fn residual(&self) -> Option<f64> {
        self.direct_value.map(|d| (d - self.value()).abs())
    }
}

pub const BARTZ_WARNING: &str = "Bartz mode: convergence not guaranteed";

#[allow(non_snake_case)]
pub fn explicit_M_tau(x: f64, tau: f64, table: &ZeroTable, t: f64, l: u32) -> Result<ExplicitEvaluation, ExplicitError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(ExplicitError::Domain(format!("explicit formula needs x > 0, got {x}")));
    }
    let z = zero_sum_term(x, tau, table, t)?;
    let r = residue_series(x, tau, l)?;
    Ok(ExplicitEvaluation {
        x,
        tau,
        t,
        l,
        zeros_used: z.zeros_used,
        zero_sum: z.value,
        residue_sum: r.sum - r.s0_residue,
        s0_residue: r.s0_residue,
        residue_tail: r.tail_estimate,
        error_estimate: error_estimate(x, tau, t),
        direct_value: None,
        bartz_mode: tau == 0.0,
    })
}

/// [`explicit_M_tau`] with the sieved value attached.
pub fn explicit_with_direct(x: f64, tau: f64, table: &ZeroTable, t: f64, l: u32) -> Result<ExplicitEvaluation, ExplicitError> {
    let mut e = explicit_M_tau(x, tau, table, t, l)?;
    e.direct_value = Some(riesz_mean_direct(&RieszQuery::new(x, tau))?);
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub x: f64,
    pub tau: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "L")]
    pub l: u32,
    pub direct: f64,
    pub explicit: f64,
    pub abs_diff: f64,
    #[serde(with = "crate::report::float_repr")]
    pub error_estimate: f64,
    pub within_estimate: bool,
    pub note: Option<String>,
}

pub const COMPARE_HEADER: [&str; 10] =
    ["x", "tau", "T", "L", "direct", "explicit", "abs_diff", "error_estimate", "within_estimate", "note"];

/// One row per x. Integer x at τ = 0 carries a note: M jumps there and the
/// explicit side converges to the midpoint of the jump.
pub fn compare_direct_explicit(
    x_list: &[f64],
    tau: f64,
    table: &ZeroTable,
    t: f64,
    l: u32,
) -> Result<Vec<CompareRow>, ExplicitError> {
    x_list
        .iter()
        .map(|&x| {
            if !(x >= 1.0) {
                return Err(ExplicitError::Domain(format!("comparison needs x >= 1, got {x}")));
            }
            let e = explicit_with_direct(x, tau, table, t, l)?;
            let direct = e.direct_value.expect("attached");
            let abs_diff = (direct - e.value()).abs();
            let mut notes = Vec::new();
            if tau == 0.0 {
                notes.push(BARTZ_WARNING.to_string());
                if x.fract() == 0.0 {
                    notes.push("integer x: M jumps here, explicit side tends to the midpoint".to_string());
                }
            }
            Ok(CompareRow {
                x,
                tau,
                t,
                l,
                direct,
                explicit: e.value(),
                abs_diff,
                error_estimate: e.error_estimate,
                within_estimate: abs_diff <= e.error_estimate,
                note: if notes.is_empty() { None } else { Some(notes.join("; ")) },
            })
        })
        .collect()
}
