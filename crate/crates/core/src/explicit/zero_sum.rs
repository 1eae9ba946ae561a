use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ExplicitError;
use crate::kernel::{gamma_ratio, zeta_deriv, Precision};
use crate::sum::ComplexSum;
use crate::zeros::{ZeroRecord, ZeroTable, MULTIPLE_ZERO_THRESHOLD};

/// Largest tolerated |Im| of the paired sum relative to its real part.
pub const IMAGINARY_RESIDUE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroSum {
    pub value: f64,
    /// Imaginary part of the paired sum before it was discarded.
    pub imaginary_residue: f64,
    /// Number of ordinates with 0 < γ <= T.
    pub zeros_used: usize,
}

/// ζ'(ρ) from the table, evaluated on the fly when the table has none.
pub(crate) fn derivative(r: &ZeroRecord) -> Result<Complex64, ExplicitError> {
    let d = match r.zeta_prime {
        Some(d) => d,
        None => zeta_deriv(r.rho(), Precision::DOUBLE)?,
    };
    if d.norm() < MULTIPLE_ZERO_THRESHOLD {
        return Err(ExplicitError::MultipleZeroFlag { gamma: r.gamma, modulus: d.norm() });
    }
    Ok(d)
}

/// Σ over 0 < γ <= T of x^ρ Γ(ρ)/(ζ'(ρ)Γ(1+τ+ρ)) plus the same at ρ̄, in
/// ascending γ with compensated accumulation.
pub fn zero_sum_term(x: f64, tau: f64, table: &ZeroTable, t: f64) -> Result<ZeroSum, ExplicitError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(ExplicitError::Domain(format!("zero sum needs x > 0, got {x}")));
    }
    let lx = x.ln();
    let sqrt_x = x.sqrt();
    let zeros = table.up_to(t);
    let mut acc = ComplexSum::new();
    for r in zeros {
        let d = derivative(r)?;
        let rho = r.rho();
        let up = Complex64::from_polar(sqrt_x, r.gamma * lx) * gamma_ratio(rho, tau)? / d;
        let down = Complex64::from_polar(sqrt_x, -r.gamma * lx) * gamma_ratio(rho.conj(), tau)? / d.conj();
        acc.add(up);
        acc.add(down);
    }
    let v = acc.value();
    if v.im.abs() > IMAGINARY_RESIDUE_TOLERANCE * v.re.abs().max(f64::MIN_POSITIVE) && v.im != 0.0 {
        return Err(ExplicitError::ImaginaryResidue { real: v.re, imag: v.im });
    }
    Ok(ZeroSum { value: v.re, imaginary_residue: v.im.abs(), zeros_used: zeros.len() })
}
