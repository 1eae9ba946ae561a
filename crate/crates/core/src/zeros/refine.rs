use num_complex::Complex64;

use super::{ZeroError, ZeroRecord};
use crate::kernel::{zeta_and_deriv, Precision};

pub const MAX_NEWTON_ITERATIONS: usize = 50;
/// Target for |ζ(1/2 + iγ)|.
pub const REFINE_TOLERANCE: f64 = 1e-12;
/// Accepted residual once the iterate has stopped moving; in double mode
/// the rounding of γ itself leaves |ζ'|·ulp(γ) behind.
const NOISE_FLOOR_TOLERANCE: f64 = 1e-10;

/// Newton refinement in double precision.
pub fn refine_zero(gamma_approx: f64) -> Result<ZeroRecord, ZeroError> {
    refine_zero_with(gamma_approx, Precision::DOUBLE)
}

/// Newton on t ↦ ζ(1/2 + it): t ← t − Re[ζ/(iζ')], until |ζ| < 10⁻¹².
/// One extra step is taken after the target is met, and kept if it lowers
/// the residual, so γ ends up close to the rounding limit of a double.
pub fn refine_zero_with(gamma_approx: f64, prec: Precision) -> Result<ZeroRecord, ZeroError> {
    let eval = |t: f64| -> Result<(f64, Complex64, f64), ZeroError> {
        let (z, dz) = zeta_and_deriv(Complex64::new(0.5, t), prec)?;
        Ok((z.norm(), dz, (z / (Complex64::i() * dz)).re))
    };
    let done = |t: f64, dz: Complex64| ZeroRecord {
        index: 0,
        gamma: t,
        zeta_prime: Some(dz),
        refined_bits: prec.significand_bits(),
    };
    let mut t = gamma_approx;
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_NEWTON_ITERATIONS {
        let (r, dz, step) = eval(t)?;
        residual = r;
        let stalled = step.abs() <= 4.0 * f64::EPSILON * t.abs();
        if residual < REFINE_TOLERANCE || (stalled && residual < NOISE_FLOOR_TOLERANCE) {
            if !stalled {
                let t2 = t - step;
                let (r2, dz2, _) = eval(t2)?;
                if r2 <= residual {
                    return Ok(done(t2, dz2));
                }
            }
            return Ok(done(t, dz));
        }
        if !step.is_finite() || t - step <= 0.0 {
            break;
        }
        t -= step;
    }
    Err(ZeroError::NoConvergence { start: gamma_approx, iterations: MAX_NEWTON_ITERATIONS, residual })
}
