//! Complex special functions used by every other module: ζ(s), ζ'(s),
//! log Γ(s), the Mellin kernel Γ(s)/Γ(1+τ+s), Bernoulli numbers and the
//! closed forms at the trivial zeros.
//!
//! Double mode works in `f64`. Extended mode evaluates ζ with a software
//! wide float (see [`extended`]) and is only needed when polishing zeros.

mod bernoulli;
pub mod extended;
mod gamma;
mod trivial;
mod zeta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bernoulli::{bernoulli, bernoulli_f64, Bernoulli, MAX_BERNOULLI_INDEX};
pub use gamma::{
    digamma, digamma_complex, digamma_int, gamma_ratio, harmonic, ln_factorial, ln_gamma_real,
    log_gamma, reciprocal_gamma, reciprocal_gamma_deriv,
};
pub(crate) use gamma::{cos_pi, sin_pi};
pub(crate) use trivial::ln_abs_zeta_negative_odd;
pub use trivial::{trivial_zero_data, zeta_at_negative_odd, TrivialZeroData, MAX_TRIVIAL_INDEX};
pub use zeta::{
    hardy_z, riemann_siegel_theta, zeta, zeta_and_deriv, zeta_deriv, zeta_real, zeta_real_deriv,
    ZETA_T_MAX,
};

/// Complex numbers at working precision.
pub type ComplexValue = Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// log(2π).
pub const LN_2PI: f64 = 1.837_877_066_409_345_5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("gamma pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(f64),
    #[error("precision loss evaluating at s = {re} + {im}i: {reason}")]
    PrecisionLoss { re: f64, im: f64, reason: String },
    #[error("result overflowed the working precision at s = {re} + {im}i")]
    Overflow { re: f64, im: f64 },
    #[error("argument out of supported range: {0}")]
    OutOfRange(String),
    #[error("precision must carry at least 53 significand bits, got {0}")]
    InvalidPrecision(u32),
    #[error("extended precision is not available for s = {re} + {im}i (needs Re s >= 0)")]
    ExtendedDomain { re: f64, im: f64 },
}

/// Working precision. Anything above 53 bits switches to the wide-float
/// backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    significand_bits: u32,
}

impl Precision {
    pub const DOUBLE: Precision = Precision { significand_bits: 53 };
    /// Default extended mode.
    pub const EXTENDED: Precision = Precision { significand_bits: 128 };

    pub fn new(significand_bits: u32) -> Result<Self, KernelError> {
        if significand_bits < 53 {
            return Err(KernelError::InvalidPrecision(significand_bits));
        }
        Ok(Self { significand_bits })
    }

    pub fn significand_bits(self) -> u32 {
        self.significand_bits
    }

    pub fn is_extended(self) -> bool {
        self.significand_bits > 53
    }

    /// 2^(-bits).
    pub fn unit_roundoff(self) -> f64 {
        (-(self.significand_bits as f64)).exp2()
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DOUBLE
    }
}

pub(crate) fn check_finite(z: Complex64, at: Complex64) -> Result<Complex64, KernelError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(KernelError::Overflow { re: at.re, im: at.im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_rejects_less_than_double() {
        assert!(matches!(Precision::new(32), Err(KernelError::InvalidPrecision(32))));
        assert!(!Precision::new(53).unwrap().is_extended());
        assert!(Precision::new(128).unwrap().is_extended());
    }
}
