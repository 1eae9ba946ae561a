//! Closed forms at the negative integers.
//!
//! At s = −2n:  ζ'(−2n) = (−1)^n (2π)^{−2n} (2n)! ζ(2n+1) / 2, and
//! differentiating the functional equation twice gives
//! ζ''(−2n)/ζ'(−2n) = 2( log 2π − ψ(2n+1) − ζ'(2n+1)/ζ(2n+1) ).
//! At s = 1 − 2n:  ζ(1−2n) = −B_{2n}/(2n).

use serde::{Deserialize, Serialize};

use super::bernoulli::{bernoulli_f64, MAX_BERNOULLI_INDEX};
use super::gamma::{digamma_int, ln_factorial};
use super::zeta::{zeta_real, zeta_real_deriv};
use super::{KernelError, LN_2PI};

/// Largest n for which ζ'(−2n) is finite in double precision.
pub const MAX_TRIVIAL_INDEX: u64 = 120;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrivialZeroData {
    pub n: u64,
    /// ζ'(−2n); sign is (−1)^n.
    pub zeta_prime: f64,
    /// ζ''(−2n)/ζ'(−2n).
    pub log_ratio: f64,
    /// log|ζ'(−2n)|, usable where ζ'(−2n) itself would overflow downstream.
    pub ln_abs_zeta_prime: f64,
}

/// Data at the trivial zero s = −2n.
pub fn trivial_zero_data(n: u64) -> Result<TrivialZeroData, KernelError> {
    if n == 0 || n > MAX_TRIVIAL_INDEX {
        return Err(KernelError::OutOfRange(format!(
            "trivial zero index {n} (1..={MAX_TRIVIAL_INDEX})"
        )));
    }
    let m = 2 * n + 1;
    let z = zeta_real(m as f64)?;
    let dz = zeta_real_deriv(m as f64)?;
    let ln_abs = ln_factorial(2 * n) - (2 * n) as f64 * LN_2PI + z.ln() - std::f64::consts::LN_2;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    // ψ(2n+1) = H_{2n} − γ
    let psi = digamma_int(m);
    Ok(TrivialZeroData {
        n,
        zeta_prime: sign * ln_abs.exp(),
        log_ratio: 2.0 * (LN_2PI - psi - dz / z),
        ln_abs_zeta_prime: ln_abs,
    })
}

/// (sign, log|ζ(−l)|) for odd l >= 1. Uses ζ(1−2n) = 2(−1)^n (2π)^{−2n} (2n−1)! ζ(2n).
pub(crate) fn ln_abs_zeta_negative_odd(l: u64) -> Result<(f64, f64), KernelError> {
    if l.is_multiple_of(2) {
        return Err(KernelError::OutOfRange(format!("ζ(−{l}) requested on the odd path")));
    }
    let n = l.div_ceil(2);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let ln_abs = std::f64::consts::LN_2 - (2 * n) as f64 * LN_2PI
        + ln_factorial(2 * n - 1)
        + zeta_real((2 * n) as f64)?.ln();
    Ok((sign, ln_abs))
}

/// ζ(−l) for odd l >= 1, from the Bernoulli table where available.
pub fn zeta_at_negative_odd(l: u64) -> Result<f64, KernelError> {
    if l.is_multiple_of(2) {
        return Err(KernelError::OutOfRange(format!("ζ(−{l}) requested on the odd path")));
    }
    let k = (l + 1) as usize;
    if k <= MAX_BERNOULLI_INDEX {
        return Ok(-bernoulli_f64(k) / k as f64);
    }
    let (sign, ln_abs) = ln_abs_zeta_negative_odd(l)?;
    let v = sign * ln_abs.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(KernelError::Overflow { re: -(l as f64), im: 0.0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{zeta_deriv, Precision};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn zeta_prime_closed_forms() {
        let z3 = zeta_real(3.0).unwrap();
        let d1 = trivial_zero_data(1).unwrap();
        assert!((d1.zeta_prime + z3 / (4.0 * PI * PI)).abs() < 1e-16);
        let z5 = zeta_real(5.0).unwrap();
        let d2 = trivial_zero_data(2).unwrap();
        assert!((d2.zeta_prime - 3.0 * z5 / (4.0 * PI.powi(4))).abs() < 1e-17);
        for n in 1..=MAX_TRIVIAL_INDEX {
            let d = trivial_zero_data(n).unwrap();
            assert!(d.zeta_prime.is_finite() && d.log_ratio.is_finite());
            assert_eq!(d.zeta_prime.is_sign_negative(), n % 2 == 1);
        }
        assert!(trivial_zero_data(0).is_err());
    }

    #[test]
    fn zeta_prime_agrees_with_reflection_evaluator() {
        for n in 1..=6u64 {
            let d = trivial_zero_data(n).unwrap();
            let k = zeta_deriv(Complex64::new(-2.0 * n as f64, 0.0), Precision::DOUBLE).unwrap();
            assert!((k.re / d.zeta_prime - 1.0).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn log_ratio_matches_second_difference() {
        // ζ''(−2n) ≈ (ζ'(−2n+h) − ζ'(−2n−h)) / 2h
        for n in 1..=3u64 {
            let d = trivial_zero_data(n).unwrap();
            let h = 1e-5;
            let s = -2.0 * n as f64;
            let p = zeta_deriv(Complex64::new(s + h, 0.0), Precision::DOUBLE).unwrap().re;
            let m = zeta_deriv(Complex64::new(s - h, 0.0), Precision::DOUBLE).unwrap().re;
            let second = (p - m) / (2.0 * h);
            assert!((second / d.zeta_prime - d.log_ratio).abs() < 1e-6, "n={n}");
        }
        assert!((trivial_zero_data(1).unwrap().log_ratio - 2.159_830_826_9).abs() < 1e-9);
    }

    #[test]
    fn negative_odd_values() {
        assert!((zeta_at_negative_odd(1).unwrap() + 1.0 / 12.0).abs() < 1e-17);
        assert!((zeta_at_negative_odd(3).unwrap() - 1.0 / 120.0).abs() < 1e-17);
        let (sign, ln_abs) = ln_abs_zeta_negative_odd(11).unwrap();
        assert!((sign * ln_abs.exp() - zeta_at_negative_odd(11).unwrap()).abs() < 1e-14);
        assert!(zeta_at_negative_odd(2).is_err());
    }
}
