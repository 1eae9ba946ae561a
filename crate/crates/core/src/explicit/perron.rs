//! Quadrature check of the truncated Mellin inversion
//! (1/2πi)∫_{σ₀−iT}^{σ₀+iT} y^s Γ(s)/Γ(1+τ+s) ds → (1 − 1/y)^τ/Γ(1+τ) for y > 1, 0 for y < 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ExplicitError;
use crate::kernel::{gamma_ratio, reciprocal_gamma};
use crate::sum::NeumaierSum;

/// Fitted constant for the case-wise truncation bound.
pub const PERRON_BOUND_CONSTANT: f64 = 1.0;

/// The step must resolve the oscillation of y^{it}.
pub const MAX_PHASE_STEP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerronCheck {
    pub y: f64,
    pub tau: f64,
    pub sigma0: f64,
    pub t: f64,
    pub step: f64,
    pub quadrature: f64,
    pub target: f64,
    pub residual: f64,
    /// Case bound with unit constant.
    pub unit_bound: f64,
    /// residual / unit_bound
    pub fitted_constant: f64,
    pub within_bound: bool,
}

/// Target of the full integral. At y = 1 the integral converges to the
/// midpoint, which is 0 for τ > 0 and 1/2 for τ = 0.
pub fn perron_target(y: f64, tau: f64) -> f64 {
    if y > 1.0 {
        (1.0 - 1.0 / y).powf(tau) * reciprocal_gamma(1.0 + tau)
    } else if y == 1.0 && tau == 0.0 {
        0.5
    } else {
        0.0
    }
}

/// Truncation bound with unit constant: y^{σ₀}/T^{1+τ} away from y = 1,
/// min{y^{σ₀}/T^τ + y^{∓T}/(τT^τ), y^{σ₀}T^{−1−τ}/|log y|} on [1/2, 2].
pub fn perron_case_bound(y: f64, tau: f64, sigma0: f64, t: f64) -> f64 {
    let ys = y.powf(sigma0);
    if y <= 0.5 || y >= 2.0 {
        return ys / t.powf(1.0 + tau);
    }
    let edge = if y <= 1.0 { y.powf(t) } else { y.powf(-t) };
    let a = ys / t.powf(tau) + edge / (tau * t.powf(tau));
    let ly = y.ln().abs();
    let b = if ly > 0.0 { ys * t.powf(-1.0 - tau) / ly } else { f64::INFINITY };
    a.min(b)
}

pub fn perron_kernel_check(y: f64, tau: f64, sigma0: f64, t: f64, quad_step: f64) -> Result<PerronCheck, ExplicitError> {
    if !(y > 0.0) || !(sigma0 > 0.0) || !(t >= 10.0) || !(tau >= 0.0) || !(quad_step > 0.0) {
        return Err(ExplicitError::Domain(format!(
            "perron check needs y > 0, tau >= 0, sigma0 > 0, T >= 10, step > 0 (got y={y}, tau={tau}, sigma0={sigma0}, T={t}, step={quad_step})"
        )));
    }
    let ly = y.ln();
    if quad_step * ly.abs() >= MAX_PHASE_STEP {
        return Err(ExplicitError::QuadratureDiverged { step: quad_step, y });
    }
    // The integrand at −t is the conjugate of the one at t, so the integral
    // is (1/π)∫₀^T Re f(t) dt. Composite Simpson with an even panel count.
    let mut n = (t / quad_step).ceil() as usize;
    n += n % 2;
    let h = t / n as f64;
    let ys = y.powf(sigma0);
    let f = |k: usize| -> Result<f64, ExplicitError> {
        let tt = k as f64 * h;
        let s = Complex64::new(sigma0, tt);
        Ok((Complex64::from_polar(ys, tt * ly) * gamma_ratio(s, tau)?).re)
    };
    let mut acc = NeumaierSum::new();
    acc.add(f(0)?);
    acc.add(f(n)?);
    for k in 1..n {
        acc.add(if k % 2 == 1 { 4.0 } else { 2.0 } * f(k)?);
    }
    let quadrature = acc.value() * h / 3.0 / std::f64::consts::PI;
    let target = perron_target(y, tau);
    let residual = (quadrature - target).abs();
    let unit_bound = perron_case_bound(y, tau, sigma0, t);
    let fitted_constant = residual / unit_bound;
    Ok(PerronCheck {
        y,
        tau,
        sigma0,
        t,
        step: h,
        quadrature,
        target,
        residual,
        unit_bound,
        fitted_constant,
        within_bound: fitted_constant <= PERRON_BOUND_CONSTANT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        assert!((perron_target(2.0, 1.0) - 0.5).abs() < 1e-16);
        assert_eq!(perron_target(0.5, 1.0), 0.0);
        assert_eq!(perron_target(1.0, 1.0), 0.0);
    }

    #[test]
    fn two_and_half() {
        let c = perron_kernel_check(2.0, 1.0, 2.0, 200.0, 0.01).unwrap();
        assert!(c.residual <= 0.01, "{c:?}");
        let c = perron_kernel_check(0.5, 1.0, 2.0, 200.0, 0.01).unwrap();
        assert!(c.residual <= 10.0 * 0.25 / 200f64.powi(2), "{c:?}");
    }

    #[test]
    fn rejects_coarse_step() {
        assert!(matches!(
            perron_kernel_check(10.0, 1.0, 2.0, 50.0, 0.05),
            Err(ExplicitError::QuadratureDiverged { .. })
        ));
        assert!(perron_kernel_check(2.0, 1.0, 2.0, 5.0, 0.01).is_err());
    }
}
