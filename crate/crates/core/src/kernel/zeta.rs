//! Euler–Maclaurin evaluation of ζ(s) and ζ'(s) in double precision.
//!
//! For Re s >= 0 the series is summed directly with N = max(10, ⌈|t|⌉)
//! terms and up to 30 Bernoulli corrections. For Re s < 0 the functional
//! equation ζ(s) = 2(2π)^{s−1} sin(πs/2) Γ(1−s) ζ(1−s) is applied, with the
//! sine folded into the exponent so that large |t| does not overflow.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::bernoulli::scaled_even_f64;
use super::gamma::{digamma_complex, log_gamma};
use super::{check_finite, extended, KernelError, Precision, LN_2PI};
use crate::sum::ComplexSum;

/// Largest |Im s| accepted by the double-precision evaluator.
pub const ZETA_T_MAX: f64 = 5000.0;

const MAX_CORRECTIONS: usize = 30;

fn em_cutoff(s: Complex64) -> usize {
    (s.im.abs().ceil() as usize).max(10)
}

/// Euler–Maclaurin for Re s >= 0 (any s != 1 in fact); returns (ζ, ζ').
fn euler_maclaurin(s: Complex64) -> (Complex64, Complex64) {
    let n_cut = em_cutoff(s);
    let mut val = ComplexSum::new();
    let mut der = ComplexSum::new();
    // Large n first so the biggest terms are added last.
    for n in (1..n_cut).rev() {
        let ln_n = (n as f64).ln();
        let term = (-s * ln_n).exp();
        val.add(term);
        der.add(-term * ln_n);
    }
    let nf = n_cut as f64;
    let ln_big = nf.ln();
    let n_pow = (-s * ln_big).exp(); // N^{-s}
    let sm1 = s - 1.0;
    let head = n_pow * nf / sm1;
    val.add(head);
    der.add(head * (-ln_big) - n_pow * nf / (sm1 * sm1));
    val.add(n_pow * 0.5);
    der.add(n_pow * (-0.5 * ln_big));

    // T_k = B_2k/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut poly = s;
    let mut dpoly = Complex64::new(1.0, 0.0);
    let mut npow = n_pow / nf; // N^{-s-1}
    let inv_n2 = 1.0 / (nf * nf);
    let scale = val.value().norm().max(1e-300);
    let dscale = der.value().norm().max(1e-300);
    for k in 1..=MAX_CORRECTIONS {
        let b = scaled_even_f64(k);
        let term = poly * npow * b;
        let dterm = (dpoly - poly * ln_big) * npow * b;
        val.add(term);
        der.add(dterm);
        // At s = 0 the value corrections vanish identically, so the
        // derivative has to be checked separately.
        if term.norm() < 1e-18 * scale && dterm.norm() < 1e-18 * dscale && k >= 2 {
            break;
        }
        let a = s + (2 * k - 1) as f64;
        let c = s + (2 * k) as f64;
        dpoly = dpoly * a * c + poly * (a + c);
        poly = poly * a * c;
        npow *= inv_n2;
    }
    (val.value(), der.value())
}

/// log sin z for Im z >= 0, stable when Im z is large.
fn ln_sin(z: Complex64) -> Complex64 {
    if z.im > 1.0 {
        let i = Complex64::i();
        -i * z - std::f64::consts::LN_2 + Complex64::new(0.0, FRAC_PI_2) + (1.0 - (2.0 * i * z).exp()).ln()
    } else {
        z.sin().ln()
    }
}

fn ln_cos(z: Complex64) -> Complex64 {
    if z.im > 1.0 {
        let i = Complex64::i();
        -i * z - std::f64::consts::LN_2 + (1.0 + (2.0 * i * z).exp()).ln()
    } else {
        z.cos().ln()
    }
}

/// ζ and ζ' for Re s < 0, Im s >= 0, via the functional equation.
fn reflected(s: Complex64, with_deriv: bool) -> Result<(Complex64, Complex64), KernelError> {
    let one_minus = 1.0 - s;
    let (z1, dz1) = euler_maclaurin(one_minus);
    // G(s) = 2(2π)^{s−1} Γ(1−s)
    let ln_g = std::f64::consts::LN_2 + (s - 1.0) * LN_2PI + log_gamma(one_minus)?;
    let half = s * FRAC_PI_2;
    if half.im <= 1.0 {
        // no overflow risk from the trigonometric factor
        let g = ln_g.exp();
        let g = check_finite(g, s)?;
        let (sin, cos) = (half.sin(), half.cos());
        let val = g * sin * z1;
        let der = if with_deriv {
            let psi = digamma_complex(one_minus)?;
            g * sin * ((LN_2PI - psi) * z1 - dz1) + g * FRAC_PI_2 * cos * z1
        } else {
            Complex64::new(0.0, 0.0)
        };
        return Ok((check_finite(val, s)?, check_finite(der, s)?));
    }
    let gs = (ln_g + ln_sin(half)).exp();
    let val = check_finite(gs * z1, s)?;
    let der = if with_deriv {
        let gc = (ln_g + ln_cos(half)).exp();
        let psi = digamma_complex(one_minus)?;
        gs * ((LN_2PI - psi) * z1 - dz1) + gc * FRAC_PI_2 * z1
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok((val, check_finite(der, s)?))
}

fn validate(s: Complex64) -> Result<(), KernelError> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(KernelError::OutOfRange(format!("non-finite argument {s}")));
    }
    if s.re == 1.0 && s.im == 0.0 {
        return Err(KernelError::PoleAtOne);
    }
    if s.im.abs() > ZETA_T_MAX {
        return Err(KernelError::PrecisionLoss {
            re: s.re,
            im: s.im,
            reason: format!("|Im s| exceeds the Euler-Maclaurin budget {ZETA_T_MAX}"),
        });
    }
    Ok(())
}

fn double_pair(s: Complex64, with_deriv: bool) -> Result<(Complex64, Complex64), KernelError> {
    validate(s)?;
    if s.im < 0.0 {
        let (v, d) = double_pair(s.conj(), with_deriv)?;
        return Ok((v.conj(), d.conj()));
    }
    if s.re < 0.0 {
        return reflected(s, with_deriv);
    }
    let (v, d) = euler_maclaurin(s);
    Ok((check_finite(v, s)?, check_finite(d, s)?))
}

/// ζ(s). Extended precisions evaluate with the wide-float backend and round
/// the result to double.
pub fn zeta(s: Complex64, prec: Precision) -> Result<Complex64, KernelError> {
    if prec.is_extended() {
        validate(s)?;
        return extended::zeta_and_deriv_f64(s, prec).map(|(v, _)| v);
    }
    double_pair(s, false).map(|(v, _)| v)
}

/// ζ'(s), by the term-differentiated series.
pub fn zeta_deriv(s: Complex64, prec: Precision) -> Result<Complex64, KernelError> {
    zeta_and_deriv(s, prec).map(|(_, d)| d)
}

/// (ζ(s), ζ'(s)) from a single pass.
pub fn zeta_and_deriv(s: Complex64, prec: Precision) -> Result<(Complex64, Complex64), KernelError> {
    if prec.is_extended() {
        validate(s)?;
        return extended::zeta_and_deriv_f64(s, prec);
    }
    double_pair(s, true)
}

/// ζ(x) for real x.
pub fn zeta_real(x: f64) -> Result<f64, KernelError> {
    zeta(Complex64::new(x, 0.0), Precision::DOUBLE).map(|v| v.re)
}

/// ζ'(x) for real x.
pub fn zeta_real_deriv(x: f64) -> Result<f64, KernelError> {
    zeta_deriv(Complex64::new(x, 0.0), Precision::DOUBLE).map(|v| v.re)
}

/// Riemann–Siegel θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
pub fn riemann_siegel_theta(t: f64) -> Result<f64, KernelError> {
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * PI.ln())
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
pub fn hardy_z(t: f64) -> Result<f64, KernelError> {
    let theta = riemann_siegel_theta(t)?;
    let z = zeta(Complex64::new(0.5, t), Precision::DOUBLE)?;
    Ok((Complex64::from_polar(1.0, theta) * z).re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    const D: Precision = Precision::DOUBLE;

    #[test]
    fn closed_forms() {
        let z2 = zeta(c(2.0, 0.0), D).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(c(0.0, 0.0), D).unwrap().re + 0.5).abs() < 1e-15);
        assert!((zeta(c(-1.0, 0.0), D).unwrap().re + 1.0 / 12.0).abs() < 1e-15);
        assert!(zeta(c(-2.0, 0.0), D).unwrap().norm() < 1e-16);
        assert!(matches!(zeta(c(1.0, 0.0), D), Err(KernelError::PoleAtOne)));
    }

    #[test]
    fn reference_values() {
        // mpmath.zeta
        let v = zeta(c(0.5, 100.0), D).unwrap();
        assert!(rel(v, c(2.692619885681324, -0.020_386_029_602_591_76)) < 1e-13, "{v}");
        let v = zeta(c(-3.5, 20.0), D).unwrap();
        assert!(rel(v, c(-37.456_719_829_206_9, -98.99230712926162)) < 1e-12, "{v}");
        let v = zeta(c(0.5, 1000.0), D).unwrap();
        assert!(rel(v, c(0.356334367194396, 0.9319978312329937)) < 1e-12, "{v}");
        let d = zeta_deriv(c(0.5, 1000.0), D).unwrap();
        assert!(rel(d, c(3.5468396144336457, -4.063991586646596)) < 1e-12, "{d}");
        let d = zeta_deriv(c(-7.2, 1.5), D).unwrap();
        assert!(rel(d, c(-0.004162953303179383, -0.026858653609717104)) < 1e-11, "{d}");
    }

    #[test]
    fn derivative_closed_forms() {
        let d0 = zeta_deriv(c(0.0, 0.0), D).unwrap();
        assert!((d0.re + 0.5 * LN_2PI).abs() < 1e-14);
        let zeta3 = zeta_real(3.0).unwrap();
        let d2 = zeta_deriv(c(-2.0, 0.0), D).unwrap();
        assert!((d2.re + zeta3 / (4.0 * PI * PI)).abs() < 1e-15);
        assert!((d2.re + 0.030_448_457_058_393_27).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_difference_at_two() {
        let h = 1e-6;
        let fd = (zeta(c(2.0 + h, 0.0), D).unwrap() - zeta(c(2.0 - h, 0.0), D).unwrap()) / (2.0 * h);
        let d = zeta_deriv(c(2.0, 0.0), D).unwrap();
        assert!((fd - d).norm() < 1e-8);
    }

    #[test]
    fn theta_and_z() {
        assert!((riemann_siegel_theta(100.0).unwrap() - 87.97216523178722).abs() < 1e-11);
        assert!((hardy_z(100.0).unwrap() - 2.692697056664463).abs() < 1e-12);
    }

    #[test]
    fn large_height_is_rejected() {
        assert!(matches!(zeta(c(0.5, 6000.0), D), Err(KernelError::PrecisionLoss { .. })));
    }

    #[test]
    fn very_negative_real_part_overflows_cleanly() {
        assert!(matches!(zeta(c(-400.5, 0.3), D), Err(KernelError::Overflow { .. })));
    }
}
