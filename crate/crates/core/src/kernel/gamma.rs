use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::bernoulli_f64;
use super::{check_finite, KernelError, EULER_GAMMA, LN_2PI};

// Shift target for the asymptotic series; 12 terms are then below 1e-17.
const SHIFT_RE: f64 = 12.0;
const STIRLING_TERMS: usize = 12;

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for k in 1..=STIRLING_TERMS {
        let b = bernoulli_f64(2 * k);
        series += pow * (b / ((2 * k) as f64 * (2 * k - 1) as f64));
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * LN_2PI + series
}

/// log Γ(s), continuous in the upper and lower half planes with the cut
/// along the negative real axis (the usual `loggamma` convention).
pub fn log_gamma(s: Complex64) -> Result<Complex64, KernelError> {
    if is_nonpositive_integer(s) {
        return Err(KernelError::PoleAtNonpositiveInteger(s.re));
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(KernelError::OutOfRange(format!("log_gamma({s})")));
    }
    if s.im < 0.0 {
        return log_gamma(s.conj()).map(|v| v.conj());
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_RE {
        shift += z.ln();
        z += 1.0;
    }
    check_finite(stirling(z) - shift, s)
}

/// ψ(s) = Γ'(s)/Γ(s) for complex s.
pub fn digamma_complex(s: Complex64) -> Result<Complex64, KernelError> {
    if is_nonpositive_integer(s) {
        return Err(KernelError::PoleAtNonpositiveInteger(s.re));
    }
    if s.im < 0.0 {
        return digamma_complex(s.conj()).map(|v| v.conj());
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_RE {
        shift += z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for k in 1..=STIRLING_TERMS {
        series += pow * (bernoulli_f64(2 * k) / (2 * k) as f64);
        pow *= inv2;
    }
    check_finite(z.ln() - 0.5 * inv - series - shift, s)
}

/// log Γ(x) for real x > 0.
pub fn ln_gamma_real(x: f64) -> Result<f64, KernelError> {
    if x <= 0.0 || !x.is_finite() {
        return Err(KernelError::OutOfRange(format!("ln_gamma_real({x}) needs x > 0")));
    }
    log_gamma(Complex64::new(x, 0.0)).map(|v| v.re)
}

/// ψ(x) for real x > 0.
pub fn digamma(x: f64) -> Result<f64, KernelError> {
    if x <= 0.0 || !x.is_finite() {
        return Err(KernelError::OutOfRange(format!("digamma({x}) needs x > 0")));
    }
    digamma_complex(Complex64::new(x, 0.0)).map(|v| v.re)
}

/// H_n = 1 + 1/2 + … + 1/n.
pub fn harmonic(n: u64) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

/// ψ(m) = H_{m-1} − γ for positive integers m.
pub fn digamma_int(m: u64) -> f64 {
    assert!(m >= 1, "digamma_int needs m >= 1");
    harmonic(m - 1) - EULER_GAMMA
}

/// log(n!).
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 30 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    ln_gamma_real(n as f64 + 1.0).expect("positive argument")
}

/// 1/Γ(a) for real a; entire, zero at the nonpositive integers.
pub fn reciprocal_gamma(a: f64) -> f64 {
    if a <= 0.0 && a.fract() == 0.0 {
        return 0.0;
    }
    if (1.0..=21.0).contains(&a) && a.fract() == 0.0 {
        return 1.0 / (1..a as u64).map(|k| k as f64).product::<f64>();
    }
    if a >= 0.5 {
        (-ln_gamma_real(a).expect("a >= 1/2")).exp()
    } else {
        // 1/Γ(a) = Γ(1-a) sin(πa)/π
        let g = ln_gamma_real(1.0 - a).expect("1 - a > 1/2").exp();
        g * sin_pi(a) / PI
    }
}

/// d/da [1/Γ(a)] for real a. At a = −m this is (−1)^m m!.
pub fn reciprocal_gamma_deriv(a: f64) -> f64 {
    if a >= 0.5 {
        -digamma(a).expect("a >= 1/2") * reciprocal_gamma(a)
    } else {
        // Γ(1-a) [cos(πa) − ψ(1-a) sin(πa)/π]
        let b = 1.0 - a;
        let g = ln_gamma_real(b).expect("1 - a > 1/2").exp();
        g * (cos_pi(a) - digamma(b).expect("1 - a > 1/2") * sin_pi(a) / PI)
    }
}

/// sin(πa), exact at integers and half-integers.
pub(crate) fn sin_pi(a: f64) -> f64 {
    let r = a.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// cos(πa), exact at integers and half-integers.
pub(crate) fn cos_pi(a: f64) -> f64 {
    let r = a.rem_euclid(2.0);
    if r == 0.5 || r == 1.5 {
        return 0.0;
    }
    if r == 0.0 {
        return 1.0;
    }
    if r == 1.0 {
        return -1.0;
    }
    (PI * r).cos()
}

/// Γ(s)/Γ(1+τ+s), evaluated as exp(log Γ(s) − log Γ(1+τ+s)).
pub fn gamma_ratio(s: Complex64, tau: f64) -> Result<Complex64, KernelError> {
    if !(tau >= 0.0) {
        return Err(KernelError::OutOfRange(format!("gamma_ratio needs tau >= 0, got {tau}")));
    }
    if s.im < 0.0 {
        return gamma_ratio(s.conj(), tau).map(|v| v.conj());
    }
    let num = log_gamma(s)?;
    let den = log_gamma(s + 1.0 + tau)?;
    check_finite((num - den).exp(), s)
}
