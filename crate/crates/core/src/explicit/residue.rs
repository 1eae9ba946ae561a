//! Residues of x^s Γ(s) / (ζ(s) Γ(1+τ+s)) at s = 0, −1, −2, …
//!
//! Odd −l: Γ has a simple pole and ζ(−l) ≠ 0. Even −2n: the pole of Γ meets
//! the trivial zero of ζ, so the pole is double and the residue needs
//! ζ''(−2n)/ζ'(−2n) and d/da[1/Γ(a)] at a = 1+τ−2n. Every term is assembled
//! from logarithms so that l! and (2π)^l never overflow separately.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ExplicitError;
use crate::kernel::{
    digamma, digamma_int, ln_abs_zeta_negative_odd, ln_factorial, ln_gamma_real, reciprocal_gamma,
    reciprocal_gamma_deriv, trivial_zero_data, sin_pi, cos_pi, zeta_real, MAX_TRIVIAL_INDEX, LN_2PI,
};
use crate::sum::NeumaierSum;

/// Largest residue index we can evaluate: ζ'(−2n) is tabulated up to
/// n = MAX_TRIVIAL_INDEX.
pub const MAX_RESIDUE_INDEX: u32 = 2 * MAX_TRIVIAL_INDEX as u32;

/// Terms past L summed in absolute value for the tail estimate.
const TAIL_TERMS: u32 = 20;

/// Integer τ up to this takes the closed-form path.
const MAX_INTEGER_TAU: f64 = 170.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueSeries {
    pub x: f64,
    pub tau: f64,
    pub l_max: u32,
    /// −2/Γ(1+τ)
    pub s0_residue: f64,
    /// Residue at s = −l for l = 1..=L.
    pub terms: Vec<f64>,
    /// s0_residue plus all terms.
    pub sum: f64,
    /// Σ |residue at −l| over the next terms past L.
    pub tail_estimate: f64,
    /// True when τ is an integer and the closed form was used.
    pub integer_path: bool,
}

fn sign(v: f64) -> f64 {
    if v < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Residue at s = −l for non-integer τ (also valid at integer τ).
fn general_term(x: f64, tau: f64, l: u32) -> Result<f64, ExplicitError> {
    let lx = x.ln();
    let a = 1.0 + tau - l as f64;
    if l % 2 == 1 {
        let (zs, lz) = ln_abs_zeta_negative_odd(l as u64)?;
        let base = -(l as f64) * lx - lz - ln_factorial(l as u64);
        // −x^{−l} / (ζ(−l) l! Γ(a))
        let v = if a >= 0.5 {
            base.exp() * reciprocal_gamma(a)
        } else {
            (base + ln_gamma_real(1.0 - a)?).exp() * sin_pi(a) / PI
        };
        return Ok(-zs * v);
    }
    let n = (l / 2) as u64;
    let d = trivial_zero_data(n)?;
    let zs = sign(d.zeta_prime);
    let base = -(l as f64) * lx - ln_factorial(l as u64) - d.ln_abs_zeta_prime;
    let core = lx - 0.5 * d.log_ratio + digamma_int(l as u64 + 1);
    // R(a)·core + R'(a), with R = 1/Γ
    let v = if a >= 0.5 {
        base.exp() * (reciprocal_gamma(a) * core + reciprocal_gamma_deriv(a))
    } else {
        let b = 1.0 - a;
        (base + ln_gamma_real(b)?).exp() * (sin_pi(a) / PI * (core - digamma(b)?) + cos_pi(a))
    };
    Ok(zs * v)
}

/// Residue at s = −l for τ = k a nonnegative integer, from the closed form.
fn integer_term(x: f64, k: u64, l: u32) -> Result<f64, ExplicitError> {
    let l64 = l as u64;
    if l % 2 == 1 {
        if l64 > k {
            return Ok(0.0);
        }
        let (zs, lz) = ln_abs_zeta_negative_odd(l64)?;
        let v = (-(l as f64) * x.ln() - lz - ln_factorial(l64) - ln_factorial(k - l64)).exp();
        return Ok(-zs * v);
    }
    let j = l64 / 2;
    let z = zeta_real((l64 + 1) as f64)?;
    // (x/2π)^{−2j} / ((2j)!)²
    let scaled = -(l as f64) * (x.ln() - LN_2PI) - 2.0 * ln_factorial(l64);
    if l64 <= k {
        let d = trivial_zero_data(j)?;
        let s = if j.is_multiple_of(2) { 2.0 } else { -2.0 };
        let mag = (scaled - ln_factorial(k - l64)).exp() / z;
        let bracket = x.ln() - 0.5 * d.log_ratio + digamma_int(l64 + 1) - digamma_int(k - l64 + 1);
        Ok(s * mag * bracket)
    } else {
        let m = l64 - k - 1;
        let s = if (j + k + 1).is_multiple_of(2) { 2.0 } else { -2.0 };
        Ok(s * (scaled + ln_factorial(m)).exp() / z)
    }
}

/// s0_residue + Σ_{l=1}^{L} Res_{s=−l}, with the tail past L estimated by the
/// next terms in absolute value.
pub fn residue_series(x: f64, tau: f64, l_max: u32) -> Result<ResidueSeries, ExplicitError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(ExplicitError::Domain(format!("residue series needs x > 0, got {x}")));
    }
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(ExplicitError::Domain(format!("residue series needs tau >= 0, got {tau}")));
    }
    if l_max > MAX_RESIDUE_INDEX {
        return Err(ExplicitError::Domain(format!("L = {l_max} exceeds {MAX_RESIDUE_INDEX}")));
    }
    let integer_path = tau.fract() == 0.0 && tau <= MAX_INTEGER_TAU;
    let term = |l: u32| if integer_path { integer_term(x, tau as u64, l) } else { general_term(x, tau, l) };
    let s0 = -2.0 * reciprocal_gamma(1.0 + tau);
    let terms = (1..=l_max).map(term).collect::<Result<Vec<f64>, _>>()?;
    let mut acc = NeumaierSum::new();
    acc.add(s0);
    for &t in &terms {
        acc.add(t);
    }
    let tail_top = (l_max + TAIL_TERMS).min(MAX_RESIDUE_INDEX);
    let mut tail = NeumaierSum::new();
    for l in l_max + 1..=tail_top {
        tail.add(term(l)?.abs());
    }
    Ok(ResidueSeries {
        x,
        tau,
        l_max,
        s0_residue: s0,
        terms,
        sum: acc.value(),
        tail_estimate: tail.value(),
        integer_path,
    })
}

/// Same as [`residue_series`] but always through the general formulas.
/// Used to cross-check the integer closed form.
pub fn residue_series_general(x: f64, tau: f64, l_max: u32) -> Result<f64, ExplicitError> {
    if !(x > 0.0) || !(tau >= 0.0) || l_max > MAX_RESIDUE_INDEX {
        return Err(ExplicitError::Domain(format!("x = {x}, tau = {tau}, L = {l_max}")));
    }
    let mut acc = NeumaierSum::new();
    acc.add(-2.0 * reciprocal_gamma(1.0 + tau));
    for l in 1..=l_max {
        acc.add(general_term(x, tau, l)?);
    }
    Ok(acc.value())
}
