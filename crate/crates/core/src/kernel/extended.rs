//! Wide-float Euler–Maclaurin evaluation of ζ and ζ' for Re s >= 0.
//!
//! The series is the same as the double-precision one, but the cutoff also
//! grows with the requested precision, N = max(⌈|t|⌉, ⌈bits/4⌉ + 10), so that
//! the Bernoulli tail reaches 2^{−bits} before the table runs out.

use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex64;
use num_traits::Signed;

use super::bernoulli::{scaled_even, MAX_BERNOULLI_INDEX};
use super::{KernelError, Precision};

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 32;

#[derive(Clone, Debug)]
pub struct WideComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

struct Ctx {
    p: usize,
    cc: Consts,
}

impl Ctx {
    fn new(bits: u32) -> Result<Self, KernelError> {
        let cc = Consts::new()
            .map_err(|e| KernelError::OutOfRange(format!("wide-float constants: {e:?}")))?;
        Ok(Self { p: bits as usize + GUARD_BITS, cc })
    }

    fn real(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    fn cx(&self, z: Complex64) -> WideComplex {
        WideComplex { re: self.real(z.re), im: self.real(z.im) }
    }

    fn zero(&self) -> WideComplex {
        self.cx(Complex64::new(0.0, 0.0))
    }

    fn add(&self, a: &WideComplex, b: &WideComplex) -> WideComplex {
        WideComplex { re: a.re.add(&b.re, self.p, RM), im: a.im.add(&b.im, self.p, RM) }
    }

    fn sub(&self, a: &WideComplex, b: &WideComplex) -> WideComplex {
        WideComplex { re: a.re.sub(&b.re, self.p, RM), im: a.im.sub(&b.im, self.p, RM) }
    }

    fn mul(&self, a: &WideComplex, b: &WideComplex) -> WideComplex {
        let p = self.p;
        let re = a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM);
        let im = a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM);
        WideComplex { re, im }
    }

    fn scale(&self, a: &WideComplex, k: &BigFloat) -> WideComplex {
        WideComplex { re: a.re.mul(k, self.p, RM), im: a.im.mul(k, self.p, RM) }
    }

    fn inv(&self, a: &WideComplex) -> WideComplex {
        let p = self.p;
        let den = a.re.mul(&a.re, p, RM).add(&a.im.mul(&a.im, p, RM), p, RM);
        WideComplex { re: a.re.div(&den, p, RM), im: a.im.neg().div(&den, p, RM) }
    }

    /// n^{−s} together with log n.
    fn pow_neg(&mut self, n: u64, s: &WideComplex) -> (WideComplex, BigFloat) {
        let p = self.p;
        let ln_n = BigFloat::from_u64(n, p).ln(p, RM, &mut self.cc);
        let mag = s.re.mul(&ln_n, p, RM).neg().exp(p, RM, &mut self.cc);
        let phase = s.im.mul(&ln_n, p, RM).neg();
        let re = mag.mul(&phase.cos(p, RM, &mut self.cc), p, RM);
        let im = mag.mul(&phase.sin(p, RM, &mut self.cc), p, RM);
        (WideComplex { re, im }, ln_n)
    }

    fn rational(&mut self, r: &num_rational::BigRational) -> BigFloat {
        let p = self.p;
        let num = BigFloat::parse(&r.numer().abs().to_string(), astro_float::Radix::Dec, p, RM, &mut self.cc);
        let den = BigFloat::parse(&r.denom().to_string(), astro_float::Radix::Dec, p, RM, &mut self.cc);
        let v = num.div(&den, p, RM);
        if r.is_negative() {
            v.neg()
        } else {
            v
        }
    }
}

fn exponent_of(x: &BigFloat) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        x.exponent().map(|e| e as i64)
    }
}

fn magnitude_exp(z: &WideComplex) -> Option<i64> {
    match (exponent_of(&z.re), exponent_of(&z.im)) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

/// Round a wide float to the nearest double (through its decimal form).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// (ζ(s), ζ'(s)) at the requested precision, as wide complex values.
pub fn zeta_and_deriv_wide(s: Complex64, prec: Precision) -> Result<(WideComplex, WideComplex), KernelError> {
    if s.re < 0.0 {
        return Err(KernelError::ExtendedDomain { re: s.re, im: s.im });
    }
    let bits = prec.significand_bits();
    let n_cut = (s.im.abs().ceil() as u64).max((bits as u64).div_ceil(4) + 10);
    euler_maclaurin_wide(s, prec, n_cut)
}

/// The unreflected series with an explicit cutoff. Converges for any s != 1
/// once N is large against |s|; on the left half plane the cancellation
/// between the head terms costs about (1−σ)·log2 N bits.
pub fn euler_maclaurin_wide(
    s: Complex64,
    prec: Precision,
    n_cut: u64,
) -> Result<(WideComplex, WideComplex), KernelError> {
    if s.re == 1.0 && s.im == 0.0 {
        return Err(KernelError::PoleAtOne);
    }
    let bits = prec.significand_bits();
    let mut ctx = Ctx::new(bits)?;
    let p = ctx.p;
    let n_cut = n_cut.max(2);
    let ws = ctx.cx(s);

    let mut val = ctx.zero();
    let mut der = ctx.zero();
    for n in (1..n_cut).rev() {
        let (term, ln_n) = ctx.pow_neg(n, &ws);
        val = ctx.add(&val, &term);
        der = ctx.sub(&der, &ctx.scale(&term, &ln_n));
    }
    let (n_pow, ln_big) = ctx.pow_neg(n_cut, &ws);
    let nf = BigFloat::from_u64(n_cut, p);
    let sm1 = ctx.sub(&ws, &ctx.cx(Complex64::new(1.0, 0.0)));
    let inv_sm1 = ctx.inv(&sm1);
    let head = ctx.mul(&ctx.scale(&n_pow, &nf), &inv_sm1);
    val = ctx.add(&val, &head);
    der = ctx.sub(&der, &ctx.scale(&head, &ln_big));
    der = ctx.sub(&der, &ctx.mul(&head, &inv_sm1));
    let half = ctx.real(0.5);
    let half_pow = ctx.scale(&n_pow, &half);
    val = ctx.add(&val, &half_pow);
    der = ctx.sub(&der, &ctx.scale(&half_pow, &ln_big));

    let mut poly = ws.clone();
    let mut dpoly = ctx.cx(Complex64::new(1.0, 0.0));
    let inv_n = nf.reciprocal(p, RM);
    let inv_n2 = inv_n.mul(&inv_n, p, RM);
    let mut npow = ctx.scale(&n_pow, &inv_n);
    let floor = magnitude_exp(&val).unwrap_or(0) - p as i64 - 4;
    let dfloor = magnitude_exp(&der).unwrap_or(0) - p as i64 - 4;
    let mut converged = false;
    for k in 1..=MAX_BERNOULLI_INDEX / 2 {
        let b = ctx.rational(scaled_even(k));
        let bn = ctx.scale(&npow, &b);
        let term = ctx.mul(&poly, &bn);
        let dlead = ctx.sub(&dpoly, &ctx.scale(&poly, &ln_big));
        let dterm = ctx.mul(&dlead, &bn);
        val = ctx.add(&val, &term);
        der = ctx.add(&der, &dterm);
        let small = |z: &WideComplex, f: i64| magnitude_exp(z).is_none_or(|e| e < f);
        if small(&term, floor) && small(&dterm, dfloor) && k >= 2 {
            converged = true;
            break;
        }
        let a = ctx.add(&ws, &ctx.cx(Complex64::new((2 * k - 1) as f64, 0.0)));
        let c = ctx.add(&ws, &ctx.cx(Complex64::new((2 * k) as f64, 0.0)));
        let ac = ctx.mul(&a, &c);
        dpoly = ctx.add(&ctx.mul(&dpoly, &ac), &ctx.mul(&poly, &ctx.add(&a, &c)));
        poly = ctx.mul(&poly, &ac);
        npow = ctx.scale(&npow, &inv_n2);
    }
    if !converged {
        return Err(KernelError::PrecisionLoss {
            re: s.re,
            im: s.im,
            reason: format!("Bernoulli table exhausted before reaching {bits} bits"),
        });
    }
    Ok((val, der))
}

/// Wide evaluation rounded back to doubles.
pub fn zeta_and_deriv_f64(s: Complex64, prec: Precision) -> Result<(Complex64, Complex64), KernelError> {
    if s.im < 0.0 {
        let (v, d) = zeta_and_deriv_f64(s.conj(), prec)?;
        return Ok((v.conj(), d.conj()));
    }
    let (v, d) = zeta_and_deriv_wide(s, prec)?;
    let out = |w: &WideComplex| Complex64::new(to_f64(&w.re), to_f64(&w.im));
    let (v, d) = (out(&v), out(&d));
    super::check_finite(v, s)?;
    super::check_finite(d, s)?;
    Ok((v, d))
}
