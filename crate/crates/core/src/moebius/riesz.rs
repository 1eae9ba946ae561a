use serde::{Deserialize, Serialize};

use super::sieve::{stream_mertens, stream_mu};
use super::{MoebiusError, MAX_N};
use crate::kernel::{ln_gamma_real, reciprocal_gamma};
use crate::sum::NeumaierSum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RieszQuery {
    pub x: f64,
    pub tau: f64,
    /// Exponent for the integral variants; unused by the Riesz mean itself.
    pub kappa: f64,
}

impl RieszQuery {
    pub fn new(x: f64, tau: f64) -> Self {
        Self { x, tau, kappa: 0.0 }
    }
}

pub(crate) fn check_x(x: f64) -> Result<(), MoebiusError> {
    if !(x >= 1.0) || x > MAX_N as f64 {
        return Err(MoebiusError::Domain(format!("x = {x} must lie in [1, {MAX_N}]")));
    }
    Ok(())
}

/// ∫_n^{n+1} u^{−2} du = 1/(n(n+1)).
#[inline]
pub(crate) fn unit_weight(n: u64) -> f64 {
    let n = n as f64;
    1.0 / (n * (n + 1.0))
}

/// ∫_a^b u^{−κ} du for 0 < a <= b, without the cancellation of the naive
/// antiderivative difference.
#[inline]
pub fn unit_power_integral(a: f64, b: f64, kappa: f64) -> f64 {
    let r = ((b - a) / a).ln_1p();
    if kappa == 1.0 {
        return r;
    }
    let e = 1.0 - kappa;
    a.powf(e) * (e * r).exp_m1() / e
}

/// 1/Γ(1+τ) for τ >= 0.
pub(crate) fn inv_gamma_one_plus(tau: f64) -> f64 {
    reciprocal_gamma(1.0 + tau)
}

/// M_τ(x) = (1/Γ(1+τ)) Σ_{n<=x} μ(n)(1 − n/x)^τ.
///
/// At n = x the factor is 1 when τ = 0 and 0 when τ > 0, so M_0 = M on the
/// integers as well.
pub fn riesz_mean_direct(q: &RieszQuery) -> Result<f64, MoebiusError> {
    check_x(q.x)?;
    if !(q.tau >= 0.0) {
        return Err(MoebiusError::Domain(format!("tau = {} must be >= 0", q.tau)));
    }
    let (x, tau) = (q.x, q.tau);
    let top = x.floor() as u64;
    let mut acc = NeumaierSum::new();
    if tau == 0.0 {
        stream_mu(1, top + 1, |_, mu| acc.add(mu as f64))?;
        return Ok(acc.value());
    }
    stream_mu(1, top + 1, |n, mu| {
        if mu != 0 {
            let f = (x - n as f64) / x;
            acc.add(mu as f64 * f.powf(tau));
        }
    })?;
    Ok(acc.value() * inv_gamma_one_plus(tau))
}

/// ∫₁^x M(u) u^{−κ} du, summed exactly over the unit steps of M.
pub fn integral_m(x: f64, kappa: f64) -> Result<f64, MoebiusError> {
    check_x(x)?;
    let top = x.floor() as u64;
    let mut acc = NeumaierSum::new();
    stream_mertens(top + 1, |n, _, m| {
        if m != 0 {
            let b = if n == top { x } else { n as f64 + 1.0 };
            acc.add(m as f64 * unit_power_integral(n as f64, b, kappa));
        }
    })?;
    Ok(acc.value())
}

/// ∫₁^x (M(u)/u)² du, summed exactly over the unit steps of M.
pub fn weak_mertens_integral(x: f64) -> Result<f64, MoebiusError> {
    check_x(x)?;
    let top = x.floor() as u64;
    let mut acc = NeumaierSum::new();
    stream_mertens(top + 1, |n, _, m| {
        if m != 0 {
            let w = if n == top { 1.0 / n as f64 - 1.0 / x } else { unit_weight(n) };
            acc.add((m * m) as f64 * w);
        }
    })?;
    Ok(acc.value())
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub(crate) fn gauss_legendre(q: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(q);
    for i in 0..q {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=q {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = q as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        out.push((z, 2.0 / ((1.0 - z * z) * dp * dp)));
    }
    out
}

/// |∫₁^x u^{τ−1} M_{τ−1}(u) du − x^τ M_τ(x)| for integer τ >= 1.
///
/// τ = 1 uses the exact step integral of M. For τ >= 2 the integrand is a
/// polynomial of degree τ−1 on each unit step, built from running power sums
/// Σ_{n<=m} μ(n) n^j and integrated by Gauss–Legendre with ⌈τ/2⌉ nodes.
pub fn riesz_recurrence_check(x: f64, tau: u32) -> Result<f64, MoebiusError> {
    check_x(x)?;
    if tau == 0 || tau > 20 {
        return Err(MoebiusError::Domain(format!("recurrence check needs 1 <= tau <= 20, got {tau}")));
    }
    let rhs = x.powi(tau as i32) * riesz_mean_direct(&RieszQuery::new(x, tau as f64))?;
    let lhs = if tau == 1 {
        integral_m(x, 0.0)?
    } else {
        let d = (tau - 1) as usize;
        let binom: Vec<f64> = (0..=d)
            .map(|j| (0..j).fold(1.0, |c, i| c * (d - i) as f64 / (i + 1) as f64))
            .collect();
        let nodes = gauss_legendre((tau as usize).div_ceil(2));
        let scale = 1.0 / (ln_gamma_real(tau as f64).expect("positive")).exp();
        let top = x.floor() as u64;
        let mut power_sums = vec![0.0f64; d + 1];
        let mut acc = NeumaierSum::new();
        stream_mu(1, top + 1, |m, mu| {
            if mu != 0 {
                let mut p = mu as f64;
                for s in power_sums.iter_mut() {
                    *s += p;
                    p *= m as f64;
                }
            }
            let (a, b) = (m as f64, if m == top { x } else { m as f64 + 1.0 });
            if b <= a {
                return;
            }
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            for &(z, w) in &nodes {
                let u = mid + half * z;
                // Σ_j C(d,j)(−1)^j u^{d−j} S_j
                let mut f = 0.0;
                let mut upow = 1.0;
                for j in (0..=d).rev() {
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    f += sign * binom[j] * upow * power_sums[j];
                    upow *= u;
                }
                acc.add(w * half * f * scale);
            }
        })?;
        acc.value()
    };
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riesz_examples() {
        assert!(riesz_mean_direct(&RieszQuery::new(4.0, 1.0)).unwrap().abs() < 1e-15);
        let v = riesz_mean_direct(&RieszQuery::new(1.5, 2.0)).unwrap();
        assert!((v - 1.0 / 18.0).abs() < 1e-16);
        assert_eq!(riesz_mean_direct(&RieszQuery::new(10.0, 0.0)).unwrap(), -1.0);
        assert_eq!(riesz_mean_direct(&RieszQuery::new(10.7, 0.0)).unwrap(), -1.0);
        assert!(riesz_mean_direct(&RieszQuery::new(10.0, -0.5)).is_err());
        assert!(riesz_mean_direct(&RieszQuery::new(0.5, 1.0)).is_err());
    }

    #[test]
    fn integral_examples() {
        assert_eq!(integral_m(2.0, 0.0).unwrap(), 1.0);
        assert!((integral_m(2.0, 1.0).unwrap() - 2f64.ln()).abs() < 1e-16);
        // M(1..9) = 1, 0, −1, −1, −2, −1, −2, −2, −2
        let m = [1.0, 0.0, -1.0, -1.0, -2.0, -1.0, -2.0, -2.0, -2.0];
        let oracle: f64 = (1..=9)
            .map(|n| m[n - 1] * -2.0 * (1.0 / ((n + 1) as f64).sqrt() - 1.0 / (n as f64).sqrt()))
            .sum();
        assert!((integral_m(10.0, 1.5).unwrap() - oracle).abs() < 1e-14);
        assert_eq!(integral_m(1.0, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn weak_mertens_examples() {
        assert!((weak_mertens_integral(2.0).unwrap() - 0.5).abs() < 1e-16);
        assert!((weak_mertens_integral(3.0).unwrap() - 0.5).abs() < 1e-16);
        let v = weak_mertens_integral(1e4).unwrap();
        assert!(v > 0.0 && v < 2.0 * 1e4f64.ln());
    }

    #[test]
    fn recurrence() {
        assert!(riesz_recurrence_check(4.0, 1).unwrap() < 1e-14);
        assert_eq!(riesz_recurrence_check(1.0, 1).unwrap(), 0.0);
        let x = 100.5;
        let m1 = riesz_mean_direct(&RieszQuery::new(x, 1.0)).unwrap();
        assert!(riesz_recurrence_check(x, 1).unwrap() <= 1e-9 * x * (1.0 + m1.abs()));
        for tau in 2..=4 {
            let m = riesz_mean_direct(&RieszQuery::new(x, tau as f64)).unwrap();
            let r = riesz_recurrence_check(x, tau).unwrap();
            assert!(r <= 1e-9 * x.powi(tau as i32) * (1.0 + m.abs()), "τ={tau}: {r}");
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for q in 1..=6 {
            let nodes = gauss_legendre(q);
            let total: f64 = nodes.iter().map(|(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-14);
            let deg = 2 * q - 2;
            let v: f64 = nodes.iter().map(|(z, w)| w * z.powi(deg as i32)).sum();
            assert!((v - 2.0 / (deg + 1) as f64).abs() < 1e-14, "q={q}");
        }
    }

    #[test]
    fn power_integral_is_stable() {
        let n = 1e7;
        let v = unit_power_integral(n, n + 1.0, 1.5);
        let mid = (n + 0.5f64).powf(-1.5);
        assert!((v / mid - 1.0).abs() < 1e-12);
    }
}
