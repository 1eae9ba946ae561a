//! Random-matrix prediction for J_λ(T):
//! (G²(λ+2)/G(2λ+3)) a_λ (T/2π) (log(T/2π))^{(λ+1)²}.

use std::f64::consts::PI;

use super::{AnalyticsError, ReportKind, ReportValue, ZeroSumReport};
use crate::kernel::{EULER_GAMMA, LN_2PI};
use crate::moebius::primes_up_to;
use crate::sum::NeumaierSum;

/// Largest λ accepted.
pub const HKO_LAMBDA_MAX: f64 = 6.0;

/// Σ_{k>N} k^{−p} by Euler–Maclaurin, p >= 2.
fn hurwitz_tail(p: f64, n: f64) -> f64 {
    n.powf(1.0 - p) / (p - 1.0) - 0.5 * n.powf(-p) + p * n.powf(-p - 1.0) / 12.0
        - p * (p + 1.0) * (p + 2.0) * n.powf(-p - 3.0) / 720.0
}

/// log G(1+z) for real z > −1 from the Weierstrass product
/// G(1+z) = (2π)^{z/2} e^{−(z + (1+γ)z²)/2} Π_k (1+z/k)^k e^{−z + z²/(2k)},
/// with `terms` factors and the rest of the product summed in closed form.
pub fn ln_barnes_g(one_plus_z: f64, terms: usize) -> Result<f64, AnalyticsError> {
    let z = one_plus_z - 1.0;
    if !(z > -1.0) || !z.is_finite() {
        return Err(AnalyticsError::Domain(format!("log G needs argument > 0, got {one_plus_z}")));
    }
    let n = terms.max(2 * z.abs().ceil() as usize + 2);
    let mut acc = NeumaierSum::new();
    acc.add(0.5 * z * LN_2PI - 0.5 * (z + (1.0 + EULER_GAMMA) * z * z));
    for k in 1..=n {
        let k = k as f64;
        acc.add(k * (z / k).ln_1p() - z + z * z / (2.0 * k));
    }
    // k ln(1+z/k) − z + z²/(2k) = Σ_{m>=3} (−1)^{m+1} z^m / (m k^{m−1}), |z| < k
    let nf = n as f64;
    let mut zm = z * z;
    for m in 3..=60 {
        zm *= z;
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let t = sign * zm / m as f64 * hurwitz_tail((m - 1) as f64, nf);
        acc.add(t);
        if t.abs() < 1e-18 {
            break;
        }
    }
    Ok(acc.value())
}

/// Barnes G at real argument w > 0.
pub fn barnes_g(w: f64, terms: usize) -> Result<f64, AnalyticsError> {
    Ok(ln_barnes_g(w, terms)?.exp())
}

fn check_lambda(lambda: f64) -> Result<(), AnalyticsError> {
    let ok = lambda == -1.0 || lambda == -0.5 || (0.0..=HKO_LAMBDA_MAX).contains(&lambda);
    if ok {
        Ok(())
    } else {
        Err(AnalyticsError::UnsupportedLambda(lambda))
    }
}

/// Euler factor (1 − 1/p)^{λ²} Σ_m ((λ)_m/m!)² p^{−m}. The rising factorial
/// (λ)_m/m! = Γ(m+λ)/(m!Γ(λ)) is the analytic continuation through λ = 0, −1,
/// where the series terminates.
fn euler_factor(lambda: f64, p: f64) -> f64 {
    let mut c = 1.0;
    let mut pw = 1.0;
    let mut acc = NeumaierSum::new();
    acc.add(1.0);
    for m in 1..5000 {
        c *= (lambda + m as f64 - 1.0) / m as f64;
        pw /= p;
        let t = c * c * pw;
        acc.add(t);
        if c == 0.0 || (t < 1e-18 * acc.value() && m as f64 > 2.0 * lambda.abs()) {
            break;
        }
    }
    (1.0 - 1.0 / p).powf(lambda * lambda) * acc.value()
}

/// a_λ over primes up to the cutoff.
pub fn arithmetic_factor(lambda: f64, prime_cutoff: u64) -> f64 {
    let mut ln = NeumaierSum::new();
    for p in primes_up_to(prime_cutoff) {
        ln.add(euler_factor(lambda, p as f64).ln());
    }
    ln.value().exp()
}

pub fn hko_prediction(lambda: f64, t: f64, prime_cutoff: u64, g_terms: usize) -> Result<ZeroSumReport, AnalyticsError> {
    check_lambda(lambda)?;
    if !(t > 2.0 * PI) {
        return Err(AnalyticsError::Domain(format!("prediction needs T > 2π, got {t}")));
    }
    let g = (2.0 * ln_barnes_g(lambda + 2.0, g_terms)? - ln_barnes_g(2.0 * lambda + 3.0, g_terms)?).exp();
    let a = arithmetic_factor(lambda, prime_cutoff);
    let u = t / (2.0 * PI);
    let value = g * a * u * u.ln().powf((lambda + 1.0).powi(2));
    Ok(ZeroSumReport::new(
        ReportKind::Hko,
        &[("lambda", lambda), ("T", t), ("prime_cutoff", prime_cutoff as f64), ("g_terms", g_terms as f64)],
        ReportValue::Real(value),
    )
    .with_extra(&[("G_factor", g), ("a_lambda", a)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// log G(1+z) by the recurrence G(w+1) = Γ(w)G(w) up to a large
    /// argument and the asymptotic expansion there.
    fn ln_g_asymptotic(w: f64) -> f64 {
        use crate::kernel::ln_gamma_real;
        let zeta_prime_minus_1 = -0.165_421_143_700_450_9;
        let mut shift = 0.0;
        let mut z = w - 1.0;
        while z < 30.0 {
            shift += ln_gamma_real(z + 1.0).unwrap();
            z += 1.0;
        }
        // log G(1+z) ~ z²/2 log z − 3z²/4 + z/2 log 2π − log z/12 + ζ'(−1) + Σ B_{2k+2}/(4k(k+1)z^{2k})
        // B₄, B₆, B₈
        let b = [-1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];
        let mut s = 0.5 * z * z * z.ln() - 0.75 * z * z + 0.5 * z * LN_2PI - z.ln() / 12.0 + zeta_prime_minus_1;
        for (k, bk) in b.iter().enumerate() {
            let k = (k + 1) as f64;
            s += bk / (4.0 * k * (k + 1.0) * z.powf(2.0 * k));
        }
        s - shift
    }

    #[test]
    fn classical_values() {
        assert!(ln_barnes_g(1.0, 200).unwrap().abs() < 1e-15);
        assert!(ln_barnes_g(2.0, 200).unwrap().abs() < 1e-13);
        // G(4) = Γ(3)Γ(2)Γ(1) = 2
        assert!((barnes_g(4.0, 200).unwrap() - 2.0).abs() < 1e-12);
        assert!((barnes_g(6.0, 200).unwrap() - 288.0).abs() < 1e-9);
    }

    #[test]
    fn product_matches_asymptotic_route() {
        for &w in &[0.5, 1.5, 2.0, 3.7, 9.0, 15.0] {
            let a = ln_barnes_g(w, 200).unwrap();
            let b = ln_g_asymptotic(w);
            assert!((a - b).abs() < 1e-10 * (1.0 + b.abs()), "w={w}: {a} vs {b}");
        }
    }

    #[test]
    fn lambda_zero_and_minus_one() {
        let t = 1000.0;
        let u = t / (2.0 * PI);
        let r = hko_prediction(0.0, t, 10_000, 200).unwrap();
        assert!((r.value.re() - u * u.ln()).abs() < 1e-9 * u * u.ln());
        let r = hko_prediction(-1.0, t, 10_000, 200).unwrap();
        // a_{−1} = Π(1 − p^{−2}) → 6/π²
        assert!((r.extra["a_lambda"] - 6.0 / (PI * PI)).abs() < 1e-4);
        assert!((r.value.re() / (3.0 * t / PI.powi(3)) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn supported_set() {
        assert!(matches!(hko_prediction(7.0, 1000.0, 100, 200), Err(AnalyticsError::UnsupportedLambda(_))));
        assert!(matches!(hko_prediction(-0.7, 1000.0, 100, 200), Err(AnalyticsError::UnsupportedLambda(_))));
        assert!(hko_prediction(-0.5, 1000.0, 1000, 200).unwrap().value.re() > 0.0);
        assert!(hko_prediction(6.0, 1000.0, 1000, 200).unwrap().value.re() > 0.0);
    }
}
