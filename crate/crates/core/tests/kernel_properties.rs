use mrl_core::kernel::extended::{euler_maclaurin_wide, to_f64};
use mrl_core::kernel::{gamma_ratio, log_gamma, zeta, zeta_deriv, Precision};
use num_complex::Complex64;
use proptest::prelude::*;

const D: Precision = Precision::DOUBLE;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // Left half plane: the reflected evaluator against the unreflected series
    // summed in wide floats, where the head-term cancellation is harmless.
    #[test]
    fn functional_equation(sigma in -10.0f64..-0.01, t in -30.0f64..30.0) {
        let s = Complex64::new(sigma, t);
        let reflected = zeta(s, D).unwrap();
        let bits = Precision::new(192).unwrap();
        let (w, _) = euler_maclaurin_wide(s, bits, 60 + t.abs().ceil() as u64).unwrap();
        let direct = Complex64::new(to_f64(&w.re), to_f64(&w.im));
        prop_assert!(rel(reflected, direct) < 1e-8, "{s}: {reflected} vs {direct}");
    }

    #[test]
    fn conjugate_symmetry(sigma in -5.0f64..5.0, t in 0.1f64..60.0, tau in 0.0f64..3.0) {
        let s = Complex64::new(sigma, t);
        prop_assume!((s - 1.0).norm() > 1e-3);
        prop_assert_eq!(zeta(s.conj(), D).unwrap(), zeta(s, D).unwrap().conj());
        prop_assert_eq!(zeta_deriv(s.conj(), D).unwrap(), zeta_deriv(s, D).unwrap().conj());
        prop_assert_eq!(log_gamma(s.conj()).unwrap(), log_gamma(s).unwrap().conj());
        prop_assert_eq!(gamma_ratio(s.conj(), tau).unwrap(), gamma_ratio(s, tau).unwrap().conj());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn derivative_matches_central_difference(sigma in 0.5f64..4.0, t in -50.0f64..50.0) {
        let s = Complex64::new(sigma, t);
        let h = 1e-6;
        let fd = (zeta(s + h, D).unwrap() - zeta(s - h, D).unwrap()) / (2.0 * h);
        let d = zeta_deriv(s, D).unwrap();
        prop_assert!(rel(fd, d) < 1e-7, "{s}: {fd} vs {d}");
    }

    #[test]
    fn log_gamma_exponentiates_to_gamma_recurrence(re in -8.0f64..8.0, im in -20.0f64..20.0) {
        let s = Complex64::new(re, im);
        prop_assume!(im.abs() > 1e-3 || re > 0.0);
        // Γ(s+1) = sΓ(s)
        let lhs = log_gamma(s + 1.0).unwrap().exp();
        let rhs = s * log_gamma(s).unwrap().exp();
        prop_assert!(rel(lhs, rhs) < 1e-12);
    }
}

#[test]
fn kernel_decays_monotonically_in_height() {
    for &tau in &[0.0, 0.5, 1.0, 2.0] {
        for k in 0..=6 {
            let sigma = 0.5 + 0.25 * k as f64;
            let mut prev = f64::INFINITY;
            let mut t = 10.0;
            while t <= 400.0 {
                let v = gamma_ratio(Complex64::new(sigma, t), tau).unwrap().norm();
                assert!(v < prev, "σ={sigma} τ={tau} t={t}");
                // |Γ(s)/Γ(1+τ+s)| ≍ |s|^{−1−τ}
                let bound = (sigma * sigma + t * t).powf(-(1.0 + tau) / 2.0);
                assert!(v <= 1.5 * bound && v >= 0.5 * bound);
                prev = v;
                t += 2.5;
            }
        }
    }
}
