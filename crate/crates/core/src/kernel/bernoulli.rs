use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::KernelError;

/// Largest Bernoulli index served from the table.
pub const MAX_BERNOULLI_INDEX: usize = 120;

/// A Bernoulli number as an exact rational plus its nearest double.
#[derive(Debug, Clone, PartialEq)]
pub struct Bernoulli {
    pub exact: BigRational,
    pub value: f64,
}

fn table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Akiyama–Tanigawa; produces B_1 = +1/2, only even entries are served.
        let n = MAX_BERNOULLI_INDEX;
        let mut out = Vec::with_capacity(n + 1);
        let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(BigRational::new(BigInt::one(), BigInt::from(m as u64 + 1)));
            for j in (1..=m).rev() {
                let diff = &a[j - 1] - &a[j];
                a[j - 1] = diff * BigRational::from_integer(BigInt::from(j as u64));
            }
            out.push(a[0].clone());
        }
        out
    })
}

/// B_k for even `k` in `2..=MAX_BERNOULLI_INDEX`.
pub fn bernoulli(k: usize) -> Result<Bernoulli, KernelError> {
    if k == 0 || !k.is_multiple_of(2) || k > MAX_BERNOULLI_INDEX {
        return Err(KernelError::OutOfRange(format!(
            "Bernoulli index {k} (even, 2..={MAX_BERNOULLI_INDEX})"
        )));
    }
    let exact = table()[k].clone();
    let value = exact.to_f64().unwrap_or(f64::NAN);
    Ok(Bernoulli { exact, value })
}

/// B_k as a double; zero for odd k > 1.
pub fn bernoulli_f64(k: usize) -> f64 {
    static F64: OnceLock<Vec<f64>> = OnceLock::new();
    let t = F64.get_or_init(|| {
        table()
            .iter()
            .enumerate()
            .map(|(i, b)| if i == 1 { -0.5 } else { b.to_f64().unwrap_or(0.0) })
            .collect()
    });
    t.get(k).copied().unwrap_or(0.0)
}

/// B_{2k}/(2k)! for k >= 1, as exact rationals.
pub(crate) fn scaled_even(k: usize) -> &'static BigRational {
    static SCALED: OnceLock<Vec<BigRational>> = OnceLock::new();
    let t = SCALED.get_or_init(|| {
        let mut out = vec![BigRational::zero()];
        let mut fact = BigInt::one();
        let mut idx = 0u64;
        for j in 1..=MAX_BERNOULLI_INDEX / 2 {
            while idx < 2 * j as u64 {
                idx += 1;
                fact *= BigInt::from(idx);
            }
            out.push(&table()[2 * j] / BigRational::from_integer(fact.clone()));
        }
        out
    });
    &t[k]
}

/// B_{2k}/(2k)! as doubles, index k.
pub(crate) fn scaled_even_f64(k: usize) -> f64 {
    static F64: OnceLock<Vec<f64>> = OnceLock::new();
    let t = F64.get_or_init(|| {
        (0..=MAX_BERNOULLI_INDEX / 2)
            .map(|j| scaled_even(j).to_f64().unwrap_or(0.0))
            .collect()
    });
    t[k]
}
