use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{MoebiusError, MAX_N};

/// Segment width used when streaming μ over long ranges.
pub const SEGMENT_LEN: u64 = 1 << 18;

/// μ(n) for n in [lo, hi), plus M(lo − 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoebiusSegment {
    pub lo: u64,
    pub hi: u64,
    pub mu: Vec<i8>,
    pub mertens_at_lo_minus_1: i64,
}

impl MoebiusSegment {
    pub fn get(&self, n: u64) -> Option<i8> {
        if n < self.lo || n >= self.hi {
            return None;
        }
        Some(self.mu[(n - self.lo) as usize])
    }

    pub fn sum(&self) -> i64 {
        self.mu.iter().map(|&m| m as i64).sum()
    }

    /// M(hi − 1).
    pub fn mertens_at_end(&self) -> i64 {
        self.mertens_at_lo_minus_1 + self.sum()
    }
}

/// Primes p <= limit by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn check_range(lo: u64, hi: u64) -> Result<(), MoebiusError> {
    if lo < 1 || hi <= lo || hi > MAX_N + 1 {
        return Err(MoebiusError::OutOfRange(format!(
            "segment [{lo}, {hi}) must satisfy 1 <= lo < hi <= {}",
            MAX_N + 1
        )));
    }
    Ok(())
}

/// μ on [lo, hi) given the primes up to √(hi − 1). Leaves the prefix at 0.
pub(crate) fn sieve_with_primes(lo: u64, hi: u64, primes: &[u64]) -> MoebiusSegment {
    let len = (hi - lo) as usize;
    let mut mu = vec![1i8; len];
    // product of the small primes found so far; the leftover cofactor, if
    // any, is a single prime above √hi.
    let mut rest: Vec<u64> = (lo..hi).collect();
    for &p in primes {
        if p * p > hi - 1 {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m < hi {
            let i = (m - lo) as usize;
            mu[i] = -mu[i];
            rest[i] /= p;
            m += p;
        }
        let pp = p * p;
        let mut m = lo.div_ceil(pp) * pp;
        while m < hi {
            mu[(m - lo) as usize] = 0;
            m += pp;
        }
    }
    for i in 0..len {
        if mu[i] != 0 && rest[i] > 1 {
            mu[i] = -mu[i];
        }
    }
    MoebiusSegment { lo, hi, mu, mertens_at_lo_minus_1: 0 }
}

/// μ(n) on [lo, hi) by a segmented sieve. M(lo − 1) is filled by streaming
/// the prefix, which costs O(lo); the cached path lives on `MertensEngine`.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<MoebiusSegment, MoebiusError> {
    check_range(lo, hi)?;
    let primes = primes_up_to(isqrt(hi - 1));
    let mut seg = sieve_with_primes(lo, hi, &primes);
    if lo > 1 {
        let mut prefix = 0i64;
        stream_mu(1, lo, |_, m| prefix += m as i64)?;
        seg.mertens_at_lo_minus_1 = prefix;
    }
    Ok(seg)
}

/// Sieve [lo, hi) in parallel chunks, returned in ascending order with
/// prefixes relative to `base` = M(lo − 1).
pub(crate) fn sieve_blocks(lo: u64, hi: u64, base: i64) -> Result<Vec<MoebiusSegment>, MoebiusError> {
    check_range(lo, hi)?;
    let primes = primes_up_to(isqrt(hi - 1));
    let starts: Vec<u64> = (lo..hi).step_by(SEGMENT_LEN as usize).collect();
    let mut segs: Vec<MoebiusSegment> = starts
        .par_iter()
        .map(|&a| sieve_with_primes(a, (a + SEGMENT_LEN).min(hi), &primes))
        .collect();
    let mut running = base;
    for s in &mut segs {
        s.mertens_at_lo_minus_1 = running;
        running += s.sum();
    }
    Ok(segs)
}

/// Visit (n, μ(n)) for n in [lo, hi) in ascending order.
pub fn stream_mu(lo: u64, hi: u64, mut f: impl FnMut(u64, i8)) -> Result<(), MoebiusError> {
    if hi <= lo {
        return Ok(());
    }
    check_range(lo, hi)?;
    // batches keep memory bounded while still sieving in parallel
    let batch = SEGMENT_LEN * rayon::current_num_threads().max(1) as u64 * 2;
    let mut a = lo;
    while a < hi {
        let b = (a + batch).min(hi);
        for seg in sieve_blocks(a, b, 0)? {
            for (i, &m) in seg.mu.iter().enumerate() {
                f(seg.lo + i as u64, m);
            }
        }
        a = b;
    }
    Ok(())
}

/// Visit (n, μ(n), M(n)) for n in [1, hi).
pub fn stream_mertens(hi: u64, mut f: impl FnMut(u64, i8, i64)) -> Result<(), MoebiusError> {
    let mut m = 0i64;
    stream_mu(1, hi, |n, mu| {
        m += mu as i64;
        f(n, mu, m);
    })
}

/// Plain M(x) by a full sieve, with no caching.
pub fn mertens(x: u64) -> Result<i64, MoebiusError> {
    if !(1..=MAX_N).contains(&x) {
        return Err(MoebiusError::OutOfRange(format!("mertens({x}) needs 1 <= x <= {MAX_N}")));
    }
    let mut m = 0i64;
    stream_mu(1, x + 1, |_, mu| m += mu as i64)?;
    Ok(m)
}
