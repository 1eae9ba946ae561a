//! Checkpointed Mertens values.
//!
//! Checkpoint k sits at x_k = k·stride and stores M(x_k) and
//! I2(x_k) = ∫₁^{x_k} (M(u)/u)² du. Blocks between checkpoints are sieved in
//! parallel and reduced in ascending order, so the stored values do not
//! depend on the thread count.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::riesz::unit_weight;
use super::sieve::{primes_up_to, sieve_with_primes, stream_mu};
use super::{MoebiusError, MAX_N};
use crate::sum::NeumaierSum;

pub const DEFAULT_STRIDE: u64 = 1_000_000;
pub const CACHE_MAGIC: &[u8; 8] = b"MRTC0001";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MertensCheckpoint {
    pub x: u64,
    pub m: i64,
    pub i2: f64,
    /// (κ, ∫₁^x M(u) u^{−κ} du) for the exponents queried so far; not persisted.
    #[serde(default)]
    pub i_kappa: Vec<(f64, f64)>,
}

impl MertensCheckpoint {
    fn origin() -> Self {
        Self { x: 0, m: 0, i2: 0.0, i_kappa: Vec::new() }
    }

    pub fn integral_for(&self, kappa: f64) -> Option<f64> {
        self.i_kappa.iter().find(|(k, _)| *k == kappa).map(|(_, v)| *v)
    }
}

/// Per-block sums that do not depend on M at the block start.
struct BlockSums {
    delta_m: i64,
    // Σ w, Σ P·w, Σ P²·w over the unit intervals owned by the block
    w: f64,
    pw: f64,
    ppw: f64,
}

#[derive(Debug)]
pub struct MertensEngine {
    stride: u64,
    checkpoints: Vec<MertensCheckpoint>,
    cache_path: Option<PathBuf>,
    dirty: bool,
}

impl Default for MertensEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl MertensEngine {
    pub fn new() -> Self {
        Self::with_stride(DEFAULT_STRIDE)
    }

    pub fn with_stride(stride: u64) -> Self {
        assert!(stride >= 2, "checkpoint stride must be at least 2");
        Self { stride, checkpoints: vec![MertensCheckpoint::origin()], cache_path: None, dirty: false }
    }

    /// Engine backed by a cache file. A missing file is fine; a file with a
    /// different stride or a bad header is ignored and later overwritten.
    pub fn with_cache_file(path: impl AsRef<Path>, stride: u64) -> Result<Self, MoebiusError> {
        let mut engine = Self::with_stride(stride);
        let path = path.as_ref().to_path_buf();
        if path.exists() {
            if let Ok(cps) = read_cache(&path, stride) {
                engine.checkpoints = cps;
            }
        }
        engine.cache_path = Some(path);
        Ok(engine)
    }

    pub fn stride(&self) -> u64 {
        self.stride
    }

    pub fn checkpoints(&self) -> &[MertensCheckpoint] {
        &self.checkpoints
    }

    /// Largest x covered by a checkpoint.
    pub fn covered(&self) -> u64 {
        self.checkpoints.last().map_or(0, |c| c.x)
    }

    fn block_sums(&self, a: u64, b: u64, primes: &[u64]) -> BlockSums {
        // Block owns μ(n) for n in (a, b] and unit intervals [n, n+1) for
        // n in [a, b). P(n) = Σ_{a<m<=n} μ(m), P(a) = 0.
        let seg = sieve_with_primes(a + 1, b + 1, primes);
        let mut w = NeumaierSum::new();
        let mut pw = NeumaierSum::new();
        let mut ppw = NeumaierSum::new();
        if a >= 1 {
            w.add(unit_weight(a));
        }
        let mut p = 0i64;
        for (i, &mu) in seg.mu.iter().enumerate() {
            let n = a + 1 + i as u64;
            p += mu as i64;
            if n < b {
                let wn = unit_weight(n);
                let pf = p as f64;
                w.add(wn);
                pw.add(pf * wn);
                ppw.add(pf * pf * wn);
            }
        }
        BlockSums { delta_m: p, w: w.value(), pw: pw.value(), ppw: ppw.value() }
    }

    /// Extend checkpoints so that the latest is at or beyond x.
    pub fn ensure(&mut self, x: u64) -> Result<(), MoebiusError> {
        if x > MAX_N {
            return Err(MoebiusError::OutOfRange(format!("x = {x} exceeds {MAX_N}")));
        }
        let target = x.div_ceil(self.stride) * self.stride;
        if target <= self.covered() {
            return Ok(());
        }
        let primes = primes_up_to(((target as f64).sqrt() as u64) + 2);
        let starts: Vec<u64> = (self.covered()..target).step_by(self.stride as usize).collect();
        let sums: Vec<BlockSums> = starts
            .par_iter()
            .map(|&a| self.block_sums(a, a + self.stride, &primes))
            .collect();
        for (a, s) in starts.iter().zip(sums) {
            let last = self.checkpoints.last().expect("origin checkpoint");
            let m0 = last.m as f64;
            let i2 = last.i2 + m0 * m0 * s.w + 2.0 * m0 * s.pw + s.ppw;
            let next = MertensCheckpoint { x: a + self.stride, m: last.m + s.delta_m, i2, i_kappa: Vec::new() };
            self.checkpoints.push(next);
        }
        self.dirty = true;
        self.flush()?;
        Ok(())
    }

    fn checkpoint_at_or_below(&self, x: u64) -> &MertensCheckpoint {
        let k = ((x / self.stride) as usize).min(self.checkpoints.len() - 1);
        &self.checkpoints[k]
    }

    /// M(x) from the nearest checkpoint below plus one partial segment.
    pub fn mertens(&mut self, x: u64) -> Result<i64, MoebiusError> {
        if !(1..=MAX_N).contains(&x) {
            return Err(MoebiusError::OutOfRange(format!("mertens({x}) needs 1 <= x <= {MAX_N}")));
        }
        self.ensure(x)?;
        let cp = self.checkpoint_at_or_below(x);
        let mut m = cp.m;
        stream_mu(cp.x + 1, x + 1, |_, mu| m += mu as i64)?;
        Ok(m)
    }

    /// ∫₁^x (M(u)/u)² du.
    pub fn weak_mertens_integral(&mut self, x: f64) -> Result<f64, MoebiusError> {
        check_real(x)?;
        let xi = x.floor() as u64;
        self.ensure(xi)?;
        let cp = self.checkpoint_at_or_below(xi).clone();
        let mut acc = NeumaierSum::new();
        acc.add(cp.i2);
        let mut m = cp.m;
        if cp.x >= 1 && cp.x < xi {
            acc.add(m as f64 * m as f64 * unit_weight(cp.x));
        }
        stream_mu(cp.x + 1, xi + 1, |n, mu| {
            m += mu as i64;
            if n < xi {
                acc.add(m as f64 * m as f64 * unit_weight(n));
            }
        })?;
        if x > xi as f64 {
            let mf = m as f64;
            acc.add(mf * mf * (1.0 / xi as f64 - 1.0 / x));
        }
        Ok(acc.value())
    }

    /// ∫₁^x M(u) u^{−κ} du, caching the per-checkpoint values for κ.
    pub fn integral_m(&mut self, x: f64, kappa: f64) -> Result<f64, MoebiusError> {
        check_real(x)?;
        let xi = x.floor() as u64;
        self.ensure(xi)?;
        let k_cp = ((xi / self.stride) as usize).min(self.checkpoints.len() - 1);
        self.fill_kappa(kappa, k_cp)?;
        let cp = self.checkpoints[k_cp].clone();
        let base = cp.integral_for(kappa).expect("filled above");
        let mut acc = NeumaierSum::new();
        acc.add(base);
        let mut m = cp.m;
        if cp.x >= 1 && cp.x < xi {
            acc.add(m as f64 * super::riesz::unit_power_integral(cp.x as f64, cp.x as f64 + 1.0, kappa));
        }
        stream_mu(cp.x + 1, xi + 1, |n, mu| {
            m += mu as i64;
            if n < xi {
                acc.add(m as f64 * super::riesz::unit_power_integral(n as f64, n as f64 + 1.0, kappa));
            }
        })?;
        if x > xi as f64 && xi >= 1 {
            acc.add(m as f64 * super::riesz::unit_power_integral(xi as f64, x, kappa));
        }
        Ok(acc.value())
    }

    fn fill_kappa(&mut self, kappa: f64, upto: usize) -> Result<(), MoebiusError> {
        let have = self.checkpoints.iter().take_while(|c| c.integral_for(kappa).is_some()).count();
        if have > upto {
            return Ok(());
        }
        if have == 0 {
            self.checkpoints[0].i_kappa.push((kappa, 0.0));
        }
        let start = have.max(1);
        if start > upto {
            return Ok(());
        }
        let stride = self.stride;
        let primes = primes_up_to(((self.checkpoints[upto].x as f64).sqrt() as u64) + 2);
        // per block: Σ w_n and Σ P(n) w_n with w_n = ∫_n^{n+1} u^{−κ} du
        let sums: Vec<(f64, f64)> = (start..=upto)
            .into_par_iter()
            .map(|k| {
                let a = (k as u64 - 1) * stride;
                let b = a + stride;
                let seg = sieve_with_primes(a + 1, b + 1, &primes);
                let mut w = NeumaierSum::new();
                let mut pw = NeumaierSum::new();
                if a >= 1 {
                    w.add(super::riesz::unit_power_integral(a as f64, a as f64 + 1.0, kappa));
                }
                let mut p = 0i64;
                for (i, &mu) in seg.mu.iter().enumerate() {
                    let n = a + 1 + i as u64;
                    p += mu as i64;
                    if n < b {
                        let wn = super::riesz::unit_power_integral(n as f64, n as f64 + 1.0, kappa);
                        w.add(wn);
                        pw.add(p as f64 * wn);
                    }
                }
                (w.value(), pw.value())
            })
            .collect();
        for (j, (w, pw)) in sums.into_iter().enumerate() {
            let k = start + j;
            let prev = &self.checkpoints[k - 1];
            let v = prev.integral_for(kappa).expect("filled in order") + prev.m as f64 * w + pw;
            self.checkpoints[k].i_kappa.push((kappa, v));
        }
        Ok(())
    }

    /// Write the checkpoint file if anything changed since the last write.
    pub fn flush(&mut self) -> Result<(), MoebiusError> {
        if !self.dirty {
            return Ok(());
        }
        if let Some(path) = &self.cache_path {
            write_cache(path, &self.checkpoints).map_err(|e| MoebiusError::Cache(e.to_string()))?;
        }
        self.dirty = false;
        Ok(())
    }
}

fn check_real(x: f64) -> Result<(), MoebiusError> {
    if !(x >= 1.0) || x > MAX_N as f64 {
        return Err(MoebiusError::Domain(format!("x = {x} must lie in [1, {MAX_N}]")));
    }
    Ok(())
}

fn write_cache(path: &Path, cps: &[MertensCheckpoint]) -> io::Result<()> {
    let mut buf = Vec::with_capacity(8 + 24 * cps.len());
    buf.extend_from_slice(CACHE_MAGIC);
    for c in cps.iter().skip(1) {
        buf.extend_from_slice(&c.x.to_le_bytes());
        buf.extend_from_slice(&c.m.to_le_bytes());
        buf.extend_from_slice(&c.i2.to_le_bytes());
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    // write-then-rename keeps a crashed writer from leaving a torn file
    let tmp = path.with_extension("tmp");
    fs::File::create(&tmp)?.write_all(&buf)?;
    fs::rename(tmp, path)
}

fn read_cache(path: &Path, stride: u64) -> io::Result<Vec<MertensCheckpoint>> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    let bad = |m: &str| io::Error::new(io::ErrorKind::InvalidData, m.to_string());
    if bytes.len() < 8 || &bytes[..8] != CACHE_MAGIC {
        return Err(bad("missing MRTC0001 header"));
    }
    let body = &bytes[8..];
    if body.len() % 24 != 0 {
        return Err(bad("truncated record"));
    }
    let mut out = vec![MertensCheckpoint::origin()];
    for (k, rec) in body.chunks_exact(24).enumerate() {
        let x = u64::from_le_bytes(rec[0..8].try_into().expect("8 bytes"));
        let m = i64::from_le_bytes(rec[8..16].try_into().expect("8 bytes"));
        let i2 = f64::from_le_bytes(rec[16..24].try_into().expect("8 bytes"));
        if x != (k as u64 + 1) * stride || m.unsigned_abs() > x || !(i2 >= out.last().expect("origin").i2) {
            return Err(bad("record inconsistent with stride"));
        }
        out.push(MertensCheckpoint { x, m, i2, i_kappa: Vec::new() });
    }
    Ok(out)
}

/// Read checkpoints back from a file; exposed for inspection tools.
pub fn load_checkpoints(path: impl AsRef<Path>, stride: u64) -> Result<Vec<MertensCheckpoint>, MoebiusError> {
    read_cache(path.as_ref(), stride).map_err(|e| MoebiusError::Cache(e.to_string()))
}
