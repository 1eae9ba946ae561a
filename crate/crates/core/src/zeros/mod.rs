//! Nontrivial zeros ρ = 1/2 + iγ with cached ζ'(ρ).
//!
//! Only γ > 0 is stored; consumers pair each zero with its conjugate.

mod cache;
mod finder;
mod refine;

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{zeta_deriv, KernelError, Precision, LN_2PI};

pub use cache::{read_table, write_table, TABLE_MAGIC};
pub use finder::{find_zeros, BUILTIN_T_MAX, SCAN_STEP};
pub use refine::{refine_zero, refine_zero_with, MAX_NEWTON_ITERATIONS, REFINE_TOLERANCE};

/// |ζ'(ρ)| below this marks a zero as a suspected multiple zero.
pub const MULTIPLE_ZERO_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZeroError {
    #[error("line {line}: cannot parse {text:?} as a positive ordinate")]
    Parse { line: usize, text: String },
    #[error("line {line}: ordinate {gamma} is not above the previous one")]
    NotAscending { line: usize, gamma: f64 },
    #[error("Newton iteration from {start} did not converge in {iterations} steps (|zeta| = {residual:e})")]
    NoConvergence { start: f64, iterations: usize, residual: f64 },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("io: {0}")]
    Io(String),
    #[error("zero table cache: {0}")]
    Cache(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    /// 1-based rank by ordinate.
    pub index: u64,
    pub gamma: f64,
    /// ζ'(1/2 + iγ), unset until evaluated.
    pub zeta_prime: Option<Complex64>,
    /// Significand bits of the evaluation that produced γ (0 when imported).
    pub refined_bits: u32,
}

impl ZeroRecord {
    pub fn rho(&self) -> Complex64 {
        Complex64::new(0.5, self.gamma)
    }

    /// True when |ζ'(ρ)| is small enough to suspect a multiple zero.
    pub fn suspect_multiple(&self) -> bool {
        self.zeta_prime.is_some_and(|d| d.norm() < MULTIPLE_ZERO_THRESHOLD)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub records: Vec<ZeroRecord>,
    pub source: String,
    /// Height up to which the table claims completeness: the largest
    /// ordinate for imported files, the scan height for the finder.
    pub t_max: f64,
}

impl ZeroTable {
    pub fn empty(source: impl Into<String>) -> Self {
        Self { records: Vec::new(), source: source.into(), t_max: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Ordinate of the k-th zero, 1-based.
    pub fn gamma(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.records.get(i)).map(|r| r.gamma)
    }

    /// Records with γ <= T.
    pub fn up_to(&self, t: f64) -> &[ZeroRecord] {
        let n = self.records.partition_point(|r| r.gamma <= t);
        &self.records[..n]
    }

    /// Number of ordinates in (0, T].
    pub fn count_up_to(&self, t: f64) -> usize {
        self.up_to(t).len()
    }

    /// First `n` zeros as their own table.
    pub fn first(&self, n: usize) -> ZeroTable {
        let records: Vec<ZeroRecord> = self.records.iter().take(n).cloned().collect();
        let t_max = if n >= self.records.len() { self.t_max } else { records.last().map_or(0.0, |r| r.gamma) };
        ZeroTable { records, source: format!("{} [first {n}]", self.source), t_max }
    }

    pub fn has_all_derivatives(&self) -> bool {
        self.records.iter().all(|r| r.zeta_prime.is_some())
    }

    fn from_ordinates(gammas: Vec<f64>, source: String, bits: u32) -> Self {
        let t_max = gammas.last().copied().unwrap_or(0.0);
        let records = gammas
            .into_iter()
            .enumerate()
            .map(|(i, gamma)| ZeroRecord { index: i as u64 + 1, gamma, zeta_prime: None, refined_bits: bits })
            .collect();
        Self { records, source, t_max }
    }
}

/// Ordinates closer than this are treated as the same zero.
const DEDUP_TOLERANCE: f64 = 1e-9;

/// Parse text with one ordinate per line. Blank lines and lines starting
/// with '#' are skipped.
pub fn parse_zeros(text: &str, source: &str) -> Result<ZeroTable, ZeroError> {
    let mut gammas: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g: f64 = line
            .parse()
            .ok()
            .filter(|g: &f64| g.is_finite() && *g > 0.0)
            .ok_or_else(|| ZeroError::Parse { line: i + 1, text: line.to_string() })?;
        if let Some(&prev) = gammas.last() {
            if (g - prev).abs() <= DEDUP_TOLERANCE * prev {
                continue;
            }
            if g < prev {
                return Err(ZeroError::NotAscending { line: i + 1, gamma: g });
            }
        }
        gammas.push(g);
    }
    Ok(ZeroTable::from_ordinates(gammas, source.to_string(), 0))
}

/// Read an ordinate file; ζ'(ρ) is left unset.
pub fn import_zeros(path: impl AsRef<Path>) -> Result<ZeroTable, ZeroError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| ZeroError::Io(format!("{}: {e}", path.display())))?;
    parse_zeros(&text, &format!("file:{}", path.display()))
}

/// Fill ζ'(ρ) for every record.
pub fn zeta_prime_at_zeros(table: &ZeroTable, prec: Precision) -> Result<ZeroTable, ZeroError> {
    let records = table
        .records
        .par_iter()
        .map(|r| {
            let d = zeta_deriv(r.rho(), prec)?;
            Ok(ZeroRecord { zeta_prime: Some(d), ..r.clone() })
        })
        .collect::<Result<Vec<_>, ZeroError>>()?;
    Ok(ZeroTable { records, source: table.source.clone(), t_max: table.t_max })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub t: f64,
    pub observed: usize,
    /// (T/2π) log T − ((1 + log 2π)/2π) T
    pub main_term: f64,
    pub difference: f64,
    /// C · log T
    pub bound: f64,
    pub within_bound: bool,
    /// T lies above the table's completeness height.
    pub beyond_table: bool,
}

/// Riemann–von Mangoldt main term.
pub fn rvm_main_term(t: f64) -> f64 {
    t / (2.0 * PI) * t.ln() - (1.0 + LN_2PI) / (2.0 * PI) * t
}

pub const DEFAULT_COUNT_CONSTANT: f64 = 2.0;

pub fn verify_count(table: &ZeroTable, t: f64) -> CountReport {
    verify_count_with(table, t, DEFAULT_COUNT_CONSTANT)
}

pub fn verify_count_with(table: &ZeroTable, t: f64, c: f64) -> CountReport {
    let observed = table.count_up_to(t);
    let main_term = rvm_main_term(t);
    let difference = (observed as f64 - main_term).abs();
    let bound = c * t.ln().max(0.0);
    CountReport {
        t,
        observed,
        main_term,
        difference,
        bound,
        within_bound: difference <= bound,
        beyond_table: !table.is_empty() && t > table.t_max,
    }
}
