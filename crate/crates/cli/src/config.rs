//! Run configuration and the cached resources it resolves to.

use std::fs;
use std::path::{Path, PathBuf};

use mrl_core::kernel::Precision;
use mrl_core::moebius::{MertensEngine, DEFAULT_STRIDE};
use mrl_core::zeros::{
    find_zeros, import_zeros, read_table, refine_zero_with, write_table, ZeroTable, BUILTIN_T_MAX,
};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Bumped whenever cached artifacts change meaning.
pub const CACHE_VERSION: &str = "mrl-cache-v1";

pub const DEFAULT_T: f64 = 1000.0;
pub const DEFAULT_L: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PrecisionMode {
    Double,
    Extended,
}

impl PrecisionMode {
    pub fn precision(self) -> Precision {
        match self {
            PrecisionMode::Double => Precision::DOUBLE,
            PrecisionMode::Extended => Precision::EXTENDED,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Path to an ordinate file, or "builtin".
    pub zeros: Option<String>,
    pub cache_dir: Option<PathBuf>,
    pub precision: PrecisionMode,
    pub format: OutputFormat,
    pub t: f64,
    pub l: u32,
}

fn hex_digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p);
        h.update([0u8]);
    }
    format!("{:x}", h.finalize())
}

impl RunConfig {
    fn cache_path(&self, name: &str) -> Result<Option<PathBuf>, CliError> {
        let Some(dir) = &self.cache_dir else { return Ok(None) };
        fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("cache dir {}: {e}", dir.display())))?;
        Ok(Some(dir.join(name)))
    }

    /// The zero table, from the cache when its key matches.
    pub fn zero_table(&self) -> Result<ZeroTable, CliError> {
        let Some(spec) = &self.zeros else {
            return Err(CliError::Missing("no zero table: pass --zeros <file> or --zeros builtin".into()));
        };
        let prec = self.precision.precision();
        let bits = prec.significand_bits().to_string();
        let (key, build): (String, Box<dyn Fn() -> Result<ZeroTable, CliError>>) = if spec == "builtin" {
            let height = BUILTIN_T_MAX.max(self.t);
            let h = height.to_string();
            (
                hex_digest(&[CACHE_VERSION.as_bytes(), b"builtin", h.as_bytes(), bits.as_bytes()]),
                Box::new(move || find_zeros(height, prec).map_err(CliError::from_zero)),
            )
        } else {
            let path = Path::new(spec).to_path_buf();
            let bytes = fs::read(&path).map_err(|e| CliError::Missing(format!("zero file {}: {e}", path.display())))?;
            (
                hex_digest(&[CACHE_VERSION.as_bytes(), b"file", &bytes, bits.as_bytes()]),
                Box::new(move || load_file(&path, prec)),
            )
        };
        let cached = self.cache_path(&format!("zeros-{key}.ztbl"))?;
        if let Some(p) = &cached {
            if let Ok(t) = read_table(p) {
                return Ok(t);
            }
        }
        let table = build()?;
        if let Some(p) = &cached {
            write_table(p, &table).map_err(CliError::from_zero)?;
        }
        Ok(table)
    }

    /// Zero table that reaches the configured cutoff.
    pub fn zero_table_for_cutoff(&self) -> Result<ZeroTable, CliError> {
        let t = self.zero_table()?;
        if t.is_empty() {
            return Err(CliError::Missing(format!("zero table {} is empty", t.source)));
        }
        if self.t > t.t_max {
            return Err(CliError::Usage(format!("--T {} exceeds the table height {}", self.t, t.t_max)));
        }
        Ok(t)
    }

    pub fn mertens_engine(&self) -> Result<MertensEngine, CliError> {
        let key = hex_digest(&[CACHE_VERSION.as_bytes(), b"mertens", DEFAULT_STRIDE.to_string().as_bytes()]);
        match self.cache_path(&format!("mertens-{key}.mrtc"))? {
            Some(p) => MertensEngine::with_cache_file(p, DEFAULT_STRIDE).map_err(CliError::from_moebius),
            None => Ok(MertensEngine::new()),
        }
    }
}

/// Imported ordinates are polished by Newton, which also fills ζ'(ρ).
fn load_file(path: &Path, prec: Precision) -> Result<ZeroTable, CliError> {
    let raw = import_zeros(path).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut records = Vec::with_capacity(raw.len());
    for r in &raw.records {
        let mut z = refine_zero_with(r.gamma, prec).map_err(CliError::from_zero)?;
        if (z.gamma - r.gamma).abs() > 1e-3 {
            return Err(CliError::Usage(format!(
                "ordinate {} refines to a different zero at {}",
                r.gamma, z.gamma
            )));
        }
        z.index = r.index;
        records.push(z);
    }
    Ok(ZeroTable { records, source: raw.source, t_max: raw.t_max })
}
