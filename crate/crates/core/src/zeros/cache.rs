//! Binary zero table: "ZTBL0001", u64 count, f64 T_max, u32 source length,
//! source bytes (UTF-8), then per record f64 γ, f64 Re ζ', f64 Im ζ',
//! u32 refined_bits. All little-endian. An unset ζ' is stored as NaN.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use super::{ZeroError, ZeroRecord, ZeroTable};

pub const TABLE_MAGIC: &[u8; 8] = b"ZTBL0001";
const RECORD_LEN: usize = 28;

pub fn write_table(path: impl AsRef<Path>, table: &ZeroTable) -> Result<(), ZeroError> {
    let path = path.as_ref();
    let src = table.source.as_bytes();
    let mut buf = Vec::with_capacity(28 + src.len() + RECORD_LEN * table.len());
    buf.extend_from_slice(TABLE_MAGIC);
    buf.extend_from_slice(&(table.len() as u64).to_le_bytes());
    buf.extend_from_slice(&table.t_max.to_le_bytes());
    buf.extend_from_slice(&(src.len() as u32).to_le_bytes());
    buf.extend_from_slice(src);
    for r in &table.records {
        let d = r.zeta_prime.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        buf.extend_from_slice(&r.gamma.to_le_bytes());
        buf.extend_from_slice(&d.re.to_le_bytes());
        buf.extend_from_slice(&d.im.to_le_bytes());
        buf.extend_from_slice(&r.refined_bits.to_le_bytes());
    }
    let io = |e: std::io::Error| ZeroError::Io(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, &buf).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], ZeroError> {
        if self.pos + n > self.bytes.len() {
            return Err(ZeroError::Cache("truncated file".into()));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u64(&mut self) -> Result<u64, ZeroError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn u32(&mut self) -> Result<u32, ZeroError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn f64(&mut self) -> Result<f64, ZeroError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

pub fn read_table(path: impl AsRef<Path>) -> Result<ZeroTable, ZeroError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| ZeroError::Io(format!("{}: {e}", path.display())))?;
    let mut r = Reader { bytes: &bytes, pos: 0 };
    if r.take(8)? != TABLE_MAGIC {
        return Err(ZeroError::Cache("missing ZTBL0001 header".into()));
    }
    let count = r.u64()? as usize;
    let t_max = r.f64()?;
    let src_len = r.u32()? as usize;
    let source = String::from_utf8(r.take(src_len)?.to_vec())
        .map_err(|_| ZeroError::Cache("source is not UTF-8".into()))?;
    if bytes.len() - r.pos != count * RECORD_LEN {
        return Err(ZeroError::Cache("record count does not match file length".into()));
    }
    let mut records = Vec::with_capacity(count);
    for i in 0..count {
        let gamma = r.f64()?;
        let (re, im) = (r.f64()?, r.f64()?);
        let refined_bits = r.u32()?;
        if let Some(prev) = records.last().map(|p: &ZeroRecord| p.gamma) {
            if !(gamma > prev) {
                return Err(ZeroError::Cache(format!("record {} not ascending", i + 1)));
            }
        }
        let zeta_prime = if re.is_nan() || im.is_nan() { None } else { Some(Complex64::new(re, im)) };
        records.push(ZeroRecord { index: i as u64 + 1, gamma, zeta_prime, refined_bits });
    }
    Ok(ZeroTable { records, source, t_max })
}
