use rayon::prelude::*;

use super::refine::refine_zero_with;
use super::{ZeroError, ZeroRecord, ZeroTable};
use crate::kernel::{hardy_z, Precision, ZETA_T_MAX};

/// Grid spacing for the sign-change scan of Hardy's Z.
pub const SCAN_STEP: f64 = 0.1;
/// Default height of the built-in table.
pub const BUILTIN_T_MAX: f64 = 1100.0;
// No zero lies below 14.13.
const SCAN_START: f64 = 10.0;

/// Regula falsi with the Illinois modification, on a bracket of Z.
fn illinois(mut a: f64, mut fa: f64, mut b: f64, mut fb: f64) -> Result<f64, ZeroError> {
    let mut side = 0i8;
    for _ in 0..200 {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = hardy_z(c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() < 1e-12 * b.abs() {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

/// All zeros with 0 < γ <= t_max from sign changes of Z(t) on a 0.1 grid,
/// each polished by Newton at `prec`. Pairs closer than the grid step can
/// be missed; below 1100 none are known to be.
pub fn find_zeros(t_max: f64, prec: Precision) -> Result<ZeroTable, ZeroError> {
    if !(t_max > 0.0) || t_max > ZETA_T_MAX {
        return Err(ZeroError::Kernel(crate::kernel::KernelError::OutOfRange(format!(
            "scan height {t_max} must lie in (0, {ZETA_T_MAX}]"
        ))));
    }
    let steps = ((t_max - SCAN_START) / SCAN_STEP).ceil().max(0.0) as usize;
    let grid: Vec<f64> = (0..=steps).map(|k| (SCAN_START + k as f64 * SCAN_STEP).min(t_max)).collect();
    let values = grid.par_iter().map(|&t| hardy_z(t)).collect::<Result<Vec<f64>, _>>()?;
    let brackets: Vec<(f64, f64, f64, f64)> = (1..grid.len())
        .filter(|&k| values[k - 1].signum() != values[k].signum() || values[k] == 0.0)
        .map(|k| (grid[k - 1], values[k - 1], grid[k], values[k]))
        .collect();
    let mut found = brackets
        .par_iter()
        .map(|&(a, fa, b, fb)| {
            let t0 = if fb == 0.0 { b } else { illinois(a, fa, b, fb)? };
            refine_zero_with(t0, prec)
        })
        .collect::<Result<Vec<ZeroRecord>, ZeroError>>()?;
    found.retain(|r| r.gamma <= t_max);
    found.dedup_by(|b, a| (b.gamma - a.gamma).abs() < 1e-9 * a.gamma);
    for (i, r) in found.iter_mut().enumerate() {
        r.index = i as u64 + 1;
    }
    Ok(ZeroTable { records: found, source: format!("builtin:{t_max}"), t_max })
}
