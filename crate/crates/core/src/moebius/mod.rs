//! Exact integer-side quantities: μ(n) by segmented sieving, M(x), Riesz
//! means M_τ(x), the step integrals ∫₁ˣ M(u)u^{−κ}du and ∫₁ˣ (M(u)/u)²du,
//! and scans built on them.

mod engine;
mod riesz;
mod scans;
mod sieve;

use thiserror::Error;

pub use engine::{load_checkpoints, MertensCheckpoint, MertensEngine, CACHE_MAGIC, DEFAULT_STRIDE};
pub use riesz::{
    integral_m, riesz_mean_direct, riesz_recurrence_check, unit_power_integral, weak_mertens_integral,
    RieszQuery,
};
pub use scans::{
    density_s, density_s_scaled, divim_sign_scan, single_term_limit, tau_regime_scan, DensityReport, SignChangeReport,
    TauRegimeRow, TauSchedule,
};
pub use sieve::{mertens, primes_up_to, sieve_segment, stream_mertens, stream_mu, MoebiusSegment, SEGMENT_LEN};

/// Largest n the sieve accepts.
pub const MAX_N: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoebiusError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("tau schedule undefined at x = {x}")]
    ScheduleUndefined { x: f64 },
    #[error("checkpoint cache: {0}")]
    Cache(String),
}
