//! Process-wide ceiling on the number of terms an enumeration or product may
//! produce. The limit is configuration, not state carried by any value.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_TERM_LIMIT: usize = 4_000_000;

/// Environment variable read by the command-line front end.
pub const TERM_LIMIT_ENV: &str = "TORTKARA_TERM_LIMIT";

static TERM_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_TERM_LIMIT);

pub fn term_limit() -> usize {
    TERM_LIMIT.load(Ordering::Relaxed)
}

pub fn set_term_limit(limit: usize) {
    TERM_LIMIT.store(limit.max(1), Ordering::Relaxed);
}

pub(crate) fn check(what: &'static str, needed: usize) -> Result<()> {
    let limit = term_limit();
    if needed > limit {
        return Err(Error::TermLimit { what, needed, limit });
    }
    Ok(())
}

/// `d^n`, saturating.
pub(crate) fn power(d: u32, n: usize) -> usize {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(d as usize);
    }
    acc
}
