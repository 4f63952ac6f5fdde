//! Process-wide wall-clock budget for long eliminations.
//!
//! The CLI arms a deadline with [`set_deadline`]; long-running loops call
//! [`check`] periodically and abort with [`Error::BudgetExceeded`] once it has
//! passed. With no deadline armed, [`check`] never fails.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

static EPOCH: OnceLock<Instant> = OnceLock::new();
// Milliseconds after EPOCH; 0 means unarmed.
static DEADLINE_MS: AtomicU64 = AtomicU64::new(0);

fn epoch() -> Instant {
    *EPOCH.get_or_init(Instant::now)
}

pub fn set_deadline(budget: Option<Duration>) {
    let ms = match budget {
        Some(b) => (epoch().elapsed() + b).as_millis().max(1) as u64,
        None => 0,
    };
    DEADLINE_MS.store(ms, Ordering::Relaxed);
}

pub fn check() -> Result<()> {
    let deadline = DEADLINE_MS.load(Ordering::Relaxed);
    if deadline != 0 && epoch().elapsed().as_millis() as u64 > deadline {
        return Err(Error::BudgetExceeded);
    }
    Ok(())
}
