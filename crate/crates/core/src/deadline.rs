//! Cooperative per-thread deadlines.
//!
//! Long running loops call [`check`]; when a deadline installed with
//! [`with_deadline`] has passed, the computation unwinds with
//! [`Error::Timeout`].

use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Run `f` with a deadline `limit` from now (nested deadlines keep the
/// earlier one).
pub fn with_deadline<T>(limit: Option<Duration>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let prev = DEADLINE.with(|d| d.get());
    let new = match (prev, limit.map(|l| Instant::now() + l)) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    DEADLINE.with(|d| d.set(new));
    let out = f();
    DEADLINE.with(|d| d.set(prev));
    out
}

pub fn check() -> Result<()> {
    match DEADLINE.with(|d| d.get()) {
        Some(t) if Instant::now() >= t => Err(Error::Timeout),
        _ => Ok(()),
    }
}
