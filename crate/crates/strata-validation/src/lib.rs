//! Reporting helpers for the acceptance checks.
//!
//! Each criterion runs as a closure returning `Ok(())` or a reason; the result
//! is written as one `PASS`/`FAIL` line straight to the process's standard
//! output (bypassing the test harness's capture), and a failure panics so the
//! surrounding test fails.

use std::io::Write;

use strata_ring::{Basis, NumClass, MAX_CAP};

/// Outcome of one check: `Err` carries the reason for failing.
pub type Check = Result<(), String>;

/// Returns `Err(format!(...))` from the enclosing check unless the condition holds.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

/// Runs criterion `number`, prints its `PASS`/`FAIL` line and panics on failure.
pub fn criterion(number: u32, title: &str, body: impl FnOnce() -> Check) {
    match body() {
        Ok(()) => emit(&format!("PASS {number:>2}: {title}")),
        Err(why) => {
            emit(&format!("FAIL {number:>2}: {title}: {why}"));
            panic!("criterion {number} failed: {why}");
        }
    }
}

/// Prints a context line for criterion `number`.
pub fn info(number: u32, text: &str) {
    emit(&format!("INFO {number:>2}: {text}"));
}

/// Turns any displayable error into a check failure labelled `what`.
pub fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Moves a class to the closed-form ring shape: basis `Q_k`, full hyperplane
/// truncation.
pub fn normalized(c: &NumClass, k: i64) -> Result<NumClass, String> {
    ok(c.rebase(Basis::Q(k)).and_then(|c| c.with_f_cap(MAX_CAP)), "normalize")
}
