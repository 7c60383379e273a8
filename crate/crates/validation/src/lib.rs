//! A small pass/fail ledger for acceptance runs.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

pub type Check = Result<String, String>;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Debug, Default)]
pub struct Report {
    outcomes: Vec<Outcome>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs one criterion, treating a panic as a failure, and prints its line.
    pub fn run(&mut self, id: usize, title: &str, check: impl FnOnce() -> Check) {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let outcome = Outcome { id, title: title.to_owned(), passed, detail, elapsed: start.elapsed() };
        println!("{}", line(&outcome));
        self.outcomes.push(outcome);
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.passed).count()
    }
}

pub fn line(o: &Outcome) -> String {
    let verdict = if o.passed { "PASS" } else { "FAIL" };
    let mut s = format!("criterion {:>2}: {verdict}  {} [{:.2?}]", o.id, o.title, o.elapsed);
    if !o.detail.is_empty() {
        s.push_str(&format!(" ({})", o.detail));
    }
    s
}

/// `Err(msg)` unless `cond`.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Fails when `start` is older than `limit`.
pub fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_failures() {
        let mut r = Report::new();
        r.run(1, "ok", || Ok(String::new()));
        r.run(2, "boom", || panic!("bad"));
        r.run(3, "err", || Err("nope".into()));
        assert_eq!(r.failures(), 2);
        assert!(r.outcomes()[1].detail.contains("bad"));
        assert!(line(&r.outcomes()[0]).starts_with("criterion  1: PASS"));
    }
}
