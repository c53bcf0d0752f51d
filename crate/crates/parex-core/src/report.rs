//! Structured verification reports: one record per check with computed
//! values, tolerance and pass/fail, plus free-form notes. Serialization to
//! CSV/JSON lives in the companion binary; the record layout here is the
//! stable contract (CSV columns: scenario, check, value_lhs, value_rhs,
//! tolerance, pass).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// FNV-1a over bytes; used for short input digests.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub fn digest_hex(parts: &[&str]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for p in parts {
        for &b in p.as_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h ^= 0x1f;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub scenario: String,
    pub check: String,
    /// Digest of the inputs that produced the record.
    pub digest: String,
    pub value_lhs: f64,
    pub value_rhs: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub grid: String,
    pub checks: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(scenario: impl Into<String>, seed: u64, grid: impl Into<String>) -> Self {
        Report {
            scenario: scenario.into(),
            seed,
            grid: grid.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Record a comparison `lhs ≈/≤ rhs` whose pass flag the caller computed.
    pub fn push(
        &mut self,
        check: impl Into<String>,
        inputs: &str,
        value_lhs: f64,
        value_rhs: f64,
        tolerance: f64,
        pass: bool,
    ) {
        let check = check.into();
        let digest = digest_hex(&[&self.scenario, &check, inputs]);
        self.checks.push(CheckRecord {
            scenario: self.scenario.clone(),
            check,
            digest,
            value_lhs,
            value_rhs,
            tolerance,
            pass,
        });
    }

    /// Equality within tolerance relative to max(|lhs|, |rhs|, floor).
    pub fn check_close(
        &mut self,
        check: impl Into<String>,
        inputs: &str,
        lhs: f64,
        rhs: f64,
        tol: f64,
        floor: f64,
    ) {
        let pass = crate::math::rel_close(lhs, rhs, tol, floor);
        self.push(check, inputs, lhs, rhs, tol, pass);
    }

    /// One-sided bound within the same scaled slack.
    pub fn check_le(
        &mut self,
        check: impl Into<String>,
        inputs: &str,
        lhs: f64,
        rhs: f64,
        tol: f64,
        floor: f64,
    ) {
        let pass = crate::math::le_close(lhs, rhs, tol, floor);
        self.push(check, inputs, lhs, rhs, tol, pass);
    }

    /// Record a value row that carries no assertion (tolerance NaN-free: we
    /// use 0 and pass = true).
    pub fn record(&mut self, check: impl Into<String>, inputs: &str, lhs: f64, rhs: f64) {
        self.push(check, inputs, lhs, rhs, 0.0, true);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&CheckRecord> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_are_stable_and_distinct() {
        let a = digest_hex(&["s", "c", "x"]);
        let b = digest_hex(&["s", "c", "x"]);
        let c = digest_hex(&["s", "c", "y"]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 16);
    }

    #[test]
    fn pass_bookkeeping() {
        let mut r = Report::new("demo", 1, "8x8");
        r.check_close("eq", "a", 1.0, 1.0 + 1e-13, 1e-12, 1.0);
        assert!(r.all_pass());
        r.check_le("le", "b", 2.0, 1.0, 1e-12, 1.0);
        assert!(!r.all_pass());
        assert_eq!(r.failed().len(), 1);
    }
}
