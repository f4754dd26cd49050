use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::table::{Algorithm, ComplexityTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Counterexamples,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u64,
    pub detail: String,
}

/// Outcome of a hypothesis check over a table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub limit: u64,
    pub algorithm: Algorithm,
    pub verdict: Verdict,
    /// Number of instances examined.
    pub checked: u64,
    pub counterexamples: Vec<Counterexample>,
    pub stats: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(check: &str, t: &ComplexityTable) -> Self {
        Report {
            check: check.to_string(),
            limit: t.limit(),
            algorithm: t.algorithm(),
            verdict: Verdict::Holds,
            checked: 0,
            counterexamples: Vec::new(),
            stats: BTreeMap::new(),
        }
    }

    /// Record one instance; a failing instance becomes a counterexample.
    pub fn expect(&mut self, ok: bool, n: u64, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.verdict = Verdict::Counterexamples;
            self.counterexamples.push(Counterexample { n, detail: detail() });
        }
    }

    pub fn stat(&mut self, key: &str, value: f64) {
        self.stats.insert(key.to_string(), round_sig(value, 6));
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Round to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.*e}", (digits.max(1) - 1) as usize).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(3.928088_7, 6), 3.92809);
        assert_eq!(round_sig(1234567.0, 6), 1234570.0);
        assert_eq!(round_sig(-0.000123456789, 6), -0.000123457);
        assert_eq!(round_sig(0.0, 6), 0.0);
        let x = round_sig(0.27130412, 6);
        assert_eq!(x.to_string().parse::<f64>().unwrap(), x);
    }
}
