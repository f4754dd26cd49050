use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::table::ComplexityTable;

/// Smallest `k` with `‖p^k‖ < k·‖p‖`, or the largest in-range power
/// checked without finding one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CollapseStatus {
    CollapsesAt(u32),
    OpenAbove(u32),
}

impl fmt::Display for CollapseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollapseStatus::CollapsesAt(k) => write!(f, "collapses_at({k})"),
            CollapseStatus::OpenAbove(k) => write!(f, "open_above({k})"),
        }
    }
}

impl FromStr for CollapseStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = |p: &str| -> Option<u32> { s.strip_prefix(p)?.strip_suffix(')')?.parse().ok() };
        if let Some(k) = inner("collapses_at(") {
            Ok(CollapseStatus::CollapsesAt(k))
        } else if let Some(k) = inner("open_above(") {
            Ok(CollapseStatus::OpenAbove(k))
        } else {
            Err(format!("bad collapse status {s:?}"))
        }
    }
}

impl From<CollapseStatus> for String {
    fn from(s: CollapseStatus) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for CollapseStatus {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollapseRecord {
    pub p: u64,
    pub status: CollapseStatus,
    pub complexity: u32,
    pub rank: Option<u32>,
    pub logc: f64,
}

/// Collapse status of every prime `p ≤ prime_cap` (and `p ≤ limit`).
pub fn collapse_scan(t: &ComplexityTable, prime_cap: u64) -> Vec<CollapseRecord> {
    let cap = prime_cap.min(t.limit());
    if cap < 2 {
        return Vec::new();
    }
    primal::Sieve::new(cap as usize)
        .primes_from(0)
        .take_while(|&p| p as u64 <= cap)
        .map(|p| collapse_of(t, p as u64))
        .collect()
}

fn collapse_of(t: &ComplexityTable, p: u64) -> CollapseRecord {
    let cp = t.get(p).expect("in range");
    let mut k = 1;
    let mut pk = p;
    let mut status = None;
    while let Some(next) = pk.checked_mul(p).filter(|&v| v <= t.limit()) {
        pk = next;
        k += 1;
        if t.get(pk).unwrap() < k * cp {
            status = Some(CollapseStatus::CollapsesAt(k));
            break;
        }
    }
    CollapseRecord {
        p,
        status: status.unwrap_or(CollapseStatus::OpenAbove(k)),
        complexity: cp,
        rank: t.rank(p),
        logc: bounds::log_complexity(p, cp).expect("p >= 2"),
    }
}
