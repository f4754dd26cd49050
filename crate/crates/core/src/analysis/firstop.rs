use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::dp::EliminatorQueue;
use crate::table::ComplexityTable;

/// How a shortest expression of `n` must start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FirstOp {
    /// Some factor pair attains ‖n‖.
    Product,
    Sub1,
    Sub6,
    Sub8,
    Sub9,
    /// No product, and the smallest optimal addend is this value.
    SubOther(u64),
}

impl fmt::Display for FirstOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FirstOp::Product => f.write_str("product"),
            FirstOp::Sub1 => f.write_str("sub1"),
            FirstOp::Sub6 => f.write_str("sub6"),
            FirstOp::Sub8 => f.write_str("sub8"),
            FirstOp::Sub9 => f.write_str("sub9"),
            FirstOp::SubOther(a) => write!(f, "sub_other({a})"),
        }
    }
}

impl FromStr for FirstOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "product" => FirstOp::Product,
            "sub1" => FirstOp::Sub1,
            "sub6" => FirstOp::Sub6,
            "sub8" => FirstOp::Sub8,
            "sub9" => FirstOp::Sub9,
            _ => s
                .strip_prefix("sub_other(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|a| a.parse().ok())
                .map(FirstOp::SubOther)
                .ok_or_else(|| format!("bad first-operation class {s:?}"))?,
        })
    }
}

impl From<FirstOp> for String {
    fn from(f: FirstOp) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FirstOp {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstOpRecord {
    pub n: u64,
    pub has_product_decomposition: bool,
    pub minimal_addend: Option<u64>,
    pub classification: FirstOp,
}

fn minimal_addend(t: &ComplexityTable, n: u64, c: u32) -> Option<u64> {
    let bound = bounds::addend_bound(n, c).ok()?;
    (1..=bound).find(|&a| t.get(a).unwrap() + t.get(n - a).unwrap() == c)
}

fn record(t: &ComplexityTable, n: u64, factors: &[u64]) -> FirstOpRecord {
    let c = t.get(n).expect("in range");
    let mut product = false;
    if factors.len() >= 2 {
        let mut d = 2;
        while d * d <= n && !product {
            product = n % d == 0 && t.get(d).unwrap() + t.get(n / d).unwrap() == c;
            d += 1;
        }
    }
    let minimal_addend = minimal_addend(t, n, c);
    let classification = if product {
        FirstOp::Product
    } else {
        match minimal_addend {
            Some(1) => FirstOp::Sub1,
            Some(6) => FirstOp::Sub6,
            Some(8) => FirstOp::Sub8,
            Some(9) => FirstOp::Sub9,
            Some(a) => FirstOp::SubOther(a),
            None => unreachable!("‖{n}‖ attained neither by a product nor a sum"),
        }
    };
    FirstOpRecord { n, has_product_decomposition: product, minimal_addend, classification }
}

/// Classify a single `n ≥ 2`.
pub fn classify(t: &ComplexityTable, n: u64) -> FirstOpRecord {
    let mut f = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        while m % p == 0 {
            f.push(p);
            m /= p;
        }
        p += 1;
    }
    if m > 1 {
        f.push(m);
    }
    record(t, n, &f)
}

/// Every `n` whose classification is neither `product` nor `sub1`.
pub fn first_operation_scan(t: &ComplexityTable) -> Vec<FirstOpRecord> {
    let mut q = EliminatorQueue::new(t.limit());
    let mut out = Vec::new();
    for n in 2..=t.limit() {
        let f = q.factorize(n).expect("increasing n within limit");
        let c = t.get(n).unwrap();
        // fast path: a prime or a +1 step already settles it
        if f.len() == 1 && t.get(n - 1).unwrap() + 1 == c {
            continue;
        }
        let r = record(t, n, &f);
        if !matches!(r.classification, FirstOp::Product | FirstOp::Sub1) {
            out.push(r);
        }
    }
    out
}
