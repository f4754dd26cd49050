//! Flat record types written by the commands. Reals are rounded to six
//! significant digits before they are stored.

use intcomplexity::analysis::{ChainRecord, CollapseRecord, Residual, TopLogRow};
use intcomplexity::{round_sig, Report};
use serde::{Deserialize, Serialize};

pub fn r6(x: f64) -> f64 {
    round_sig(x, 6)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryRow {
    pub n: u64,
    pub complexity: u32,
    pub rank: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub n: u64,
    pub complexity: u32,
    pub min_height: u32,
    pub height: u32,
    pub postfix: String,
    pub infix: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeqRow {
    pub sequence: String,
    pub index: u32,
    pub value: u64,
    pub reliable: bool,
}

/// One line per counterexample, or a single line with empty `n` when the
/// check holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub check: String,
    pub verdict: String,
    pub checked: u64,
    pub n: Option<u64>,
    pub detail: String,
}

impl VerifyRow {
    pub fn from_report(r: &Report) -> Vec<VerifyRow> {
        let verdict = if r.holds() { "holds" } else { "counterexamples" };
        let row = |n, detail: &str| VerifyRow {
            check: r.check.clone(),
            verdict: verdict.into(),
            checked: r.checked,
            n,
            detail: detail.into(),
        };
        if r.counterexamples.is_empty() {
            vec![row(None, "")]
        } else {
            r.counterexamples.iter().map(|c| row(Some(c.n), &c.detail)).collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollapseRow {
    pub p: u64,
    pub status: String,
    pub complexity: u32,
    pub rank: Option<u32>,
    pub logc: f64,
}

impl From<&CollapseRecord> for CollapseRow {
    fn from(r: &CollapseRecord) -> Self {
        CollapseRow {
            p: r.p,
            status: r.status.to_string(),
            complexity: r.complexity,
            rank: r.rank,
            logc: r6(r.logc),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRow {
    pub n: u32,
    pub end: u64,
    pub end_prime: bool,
    pub length: usize,
    /// Space-separated chain members.
    pub chain: String,
    pub q1_prime: Option<bool>,
    pub q2_prime: Option<bool>,
    pub q3_prime: Option<bool>,
}

impl From<&ChainRecord> for ChainRow {
    fn from(r: &ChainRecord) -> Self {
        let chain: Vec<String> = r.chain.iter().map(u64::to_string).collect();
        ChainRow {
            n: r.n,
            end: r.end,
            end_prime: r.end_prime,
            length: r.length,
            chain: chain.join(" "),
            q1_prime: r.quotient_prime[0],
            q2_prime: r.quotient_prime[1],
            q3_prime: r.quotient_prime[2],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirstOpRow {
    pub n: u64,
    pub has_product_decomposition: bool,
    pub minimal_addend: Option<u64>,
    pub classification: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub n: u32,
    pub log3_e: f64,
    pub fitted: f64,
    pub residual: f64,
}

impl From<&Residual> for ResidualRow {
    fn from(r: &Residual) -> Self {
        ResidualRow { n: r.n, log3_e: r6(r.log3_e), fitted: r6(r.fitted), residual: r6(r.residual) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopLogOut {
    pub n: u64,
    pub complexity: u32,
    pub logc: f64,
    pub rank: Option<u32>,
}

impl From<&TopLogRow> for TopLogOut {
    fn from(r: &TopLogRow) -> Self {
        TopLogOut { n: r.n, complexity: r.complexity, logc: r6(r.logc), rank: r.rank }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExprRow {
    pub n: u64,
    pub ones: u32,
    pub height: u32,
    pub postfix: String,
    pub infix: String,
}
