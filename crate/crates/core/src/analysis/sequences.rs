use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::table::{Algorithm, ComplexityTable};

/// One term of a derived sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqEntry {
    pub index: u32,
    pub value: u64,
    /// The table proves this is the true value, not just the best in range.
    pub reliable: bool,
}

/// `e(k)` (smallest of complexity `k`), `E(k)` and `E₂(k)` (largest and
/// second largest with complexity at most `k`) and `r(k)` (smallest of
/// rank `k`), as far as a table reaches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSet {
    pub limit: u64,
    pub algorithm: Algorithm,
    pub e: Vec<SeqEntry>,
    pub e_max: Vec<SeqEntry>,
    pub e2_max: Vec<SeqEntry>,
    pub r: Option<Vec<SeqEntry>>,
}

fn lookup(s: &[SeqEntry], k: u32) -> Option<&SeqEntry> {
    s.iter().find(|x| x.index == k)
}

impl SequenceSet {
    pub fn e(&self, k: u32) -> Option<&SeqEntry> {
        lookup(&self.e, k)
    }

    pub fn e_max(&self, k: u32) -> Option<&SeqEntry> {
        lookup(&self.e_max, k)
    }

    pub fn e2_max(&self, k: u32) -> Option<&SeqEntry> {
        lookup(&self.e2_max, k)
    }

    /// `r` entries; a capability error if the table had no ranks.
    pub fn r(&self) -> Result<&[SeqEntry]> {
        self.r
            .as_deref()
            .ok_or_else(|| Error::Capability("r(k) needs a table with ranks".into()))
    }

    pub fn reliable_e(&self) -> impl Iterator<Item = &SeqEntry> {
        self.e.iter().filter(|x| x.reliable)
    }

    /// Largest `k` with a reliable `E(k)`.
    pub fn e_max_reliable_up_to(&self) -> Option<u32> {
        self.e_max.iter().filter(|x| x.reliable).map(|x| x.index).max()
    }

    /// Largest `k` with a reliable `e(k)`.
    pub fn e_reliable_up_to(&self) -> Option<u32> {
        self.reliable_e().map(|x| x.index).max()
    }
}

/// Sequence entries from first occurrences; an entry is reliable when
/// every smaller index also occurs.
fn first_occurrences(first: &[u64], from: usize) -> Vec<SeqEntry> {
    let mut contiguous = true;
    let mut out = Vec::new();
    for (k, &v) in first.iter().enumerate().skip(from) {
        if v == 0 {
            contiguous = false;
            continue;
        }
        out.push(SeqEntry { index: k as u32, value: v, reliable: contiguous });
    }
    out
}

pub fn derive_sequences(t: &ComplexityTable) -> SequenceSet {
    let mut first_c = vec![0u64; 256];
    let mut top = vec![[0u64; 2]; 256];
    for (n, c) in t.iter() {
        let c = c as usize;
        if first_c[c] == 0 {
            first_c[c] = n;
        }
        // ascending scan: the last two seen are the largest two
        top[c] = [n, top[c][0]];
    }
    let e = first_occurrences(&first_c, 1);

    // every m > limit has ‖m‖ ≥ lower_bound(limit + 1)
    let beyond = bounds::lower_bound(t.limit() + 1).expect("limit + 1 >= 2");
    let max_c = first_c.iter().rposition(|&v| v != 0).unwrap_or(0);
    let mut e_max = Vec::new();
    let mut e2_max = Vec::new();
    let mut best = [0u64; 2];
    for (k, pair) in top.iter().enumerate().take(max_c + 1).skip(1) {
        for &v in pair {
            if v > best[0] {
                best = [v, best[0]];
            } else if v > best[1] && v != best[0] {
                best[1] = v;
            }
        }
        let reliable = (k as u32) < beyond;
        e_max.push(SeqEntry { index: k as u32, value: best[0], reliable });
        if best[1] != 0 {
            e2_max.push(SeqEntry { index: k as u32, value: best[1], reliable });
        }
    }

    let r = t.rank_bytes().map(|ranks| {
        let mut first_r = vec![0u64; 256];
        for (n, &rk) in ranks.iter().enumerate().skip(1) {
            if first_r[rk as usize] == 0 {
                first_r[rk as usize] = n as u64;
            }
        }
        first_occurrences(&first_r, 0)
    });

    SequenceSet { limit: t.limit(), algorithm: t.algorithm(), e, e_max, e2_max, r }
}
