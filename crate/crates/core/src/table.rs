use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};

/// Which builder produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sieve,
    Dp,
    Oracle,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Sieve => "sieve",
            Algorithm::Dp => "dp",
            Algorithm::Oracle => "oracle",
        }
    }
}

/// Largest complexity a one-byte table may ever hold.
pub const MAX_STORED_COMPLEXITY: u32 = 255;

/// Reject limits whose worst-case complexity `⌊3·log₂ limit⌋` would not fit
/// a byte.
pub fn check_limit(limit: u64) -> Result<()> {
    if limit < 1 {
        return Err(Error::Config("limit must be at least 1".into()));
    }
    if limit >= 2 && bounds::upper_bound(limit)? > MAX_STORED_COMPLEXITY {
        return Err(Error::Config(format!(
            "limit {limit} exceeds the one-byte complexity range"
        )));
    }
    if usize::try_from(limit).is_err() {
        return Err(Error::Config(format!("limit {limit} does not fit in memory")));
    }
    Ok(())
}

/// ‖n‖ (and optionally rank(n)) for every `n` in `[1, limit]`, one byte each.
///
/// Index 0 of both arrays is a zero placeholder so that `complexity[n]` is
/// the value for `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityTable {
    limit: u64,
    complexity: Vec<u8>,
    rank: Option<Vec<u8>>,
    algorithm: Algorithm,
}

impl ComplexityTable {
    /// Wrap raw arrays (with the index-0 placeholder). Lengths must be
    /// `limit + 1`.
    pub fn from_parts(
        complexity: Vec<u8>,
        rank: Option<Vec<u8>>,
        algorithm: Algorithm,
    ) -> Result<Self> {
        if complexity.len() < 2 {
            return Err(Error::Config("table must cover at least n = 1".into()));
        }
        let limit = (complexity.len() - 1) as u64;
        if let Some(r) = &rank {
            if r.len() != complexity.len() {
                return Err(Error::Config("rank and complexity lengths differ".into()));
            }
        }
        Ok(ComplexityTable { limit, complexity, rank, algorithm })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn has_ranks(&self) -> bool {
        self.rank.is_some()
    }

    /// ‖n‖, or `None` outside `[1, limit]`.
    #[inline]
    pub fn get(&self, n: u64) -> Option<u32> {
        if n == 0 || n > self.limit {
            return None;
        }
        Some(self.complexity[n as usize] as u32)
    }

    /// ‖n‖ with a range error outside the table.
    pub fn complexity(&self, n: u64) -> Result<u32> {
        self.get(n).ok_or(Error::Range { n, limit: self.limit })
    }

    /// rank(n), `None` if out of range or if the table has no ranks.
    pub fn rank(&self, n: u64) -> Option<u32> {
        if n == 0 || n > self.limit {
            return None;
        }
        self.rank.as_ref().map(|r| r[n as usize] as u32)
    }

    /// Raw complexity bytes, including the index-0 placeholder.
    pub fn complexity_bytes(&self) -> &[u8] {
        &self.complexity
    }

    pub fn rank_bytes(&self) -> Option<&[u8]> {
        self.rank.as_deref()
    }

    /// Copy of the first `limit` entries.
    pub fn truncated(&self, limit: u64) -> Result<Self> {
        if limit < 1 || limit > self.limit {
            return Err(Error::Range { n: limit, limit: self.limit });
        }
        let end = limit as usize + 1;
        Ok(ComplexityTable {
            limit,
            complexity: self.complexity[..end].to_vec(),
            rank: self.rank.as_ref().map(|r| r[..end].to_vec()),
            algorithm: self.algorithm,
        })
    }

    /// Drop the rank column.
    pub fn without_ranks(mut self) -> Self {
        self.rank = None;
        self
    }

    /// Iterate `(n, ‖n‖)` for `n = 1..=limit`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.complexity[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1, c as u32))
    }

    /// Check the structural invariants every complete table must satisfy:
    /// the analytic bounds, the `+1` step, and sub-multiplicativity for all
    /// in-range products with factors up to `product_span`. Returns the first
    /// violation found.
    pub fn validate(&self, product_span: u64) -> std::result::Result<(), String> {
        let f = &self.complexity;
        if f[1] != 1 {
            return Err(format!("complexity[1] = {}", f[1]));
        }
        for n in 2..=self.limit {
            let c = f[n as usize] as u32;
            let lo = bounds::lower_bound(n).expect("n >= 2");
            let hi = bounds::upper_bound(n).expect("n >= 2");
            if c < lo || c > hi {
                return Err(format!("complexity[{n}] = {c} outside [{lo}, {hi}]"));
            }
            if c > f[n as usize - 1] as u32 + 1 {
                return Err(format!("complexity[{n}] = {c} exceeds complexity[{}] + 1", n - 1));
            }
        }
        let span = product_span.min(self.limit);
        for a in 2..=span {
            let mut b = a;
            while a * b <= self.limit {
                let ab = f[(a * b) as usize] as u32;
                if ab > f[a as usize] as u32 + f[b as usize] as u32 {
                    return Err(format!("complexity[{a}*{b}] = {ab} is not sub-multiplicative"));
                }
                b += 1;
            }
        }
        if let Some(r) = &self.rank {
            if r[1] != 0 {
                return Err(format!("rank[1] = {}", r[1]));
            }
            for n in 2..=self.limit {
                let rk = r[n as usize];
                let small = (2..=5).contains(&n);
                if rk == 0 || (rk == 1) != small {
                    return Err(format!("rank[{n}] = {rk}"));
                }
            }
        }
        Ok(())
    }
}
