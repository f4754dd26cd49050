//! Shortest expressions rebuilt from a complexity table.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::expr::ExprTree;
use crate::table::ComplexityTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    AnyShortest,
    /// Among shortest expressions, one of minimum height (the rank).
    MinHeight,
}

/// A canonical shortest expression for `n`. Ties prefer a product split
/// with the smallest factor, then a sum with the smallest addend.
pub fn reconstruct(t: &ComplexityTable, n: u64, policy: Policy) -> Result<ExprTree> {
    t.complexity(n)?;
    let r = Rebuild { t, memo: HashMap::new() };
    match policy {
        Policy::AnyShortest => r.any(n),
        Policy::MinHeight => {
            let mut r = r;
            let (hs, hp) = r.heights(n);
            if n == 1 {
                Ok(ExprTree::one())
            } else if hp <= hs {
                r.build_prod(n)
            } else {
                r.build_sum(n)
            }
        }
    }
}

const INF: u32 = u32::MAX / 2;

struct Rebuild<'a> {
    t: &'a ComplexityTable,
    /// Minimum heights of shortest sum-rooted and product-rooted trees.
    memo: HashMap<u64, (u32, u32)>,
}

impl Rebuild<'_> {
    fn c(&self, n: u64) -> u32 {
        self.t.get(n).expect("in range")
    }

    fn factor_splits(&self, n: u64) -> Vec<u64> {
        let c = self.c(n);
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 && self.c(d) + self.c(n / d) == c {
                out.push(d);
            }
            d += 1;
        }
        out
    }

    fn sum_splits(&self, n: u64) -> Vec<u64> {
        let c = self.c(n);
        let bound = bounds::addend_bound(n, c).unwrap_or(0);
        (1..=bound).filter(|&a| self.c(a) + self.c(n - a) == c).collect()
    }

    fn any(&self, n: u64) -> Result<ExprTree> {
        if n == 1 {
            return Ok(ExprTree::one());
        }
        if let Some(&d) = self.factor_splits(n).first() {
            return ExprTree::product(vec![self.any(d)?, self.any(n / d)?]);
        }
        let a = *self
            .sum_splits(n)
            .first()
            .ok_or_else(|| Error::Contract(format!("table entry for {n} is not attained")))?;
        ExprTree::sum(vec![self.any(a)?, self.any(n - a)?])
    }

    fn heights(&mut self, n: u64) -> (u32, u32) {
        if n == 1 {
            return (INF, 0);
        }
        if let Some(&h) = self.memo.get(&n) {
            return h;
        }
        let mut hs = INF;
        for a in self.sum_splits(n) {
            let h = self.sum_part(a).max(self.sum_part(n - a));
            hs = hs.min(h);
        }
        let mut hp = INF;
        for d in self.factor_splits(n) {
            let h = self.prod_part(d).max(self.prod_part(n / d));
            hp = hp.min(h);
        }
        self.memo.insert(n, (hs, hp));
        (hs, hp)
    }

    /// Height a sum reaches from one addend: sums merge into it, anything
    /// else sits one level below.
    fn sum_part(&mut self, a: u64) -> u32 {
        let (hs, hp) = self.heights(a);
        hs.min(hp + 1)
    }

    fn prod_part(&mut self, a: u64) -> u32 {
        let (hs, hp) = self.heights(a);
        hp.min(hs + 1)
    }

    fn build_sum(&mut self, n: u64) -> Result<ExprTree> {
        let (hs, _) = self.heights(n);
        for a in self.sum_splits(n) {
            if self.sum_part(a).max(self.sum_part(n - a)) == hs {
                let x = self.sum_child(a)?;
                let y = self.sum_child(n - a)?;
                return ExprTree::sum(vec![x, y]);
            }
        }
        Err(Error::Contract(format!("no sum of minimum height for {n}")))
    }

    fn build_prod(&mut self, n: u64) -> Result<ExprTree> {
        let (_, hp) = self.heights(n);
        for d in self.factor_splits(n) {
            if self.prod_part(d).max(self.prod_part(n / d)) == hp {
                let x = self.prod_child(d)?;
                let y = self.prod_child(n / d)?;
                return ExprTree::product(vec![x, y]);
            }
        }
        Err(Error::Contract(format!("no product of minimum height for {n}")))
    }

    fn sum_child(&mut self, a: u64) -> Result<ExprTree> {
        if a == 1 {
            return Ok(ExprTree::one());
        }
        let (hs, hp) = self.heights(a);
        if hp + 1 <= hs {
            self.build_prod(a)
        } else {
            self.build_sum(a)
        }
    }

    fn prod_child(&mut self, a: u64) -> Result<ExprTree> {
        let (hs, hp) = self.heights(a);
        if hp <= hs + 1 {
            self.build_prod(a)
        } else {
            self.build_sum(a)
        }
    }
}
