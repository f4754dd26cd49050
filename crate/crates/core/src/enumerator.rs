//! Exhaustive oracle over canonical expression trees.
//!
//! Every subtree of a shortest expression is itself shortest for its value,
//! so the search only ever composes values whose complexity is already
//! known. For each ones-count `k` and height bound `h` the oracle keeps the
//! set of values `v ≤ L` with `‖v‖ = k` that have a shortest expression of
//! height at most `h`, split by root kind. The first `k` at which a value
//! appears is its complexity and the first `h` is its rank. Trees are then
//! materialized top-down, guided by those sets.

use std::collections::HashMap;

use crate::bounds;
use crate::error::{Error, Result};
use crate::expr::ExprTree;

/// Fixed-width bit set over `[0, len)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    fn new(len: usize) -> Self {
        Bits { words: vec![0; len.div_ceil(64)], len }
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn union_with(&mut self, other: &Bits) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn and_not(&mut self, other: &Bits) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// `self |= other << shift`, dropping bits at or beyond `len`.
    fn or_shifted(&mut self, other: &Bits, shift: usize) {
        let ws = shift / 64;
        let bs = shift % 64;
        let n = self.words.len();
        if ws >= n {
            return;
        }
        for i in (ws..n).rev() {
            let src = i - ws;
            let mut v = other.words[src] << bs;
            if bs > 0 && src > 0 {
                v |= other.words[src - 1] >> (64 - bs);
            }
            self.words[i] |= v;
        }
        let tail = self.len % 64;
        if tail != 0 {
            self.words[n - 1] &= (1u64 << tail) - 1;
        }
    }
}

/// Value sets of one ones-count, indexed by height bound.
struct Level {
    sum: Vec<Bits>,
    prod: Vec<Bits>,
}

/// ‖n‖, the shortest canonical trees for `n`, and their minimum height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub n: u64,
    pub complexity: u32,
    pub shortest: Vec<ExprTree>,
    pub min_height: u32,
}

/// Layered enumeration of all values in `[1, limit]`.
pub struct Oracle {
    limit: usize,
    levels: Vec<Level>,
    complexity: Vec<u8>,
    height: Vec<u8>,
}

impl Oracle {
    /// Enumerate until every value up to `limit` has been produced.
    pub fn new(limit: u64) -> Result<Self> {
        let cap = if limit >= 2 { bounds::upper_bound(limit)? } else { 1 };
        let mut o = Oracle::start(limit)?;
        while o.complexity[1..].contains(&0) {
            if o.levels.len() as u32 >= cap {
                return Err(Error::Contract(format!("enumeration did not cover {limit}")));
            }
            o.grow();
        }
        Ok(o)
    }

    fn start(limit: u64) -> Result<Self> {
        if limit < 1 {
            return Err(Error::Domain("oracle needs n >= 1".into()));
        }
        if limit > 1 << 24 {
            return Err(Error::Config(format!("oracle limit {limit} is too large")));
        }
        let len = limit as usize + 1;
        let mut one = Bits::new(len);
        one.set(1);
        let mut complexity = vec![0u8; len];
        let mut height = vec![0u8; len];
        complexity[1] = 1;
        height[1] = 0;
        let levels = vec![Level { sum: vec![Bits::new(len)], prod: vec![one] }];
        Ok(Oracle { limit: limit as usize, levels, complexity, height })
    }

    pub fn limit(&self) -> u64 {
        self.limit as u64
    }

    /// Largest ones-count enumerated so far.
    pub fn depth(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Root-kind sets at ones-count `k` (1-based) and height bound `h`. The
    /// literal one is stored with the products as the only non-sum leaf.
    fn sum_at(&self, k: usize, h: usize) -> &Bits {
        let l = &self.levels[k - 1];
        &l.sum[h.min(l.sum.len() - 1)]
    }

    fn nonsum_at(&self, k: usize, h: usize) -> &Bits {
        let l = &self.levels[k - 1];
        &l.prod[h.min(l.prod.len() - 1)]
    }

    /// Enumerate ones-count `depth() + 1`.
    fn grow(&mut self) {
        let k = self.levels.len() + 1;
        let len = self.limit + 1;
        let mut found = Bits::new(len);
        for (v, &c) in self.complexity.iter().enumerate() {
            if c != 0 {
                found.set(v);
            }
        }
        // sets at ones-count k stop changing beyond height k - 1
        let top = k - 1;
        let mut sums = vec![Bits::new(len)];
        let mut prods = vec![Bits::new(len)];
        for h in 1..=top {
            let mut s = Bits::new(len);
            for i in 1..k {
                let mut rest = self.nonsum_at(k - i, h - 1).clone();
                rest.union_with(self.sum_at(k - i, h));
                for a in self.nonsum_at(i, h - 1).ones() {
                    s.or_shifted(&rest, a);
                }
            }
            s.and_not(&found);

            let mut p = Bits::new(len);
            for i in 2..k.saturating_sub(1) {
                let firsts = self.sum_at(i, h - 1);
                if firsts.is_empty() {
                    continue;
                }
                let mut rest = self.sum_at(k - i, h - 1).clone();
                // a product of products is merged, so a product rest sits at the same height
                if k - i >= 2 {
                    let l = &self.levels[k - i - 1];
                    rest.union_with(&l.prod[h.min(l.prod.len() - 1)]);
                }
                let rest: Vec<usize> = rest.ones().collect();
                for a in firsts.ones() {
                    for &b in &rest {
                        let v = a * b;
                        if v > self.limit {
                            break;
                        }
                        p.set(v);
                    }
                }
            }
            p.and_not(&found);
            sums.push(s);
            prods.push(p);
        }
        for h in 1..=top {
            for v in sums[h].ones().chain(prods[h].ones()) {
                if self.complexity[v] == 0 {
                    self.complexity[v] = k as u8;
                    self.height[v] = h as u8;
                }
            }
        }
        self.levels.push(Level { sum: sums, prod: prods });
    }

    /// ‖n‖, or `None` if `n` is out of range or not yet reached.
    pub fn complexity(&self, n: u64) -> Option<u32> {
        let c = *self.complexity.get(n as usize)?;
        (n >= 1 && c != 0).then_some(c as u32)
    }

    /// Minimum height over shortest expressions of `n`.
    pub fn min_height(&self, n: u64) -> Option<u32> {
        self.complexity(n)?;
        Some(self.height[n as usize] as u32)
    }

    /// Full oracle result for `n`, materializing every shortest tree.
    pub fn result(&self, n: u64) -> Result<OracleResult> {
        let complexity = self
            .complexity(n)
            .ok_or(Error::Range { n, limit: self.limit as u64 })?;
        let mut gen = Generator { comp: &self.complexity, memo: HashMap::new() };
        let mut shortest = gen.nonsum(n as usize);
        if n > 1 {
            shortest.extend(gen.sum(n as usize));
        }
        shortest.sort();
        let min_height = shortest.iter().map(|t| t.height()).min().expect("nonempty");
        debug_assert_eq!(min_height, self.height[n as usize] as u32);
        Ok(OracleResult { n, complexity, shortest, min_height })
    }
}

/// ‖n‖, all shortest canonical trees and rank, enumerating ones-counts
/// `1..=ones_cap`.
pub fn oracle_complexity(n: u64, ones_cap: u32) -> Result<OracleResult> {
    let mut o = Oracle::start(n)?;
    while o.complexity(n).is_none() {
        if o.depth() >= ones_cap {
            return Err(Error::CapExceeded { n, cap: ones_cap });
        }
        o.grow();
    }
    o.result(n)
}

/// `oracle_complexity` with the guaranteed cap `⌊3·log₂ n⌋`.
pub fn oracle_default(n: u64) -> Result<OracleResult> {
    let cap = if n >= 2 { bounds::upper_bound(n)? } else { 1 };
    oracle_complexity(n, cap)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Root {
    Sum,
    NonSum,
}

/// Top-down generation of canonical shortest trees. Children of a sum are
/// emitted in non-decreasing order, so each tree appears exactly once.
struct Generator<'a> {
    comp: &'a [u8],
    memo: HashMap<(usize, Root), Vec<ExprTree>>,
}

impl Generator<'_> {
    fn c(&self, v: usize) -> u32 {
        self.comp[v] as u32
    }

    /// Shortest trees of `v` whose root is not a sum.
    fn nonsum(&mut self, v: usize) -> Vec<ExprTree> {
        if v == 1 {
            return vec![ExprTree::one()];
        }
        if let Some(t) = self.memo.get(&(v, Root::NonSum)) {
            return t.clone();
        }
        let k = self.c(v);
        let mut out = Vec::new();
        let mut a = 2;
        while a * a <= v {
            if v % a == 0 && self.c(a) + self.c(v / a) == k {
                for first in self.sum(a) {
                    out.extend(self.prod_rest(v / a, &first).into_iter().map(|mut cs| {
                        cs.insert(0, first.clone());
                        ExprTree::product(cs).expect("canonical product")
                    }));
                }
            }
            a += 1;
        }
        self.memo.insert((v, Root::NonSum), out.clone());
        out
    }

    /// Non-decreasing lists of sum-rooted shortest trees, each at least
    /// `min`, whose product is `v`.
    fn prod_rest(&mut self, v: usize, min: &ExprTree) -> Vec<Vec<ExprTree>> {
        let k = self.c(v);
        let mut out: Vec<Vec<ExprTree>> = self
            .sum(v)
            .into_iter()
            .filter(|t| t >= min)
            .map(|t| vec![t])
            .collect();
        let mut a = min.value() as usize;
        while a * a <= v {
            if v % a == 0 && self.c(a) + self.c(v / a) == k {
                for first in self.sum(a) {
                    if &first < min {
                        continue;
                    }
                    for mut cs in self.prod_rest(v / a, &first) {
                        cs.insert(0, first.clone());
                        out.push(cs);
                    }
                }
            }
            a += 1;
        }
        out
    }

    /// Shortest trees of `v` whose root is a sum.
    fn sum(&mut self, v: usize) -> Vec<ExprTree> {
        if v < 2 {
            return Vec::new();
        }
        if let Some(t) = self.memo.get(&(v, Root::Sum)) {
            return t.clone();
        }
        let k = self.c(v);
        let mut out = Vec::new();
        for a in 1..=v / 2 {
            if self.c(a) + self.c(v - a) != k {
                continue;
            }
            for first in self.nonsum(a) {
                for mut cs in self.sum_rest(v - a, &first) {
                    cs.insert(0, first.clone());
                    out.push(ExprTree::sum(cs).expect("canonical sum"));
                }
            }
        }
        self.memo.insert((v, Root::Sum), out.clone());
        out
    }

    /// Non-decreasing lists of non-sum shortest trees, each at least `min`,
    /// summing to `v`.
    fn sum_rest(&mut self, v: usize, min: &ExprTree) -> Vec<Vec<ExprTree>> {
        let k = self.c(v);
        let mut out: Vec<Vec<ExprTree>> = self
            .nonsum(v)
            .into_iter()
            .filter(|t| t >= min)
            .map(|t| vec![t])
            .collect();
        let lo = min.value() as usize;
        for a in lo..=v / 2 {
            if self.c(a) + self.c(v - a) != k {
                continue;
            }
            for first in self.nonsum(a) {
                if &first < min {
                    continue;
                }
                for mut cs in self.sum_rest(v - a, &first) {
                    cs.insert(0, first.clone());
                    out.push(cs);
                }
            }
        }
        out
    }
}
