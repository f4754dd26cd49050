//! Sequential builder: `‖n‖ = min(1 + ‖n−1‖, min ‖d‖+‖n/d‖, min ‖a‖+‖n−a‖)`
//! with factorizations supplied incrementally by a priority queue of
//! eliminators.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::path::{Path, PathBuf};

use crate::bounds;
use crate::error::{Error, Result};
use crate::format;
use crate::table::{check_limit, Algorithm, ComplexityTable};

/// Min-heap of `(next multiple, prime)` pairs. Factorizes consecutive (or
/// increasing) integers without trial division.
#[derive(Debug, Clone)]
pub struct EliminatorQueue {
    heap: BinaryHeap<Reverse<(u64, u64)>>,
    primes: Vec<u64>,
    cursor: usize,
    last: u64,
    limit: u64,
}

impl EliminatorQueue {
    /// Queue able to factor every `n ≤ limit`, starting at 2.
    pub fn new(limit: u64) -> Self {
        Self::starting_at(2, limit)
    }

    /// Queue whose first accepted position is `start`.
    pub fn starting_at(start: u64, limit: u64) -> Self {
        let root = limit.isqrt() as usize;
        let primes = primal::Sieve::new(root.max(2))
            .primes_from(0)
            .take_while(|&p| p <= root)
            .map(|p| p as u64)
            .collect();
        EliminatorQueue {
            heap: BinaryHeap::new(),
            primes,
            cursor: 0,
            last: start.max(2) - 1,
            limit,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Prime factors of `n` with multiplicity, ascending. Calls must use
    /// strictly increasing `n`; gaps are allowed.
    pub fn factorize(&mut self, n: u64) -> Result<Vec<u64>> {
        if n <= self.last {
            return Err(Error::Contract(format!(
                "factorize_at({n}) after position {}",
                self.last
            )));
        }
        if n > self.limit {
            return Err(Error::Contract(format!("{n} exceeds the queue limit {}", self.limit)));
        }
        self.last = n;
        while let Some(&p) = self.primes.get(self.cursor) {
            if p * p > n {
                break;
            }
            self.heap.push(Reverse((n.div_ceil(p) * p, p)));
            self.cursor += 1;
        }
        let mut m = n;
        let mut out = Vec::new();
        while let Some(&Reverse((q, p))) = self.heap.peek() {
            if q > n {
                break;
            }
            self.heap.pop();
            if q == n {
                while m % p == 0 {
                    out.push(p);
                    m /= p;
                }
                self.heap.push(Reverse((n + p, p)));
            } else {
                self.heap.push(Reverse((n.div_ceil(p) * p, p)));
            }
        }
        if m > 1 {
            out.push(m);
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Factor `n` with the queue's state.
pub fn factorize_at(q: &mut EliminatorQueue, n: u64) -> Result<Vec<u64>> {
    q.factorize(n)
}

/// All divisors `2 ≤ d ≤ √n` of `n` from its sorted prime factors.
fn small_divisors(n: u64, factors: &[u64], out: &mut Vec<u64>) {
    out.clear();
    out.push(1);
    let mut i = 0;
    while i < factors.len() {
        let p = factors[i];
        let mut e = 0;
        while i < factors.len() && factors[i] == p {
            e += 1;
            i += 1;
        }
        let base = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for j in 0..base {
                let d = out[j] * pk;
                if d.saturating_mul(d) <= n {
                    out.push(d);
                }
            }
        }
    }
    out.retain(|&d| d >= 2);
}

#[derive(Debug, Clone)]
pub struct DpOptions {
    /// Write a checkpoint every this many entries.
    pub checkpoint_every: Option<u64>,
    /// Checkpoint and final output path.
    pub out: Option<PathBuf>,
    /// First addend tried in the sum scan. Values 2 to 5 are never needed.
    pub scan_from: u64,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions { checkpoint_every: None, out: None, scan_from: 6 }
    }
}

/// Build ‖n‖ for `n = 1..=limit`.
pub fn build_dp(limit: u64, opts: &DpOptions) -> Result<ComplexityTable> {
    check_limit(limit)?;
    let mut f = alloc(limit)?;
    f.push(0);
    f.push(1);
    run(&mut f, limit, opts)
}

/// Continue a build from a checkpoint written by [`build_dp`]. A checkpoint
/// already past `limit` is truncated without recomputation.
pub fn resume_dp(checkpoint: &Path, limit: u64, opts: &DpOptions) -> Result<ComplexityTable> {
    check_limit(limit)?;
    let loaded = format::load_any(checkpoint)?;
    let prefix = loaded.table;
    if prefix.limit() >= limit {
        return prefix.truncated(limit).map(|t| t.without_ranks());
    }
    let mut f = alloc(limit)?;
    f.extend_from_slice(prefix.complexity_bytes());
    run(&mut f, limit, opts)
}

fn alloc(limit: u64) -> Result<Vec<u8>> {
    let len = limit as usize + 1;
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|_| Error::Config(format!("cannot allocate {len} bytes for the table")))?;
    Ok(v)
}

fn run(f: &mut Vec<u8>, limit: u64, opts: &DpOptions) -> Result<ComplexityTable> {
    if opts.scan_from < 1 {
        return Err(Error::Config("scan_from must be at least 1".into()));
    }
    if opts.checkpoint_every == Some(0) {
        return Err(Error::Config("checkpoint interval must be positive".into()));
    }
    let start = f.len() as u64;
    let e: Vec<u128> = (0..=255u32).map(bounds::e_saturating).collect();
    let mut queue = EliminatorQueue::starting_at(start, limit);
    let mut divisors = Vec::new();
    let mut durable = None;
    for n in start..=limit {
        let mut c = 1 + f[n as usize - 1] as u32;
        let factors = queue.factorize(n)?;
        if factors.len() >= 2 {
            small_divisors(n, &factors, &mut divisors);
            for &d in &divisors {
                c = c.min(f[d as usize] as u32 + f[(n / d) as usize] as u32);
            }
        }
        let mut bound = bounds::addend_bound_unchecked(n, e[c as usize]);
        let mut a = opts.scan_from;
        while a <= bound {
            let s = f[a as usize] as u32 + f[(n - a) as usize] as u32;
            if s < c {
                c = s;
                bound = bounds::addend_bound_unchecked(n, e[c as usize]);
            }
            a += 1;
        }
        f.push(c as u8);
        if let (Some(every), Some(path)) = (opts.checkpoint_every, &opts.out) {
            if n % every == 0 && n < limit {
                format::save_partial(path, f, limit)
                    .map_err(|e| with_durable(e, durable))?;
                durable = Some(n);
            }
        }
    }
    let table = ComplexityTable::from_parts(std::mem::take(f), None, Algorithm::Dp)?;
    if let Some(path) = &opts.out {
        format::save(&table, path).map_err(|e| with_durable(e, durable))?;
    }
    Ok(table)
}

fn with_durable(e: Error, durable: Option<u64>) -> Error {
    match e {
        Error::Io { source, .. } => Error::Io { source, durable },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        let mut q = EliminatorQueue::new(1000);
        for n in 2..=11 {
            q.factorize(n).unwrap();
        }
        assert_eq!(q.factorize(12).unwrap(), vec![2, 2, 3]);
        assert_eq!(q.factorize(97).unwrap(), vec![97]);
        assert!(matches!(q.factorize(97), Err(Error::Contract(_))));
        assert!(matches!(q.factorize(50), Err(Error::Contract(_))));
        assert_eq!(q.factorize(1000).unwrap(), vec![2, 2, 2, 5, 5, 5]);
    }

    #[test]
    fn prime_with_gap() {
        let mut q = EliminatorQueue::new(1_000_000);
        assert_eq!(q.factorize(540539).unwrap(), vec![540539]);
        assert_eq!(q.factorize(540540).unwrap(), vec![2, 2, 3, 3, 3, 5, 7, 11, 13]);
    }

    #[test]
    fn divisors() {
        let mut d = Vec::new();
        small_divisors(36, &[2, 2, 3, 3], &mut d);
        d.sort();
        assert_eq!(d, vec![2, 3, 4, 6]);
    }

    #[test]
    fn first_fifteen() {
        let t = build_dp(15, &DpOptions::default()).unwrap();
        let row: Vec<u32> = (1..=15).map(|n| t.get(n).unwrap()).collect();
        assert_eq!(row, vec![1, 2, 3, 4, 5, 5, 6, 6, 6, 7, 8, 7, 8, 8, 8]);
    }

    #[test]
    fn golden_values() {
        let t = build_dp(15625, &DpOptions::default()).unwrap();
        assert_eq!(t.get(15625), Some(29));
        assert_eq!(t.get(121), Some(15));
    }
}
