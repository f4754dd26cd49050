use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::table::ComplexityTable;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopLogRow {
    pub n: u64,
    pub complexity: u32,
    pub logc: f64,
    pub rank: Option<u32>,
}

const REL_TOL: f64 = 1e-12;

fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs())
}

/// Descending `logc`, values within the relative tolerance tied and
/// ordered by `n`.
fn order(a: &(f64, u64), b: &(f64, u64)) -> Ordering {
    if tied(a.0, b.0) {
        a.1.cmp(&b.1)
    } else {
        b.0.total_cmp(&a.0)
    }
}

/// The `count` largest values of `‖n‖ / log₃ n` over `[2, limit]`.
pub fn top_log_complexity(t: &ComplexityTable, count: usize) -> Vec<TopLogRow> {
    if count == 0 {
        return Vec::new();
    }
    let mut best: Vec<(f64, u64)> = Vec::with_capacity(count + 1);
    let mut floor = f64::NEG_INFINITY;
    for (n, c) in t.iter().skip(1) {
        let l = c as f64 / bounds::log3(n);
        if best.len() == count && l < floor && !tied(l, floor) {
            continue;
        }
        best.push((l, n));
        best.sort_by(order);
        best.truncate(count);
        if best.len() == count {
            floor = best[count - 1].0;
        }
    }
    best.into_iter()
        .map(|(logc, n)| TopLogRow { n, complexity: t.get(n).unwrap(), logc, rank: t.rank(n) })
        .collect()
}

/// Whether any two rows share a value within the comparison tolerance.
pub fn has_ties(rows: &[TopLogRow]) -> bool {
    rows.windows(2).any(|w| tied(w[0].logc, w[1].logc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::build_sieve;

    #[test]
    fn leaders() {
        let t = build_sieve(30_000, true).unwrap();
        let top = top_log_complexity(&t, 5);
        assert_eq!(top[0].n, 1439);
        assert_eq!((top[0].complexity, top[0].rank), (26, Some(9)));
        assert!((top[0].logc - 3.928).abs() < 5e-4);
        assert_eq!(top[1].n, 23);
        assert!(top.iter().any(|r| r.n == 4283 && r.complexity == 29));
        assert!(!has_ties(&top));
    }
}
