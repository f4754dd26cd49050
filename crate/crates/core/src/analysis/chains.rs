use serde::{Deserialize, Serialize};

use crate::analysis::sequences::SequenceSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    /// Complexity index `k` of `e(k)`.
    pub n: u32,
    pub end: u64,
    pub end_prime: bool,
    /// Longest chain `p₁, …, p_len` with `p_{i+1} = 2p_i + 1` ending at `end`.
    pub chain: Vec<u64>,
    pub length: usize,
    /// For `k = 1, 2, 3`: whether `(end − k)/(k + 1)` is a prime, `None`
    /// when it is not an integer.
    pub quotient_prime: [Option<bool>; 3],
}

/// Backward chain `…, (p−1)/2, p` of primes ending at `end`.
pub fn backward_chain(end: u64) -> Vec<u64> {
    if !primal::is_prime(end) {
        return Vec::new();
    }
    let mut chain = vec![end];
    let mut p = end;
    while p % 2 == 1 && primal::is_prime((p - 1) / 2) {
        p = (p - 1) / 2;
        chain.push(p);
    }
    chain.reverse();
    chain
}

pub fn chain_scan(s: &SequenceSet) -> Vec<ChainRecord> {
    s.reliable_e()
        .map(|x| {
            let e = x.value;
            let chain = backward_chain(e);
            let quotient_prime = [1u64, 2, 3].map(|k| {
                (e > k && (e - k) % (k + 1) == 0).then(|| primal::is_prime((e - k) / (k + 1)))
            });
            ChainRecord {
                n: x.index,
                end: e,
                end_prime: !chain.is_empty(),
                length: chain.len(),
                chain,
                quotient_prime,
            }
        })
        .collect()
}
