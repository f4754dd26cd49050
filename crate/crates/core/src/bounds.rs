//! Analytic bounds and closed forms for integer complexity.
//!
//! Everything here is a pure function of its arguments. Comparisons at
//! integer boundaries (powers of three, powers of two) are done in exact
//! integer arithmetic; floating point is only used for the real-valued
//! quantities (logarithmic complexity, defect).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real-valued interval `[lower, upper]` containing ‖n‖.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
}

impl BoundPair {
    /// `3·log₃ n ≤ ‖n‖ ≤ 3·log₂ n`, valid for every `n > 1`.
    pub fn for_n(n: u64) -> Result<Self> {
        require_at_least(n, 2, "bounds")?;
        let nf = n as f64;
        Ok(BoundPair {
            lower: 3.0 * log3(n),
            upper: 3.0 * nf.log2(),
        })
    }

    pub fn contains(&self, c: f64) -> bool {
        self.lower <= c && c <= self.upper
    }
}

fn require_at_least(n: u64, min: u64, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Domain(format!("{what} requires n >= {min}, got {n}")));
    }
    Ok(())
}

/// Little-endian 256-bit unsigned, just enough to hold `n³` for any `u64`
/// and `3^c` / `2^c` for the exponents we compare against.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Wide([u64; 4]);

impl Wide {
    fn from_u64(v: u64) -> Self {
        Wide([v, 0, 0, 0])
    }

    /// Multiply in place by a `u64`; returns false on overflow.
    fn mul_small(&mut self, m: u64) -> bool {
        let mut carry = 0u128;
        for limb in self.0.iter_mut() {
            let t = (*limb as u128) * (m as u128) + carry;
            *limb = t as u64;
            carry = t >> 64;
        }
        carry == 0
    }

    fn bits(&self) -> u32 {
        for i in (0..4).rev() {
            if self.0[i] != 0 {
                return 64 * i as u32 + (64 - self.0[i].leading_zeros());
            }
        }
        0
    }
}

impl PartialOrd for Wide {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Wide {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

fn cube(n: u64) -> Wide {
    let mut w = Wide::from_u64(n);
    w.mul_small(n);
    w.mul_small(n);
    w
}

/// `⌈3·log₃ n⌉`: the smallest `c` with `3^c ≥ n³`. Exact at powers of three.
pub fn lower_bound(n: u64) -> Result<u32> {
    require_at_least(n, 2, "lower_bound")?;
    let target = cube(n);
    let mut pow = Wide::from_u64(1);
    let mut c = 0;
    // 3^122 > (2^64)^3, so this always terminates without overflow.
    while pow < target {
        pow.mul_small(3);
        c += 1;
    }
    Ok(c)
}

/// `⌊3·log₂ n⌋`, the largest value ‖n‖ can take.
pub fn upper_bound(n: u64) -> Result<u32> {
    require_at_least(n, 2, "upper_bound")?;
    Ok(cube(n).bits() - 1)
}

/// Largest number of complexity `n`: `2·3^k`, `3·3^k`, `4·3^k` for
/// `n = 3k+2, 3k+3, 3k+4`, and 1 for `n = 1`.
pub fn e_closed(n: u32) -> Result<u128> {
    if n < 1 {
        return Err(Error::Domain("E(n) requires n >= 1".into()));
    }
    checked_e(n).ok_or_else(|| Error::Domain(format!("E({n}) overflows 128 bits")))
}

fn checked_e(n: u32) -> Option<u128> {
    if n == 1 {
        return Some(1);
    }
    let k = (n - 2) / 3;
    let head = match (n - 2) % 3 {
        0 => 2u128,
        1 => 3,
        _ => 4,
    };
    3u128.checked_pow(k)?.checked_mul(head)
}

/// `E(n)`, saturating at `u128::MAX` for complexities whose maximum does
/// not fit. Used where only comparisons against realistic `n` matter.
pub(crate) fn e_saturating(n: u32) -> u128 {
    checked_e(n.max(1)).unwrap_or(u128::MAX)
}

/// Second largest number of complexity at most `n`, `8·E(n)/9`.
pub fn e2_closed(n: u32) -> Result<u128> {
    if n < 8 {
        return Err(Error::Domain(format!("E2(n) requires n >= 8, got {n}")));
    }
    Ok(e_closed(n)? / 9 * 8)
}

/// Sum of prime factors with multiplicity: the ones in the product of
/// `(1+…+1)` factors built from the prime decomposition.
pub fn integer_logarithm(n: u64) -> Result<u64> {
    require_at_least(n, 2, "integer_logarithm")?;
    let mut m = n;
    let mut sum = 0;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        while m % p == 0 {
            sum += p;
            m /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        sum += m;
    }
    Ok(sum)
}

/// `log₃ n`, returning the exact exponent when `n` is a power of three.
pub fn log3(n: u64) -> f64 {
    let mut m = n;
    let mut b = 0u32;
    while m > 1 && m % 3 == 0 {
        m /= 3;
        b += 1;
    }
    if m == 1 {
        return b as f64;
    }
    (n as f64).ln() / 3f64.ln()
}

/// `‖n‖ / log₃ n` given `c = ‖n‖`.
pub fn log_complexity(n: u64, c: u32) -> Result<f64> {
    require_at_least(n, 2, "log_complexity")?;
    Ok(c as f64 / log3(n))
}

/// `‖n‖ − 3·log₃ n` given `c = ‖n‖`.
pub fn defect(n: u64, c: u32) -> Result<f64> {
    require_at_least(n, 1, "defect")?;
    Ok(c as f64 - 3.0 * log3(n))
}

/// Upper limit on the smaller-complexity addend of an optimal sum
/// decomposition of `n`, given any `c_upper ≥ ‖n‖`.
///
/// Evaluates `⌊(n − √(n² − 4·E(c_upper)))/2⌋` with an integer square root
/// (rounding the root down only loosens the bound), and returns `⌊n/2⌋`
/// when the discriminant is negative.
pub fn addend_bound(n: u64, c_upper: u32) -> Result<u64> {
    require_at_least(n, 2, "addend_bound")?;
    Ok(addend_bound_unchecked(n, e_saturating(c_upper)))
}

#[inline]
pub(crate) fn addend_bound_unchecked(n: u64, e_of_upper: u128) -> u64 {
    let half = n / 2;
    let sq = (n as u128) * (n as u128);
    let four_e = e_of_upper.saturating_mul(4);
    if four_e > sq {
        return half;
    }
    let disc = sq - four_e;
    let root = if disc <= u64::MAX as u128 {
        (disc as u64).isqrt() as u128
    } else {
        disc.isqrt()
    };
    let a = ((n as u128 - root) / 2) as u64;
    a.min(half)
}

/// `2n + ⌊log₂ n⌋ + H(n) − 3`, an upper bound on ‖2ⁿ − 1‖ where `H` is the
/// binary Hamming weight.
pub fn mersenne_upper_bound(n: u64) -> Result<u64> {
    require_at_least(n, 2, "mersenne_upper_bound")?;
    Ok(2 * n + n.ilog2() as u64 + n.count_ones() as u64 - 3)
}
