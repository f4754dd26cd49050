//! Relaxation sieve: alternating multiplication and addition passes over
//! `f[1..=limit]` until nothing changes.
//!
//! Passes are numbered from 2, multiplication on even indices and addition
//! on odd ones. A value improved last in pass `p` gets rank `p`.

use crate::bounds;
use crate::error::{Error, Result};
use crate::table::{check_limit, Algorithm, ComplexityTable};

/// Starting values for the workspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveInit {
    /// `f[i] = i`, the all-ones sum. Required for ranks.
    Identity,
    /// `f[i] = ⌊3·log₂ i⌋`, the analytic upper bound.
    UpperBound,
}

#[derive(Debug, Clone, Copy)]
pub struct SieveOptions {
    pub with_ranks: bool,
    pub init: SieveInit,
    /// Restrict addition-pass addends to [`bootstrap_addends`].
    pub bootstrap: bool,
    /// Double passes to run after the fixpoint is reached.
    pub extra_passes: u32,
}

impl Default for SieveOptions {
    fn default() -> Self {
        SieveOptions { with_ranks: false, init: SieveInit::Identity, bootstrap: false, extra_passes: 0 }
    }
}

/// Build ‖n‖ (and optionally ranks) for `n = 1..=limit`.
pub fn build_sieve(limit: u64, with_ranks: bool) -> Result<ComplexityTable> {
    build_sieve_with(limit, SieveOptions { with_ranks, ..Default::default() })
}

/// Candidate smallest addends of an optimal sum: 1 and the composites up to
/// `limit`.
///
/// The smallest child of a canonical shortest sum is the literal one or a
/// product, and the sum of the remaining children is itself shortest, so
/// every value whose best decomposition is a sum splits optimally with its
/// smaller part in this set.
pub fn bootstrap_addends(limit: u64) -> Vec<u64> {
    let sieve = primal::Sieve::new(limit as usize);
    std::iter::once(1)
        .chain((4..=limit).filter(|&j| !sieve.is_prime(j as usize)))
        .collect()
}

fn alloc(len: usize, fill: u8) -> Result<Vec<u8>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| {
        Error::Config(format!(
            "cannot allocate {len} bytes for the sieve workspace; use the dp builder for this limit"
        ))
    })?;
    v.resize(len, fill);
    Ok(v)
}

pub fn build_sieve_with(limit: u64, opts: SieveOptions) -> Result<ComplexityTable> {
    check_limit(limit)?;
    if opts.with_ranks && opts.init != SieveInit::Identity {
        return Err(Error::Config("ranks require the identity initialization".into()));
    }
    let n = limit as usize;
    let cap = if limit >= 2 { bounds::upper_bound(limit)? + 1 } else { 2 };
    let cap = cap.min(255) as u8;
    let mut f = alloc(n + 1, 0)?;
    for (i, x) in f.iter_mut().enumerate().skip(1) {
        *x = match opts.init {
            SieveInit::Identity => i.min(cap as usize) as u8,
            SieveInit::UpperBound if i < 2 => 1,
            SieveInit::UpperBound => bounds::upper_bound(i as u64)? as u8,
        };
    }
    let mut rank = if opts.with_ranks {
        let mut r = alloc(n + 1, 1)?;
        r[0] = 0;
        if n >= 1 {
            r[1] = 0;
        }
        Some(r)
    } else {
        None
    };
    let e: Vec<u128> = (0..=255u32).map(bounds::e_saturating).collect();
    let addends = opts.bootstrap.then(|| bootstrap_addends(limit));

    let mut pass = 2u32;
    let mut extra = opts.extra_passes;
    loop {
        let mut changed = mult_pass(&mut f, rank.as_deref_mut(), pass);
        changed |= add_pass(&mut f, rank.as_deref_mut(), pass + 1, &e, addends.as_deref());
        pass += 2;
        if !changed {
            if extra == 0 {
                break;
            }
            extra -= 1;
        } else if pass > 255 {
            return Err(Error::Contract("sieve did not converge".into()));
        }
    }
    ComplexityTable::from_parts(f, rank, Algorithm::Sieve)
}

#[inline]
fn stamp(rank: &mut Option<&mut [u8]>, j: usize, pass: u32) {
    if let Some(r) = rank {
        r[j] = pass as u8;
    }
}

fn mult_pass(f: &mut [u8], mut rank: Option<&mut [u8]>, pass: u32) -> bool {
    let n = f.len() - 1;
    let mut changed = false;
    let mut i = 2;
    while i * i <= n {
        let fi = f[i] as u32;
        let mut k = i;
        while i * k <= n {
            let j = i * k;
            let c = fi + f[k] as u32;
            if c < f[j] as u32 {
                f[j] = c as u8;
                stamp(&mut rank, j, pass);
                changed = true;
            }
            k += 1;
        }
        i += 1;
    }
    changed
}

fn add_pass(
    f: &mut [u8],
    mut rank: Option<&mut [u8]>,
    pass: u32,
    e: &[u128],
    addends: Option<&[u64]>,
) -> bool {
    let n = f.len() - 1;
    let mut changed = false;
    for i in 2..=n {
        let mut c = f[i] as u32;
        let mut a = bounds::addend_bound_unchecked(i as u64, e[c as usize]) as usize;
        let relax = |j: usize, c: &mut u32, a: &mut usize| {
            let s = f[j] as u32 + f[i - j] as u32;
            if s < *c {
                *c = s;
                *a = bounds::addend_bound_unchecked(i as u64, e[s as usize]) as usize;
            }
        };
        match addends {
            Some(list) => {
                for &j in list {
                    let j = j as usize;
                    if j > a {
                        break;
                    }
                    relax(j, &mut c, &mut a);
                }
            }
            None => {
                let mut j = 1;
                while j <= a {
                    relax(j, &mut c, &mut a);
                    j += 1;
                }
            }
        }
        if c < f[i] as u32 {
            f[i] = c as u8;
            stamp(&mut rank, i, pass);
            changed = true;
        }
    }
    changed
}
