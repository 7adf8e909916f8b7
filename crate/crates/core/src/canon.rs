//! Isomorphism keys for tuples of families.
//!
//! A tuple `(F_1, .., F_r)` over `[n]` is serialized as
//! `[n, r, k_1, |F_1|, masks of F_1 ascending, k_2, |F_2|, ...]` and the key
//! is the lexicographically smallest serialization over all `n!` relabelings
//! of the ground set. One permutation acts on every family at once and family
//! order is preserved, so two tuples share a key iff some single permutation
//! maps one onto the other.

use serde::Serialize;

use crate::combinat::Family;
use crate::error::{Error, Result};

/// Largest ground set accepted by [`canonical_form`] (the loop is `n!`).
pub const CANON_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalKey(Vec<u32>);

impl CanonicalKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

#[inline]
fn apply(perm: &[u8], mut mask: u32) -> u32 {
    let mut out = 0u32;
    while mask != 0 {
        let b = mask.trailing_zeros() as usize;
        out |= 1 << perm[b];
        mask &= mask - 1;
    }
    out
}

fn serialize_under(perm: &[u8], n: usize, fams: &[Family], out: &mut Vec<u32>, scratch: &mut Vec<u32>) {
    out.clear();
    out.push(n as u32);
    out.push(fams.len() as u32);
    for f in fams {
        out.push(f.k() as u32);
        out.push(f.len() as u32);
        scratch.clear();
        scratch.extend(f.masks().iter().map(|&m| apply(perm, m)));
        scratch.sort_unstable();
        out.extend_from_slice(scratch);
    }
}

/// Minimum serialization of `fams` over all permutations of `[n]`.
pub fn canonical_form(fams: &[Family]) -> Result<CanonicalKey> {
    let n = match fams.first() {
        Some(f) => f.n(),
        None => return Ok(CanonicalKey(vec![0, 0])),
    };
    if let Some(f) = fams.iter().find(|f| f.n() != n) {
        return Err(Error::GroundSetMismatch {
            left: n,
            right: f.n(),
        });
    }
    if n > CANON_MAX_N {
        return Err(Error::CapExceeded {
            what: "canonicalization ground-set size",
            value: n as u64,
            cap: CANON_MAX_N as u64,
        });
    }

    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut best = Vec::new();
    let mut cur = Vec::new();
    let mut scratch = Vec::new();
    serialize_under(&perm, n, fams, &mut best, &mut scratch);

    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            serialize_under(&perm, n, fams, &mut cur, &mut scratch);
            if cur < best {
                std::mem::swap(&mut best, &mut cur);
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalKey(best))
}
