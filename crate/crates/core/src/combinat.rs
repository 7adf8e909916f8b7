//! Subsets of `[n]` as bitmasks, lexicographic order, and uniform families.
//!
//! Element `i` (1-based) lives in bit `i - 1`. Lex order on k-sets is
//! `A < B` iff the smallest element of the symmetric difference lies in `A`;
//! on sorted element lists this is ordinary lexicographic comparison. The
//! order is only meaningful between sets of the same size.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::count::choose;
use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 24;

/// Lex comparison of two masks of equal popcount.
#[inline]
pub fn lex_cmp(a: u32, b: u32) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let d = a ^ b;
    let low = d & d.wrapping_neg();
    if a & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::CapExceeded {
            what: "ground-set size n",
            value: n as u64,
            cap: MAX_N as u64,
        });
    }
    Ok(())
}

/// One subset of `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    mask: u32,
    n: u8,
}

impl KSet {
    pub fn new(n: usize, mask: u32) -> Result<Self> {
        check_n(n)?;
        if mask & !full_mask(n) != 0 {
            return Err(Error::InvalidSet(format!(
                "mask {mask:#x} has bits above n = {n}"
            )));
        }
        Ok(KSet { mask, n: n as u8 })
    }

    /// Builds a set from 1-based elements; duplicates are rejected.
    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut mask = 0u32;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::InvalidSet(format!("element {e} outside [1, {n}]")));
            }
            let bit = 1u32 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidSet(format!("element {e} repeated")));
            }
            mask |= bit;
        }
        Ok(KSet { mask, n: n as u8 })
    }

    /// The initial segment `[s] = {1, .., s}`.
    pub fn prefix(n: usize, s: usize) -> Result<Self> {
        if s > n {
            return Err(Error::InvalidSet(format!("[{s}] is not a subset of [{n}]")));
        }
        KSet::new(n, full_mask(s))
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn elements(self) -> Vec<usize> {
        elements_of(self.mask)
    }

    pub fn complement(self) -> KSet {
        KSet {
            mask: self.mask ^ full_mask(self.n()),
            n: self.n,
        }
    }

    pub fn intersects(self, other: KSet) -> bool {
        self.mask & other.mask != 0
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_mask(f, self.mask)
    }
}

pub(crate) fn elements_of(mut mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize + 1);
        mask &= mask - 1;
    }
    out
}

fn write_mask(f: &mut impl fmt::Write, mask: u32) -> fmt::Result {
    if mask == 0 {
        return f.write_char('-');
    }
    let mut first = true;
    for e in elements_of(mask) {
        if !first {
            f.write_char('.')?;
        }
        first = false;
        write!(f, "{e}")?;
    }
    Ok(())
}

/// Iterator over all k-subsets of `[n]` in lex order, as masks.
#[derive(Debug, Clone)]
pub struct LexSets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl LexSets {
    pub fn new(n: usize, k: usize) -> Self {
        LexSets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for LexSets {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u32, |m, &i| m | (1 << i));
        let k = self.idx.len();
        // Advance to the next combination: bump the rightmost index that can move.
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}

/// All k-subsets of `[n]` in lex order.
pub fn all_sets(n: usize, k: usize) -> Vec<u32> {
    LexSets::new(n, k).collect()
}

/// 0-based position of `s` among the `|s|`-subsets of `[n]` in lex order.
pub fn lex_rank(s: KSet) -> u64 {
    let n = s.n();
    let k = s.len();
    let mut rank = 0u64;
    let mut prev = 0usize;
    for (i, a) in s.elements().into_iter().enumerate() {
        // Every set agreeing on the first i elements but using a smaller
        // (i+1)-th element comes earlier.
        for j in prev + 1..a {
            rank += choose(n - j, k - i - 1);
        }
        prev = a;
    }
    rank
}

/// Inverse of [`lex_rank`].
pub fn lex_unrank(n: usize, k: usize, idx: u64) -> Result<KSet> {
    check_n(n)?;
    let total = choose(n, k);
    if idx >= total {
        return Err(Error::OutOfRange {
            index: idx,
            limit: total,
        });
    }
    let mut rest = idx;
    let mut mask = 0u32;
    let mut next = 1usize;
    for i in 0..k {
        let mut e = next;
        loop {
            let block = choose(n - e, k - i - 1);
            if rest < block {
                break;
            }
            rest -= block;
            e += 1;
        }
        mask |= 1 << (e - 1);
        next = e + 1;
    }
    KSet::new(n, mask)
}

/// A duplicate-free k-uniform family over `[n]`, kept in lex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: u8,
    k: u8,
    masks: Vec<u32>,
}

impl Family {
    /// Validates, sorts and deduplicates the given member masks.
    pub fn new<I: IntoIterator<Item = u32>>(n: usize, k: usize, masks: I) -> Result<Self> {
        check_n(n)?;
        if k > n {
            return Err(Error::InvalidSet(format!("uniformity {k} exceeds n = {n}")));
        }
        let full = full_mask(n);
        let mut masks: Vec<u32> = masks.into_iter().collect();
        for &m in &masks {
            if m & !full != 0 || m.count_ones() as usize != k {
                return Err(Error::InvalidSet(format!(
                    "member {} is not a {k}-subset of [{n}]",
                    DisplayMask(m)
                )));
            }
        }
        masks.sort_unstable_by(|&a, &b| lex_cmp(a, b));
        masks.dedup();
        Ok(Family {
            n: n as u8,
            k: k as u8,
            masks,
        })
    }

    /// Caller guarantees validity and lex order.
    pub(crate) fn from_sorted(n: usize, k: usize, masks: Vec<u32>) -> Self {
        debug_assert!(masks.windows(2).all(|w| lex_cmp(w[0], w[1]) == Ordering::Less));
        debug_assert!(masks.iter().all(|m| m.count_ones() as usize == k));
        Family {
            n: n as u8,
            k: k as u8,
            masks,
        }
    }

    pub fn from_sets(n: usize, k: usize, sets: &[KSet]) -> Result<Self> {
        if let Some(s) = sets.iter().find(|s| s.n() != n) {
            return Err(Error::GroundSetMismatch {
                left: n,
                right: s.n(),
            });
        }
        Family::new(n, k, sets.iter().map(|s| s.mask()))
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Family::new(n, k, std::iter::empty())
    }

    /// Every k-subset of `[n]`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        Family::new(n, k, LexSets::new(n, k))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn members(&self) -> impl Iterator<Item = KSet> + '_ {
        let n = self.n;
        self.masks.iter().map(move |&mask| KSet { mask, n })
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.masks.binary_search_by(|&m| lex_cmp(m, mask)).is_ok()
    }

    /// Members of `self` that are not in `other` (same n and k assumed).
    pub fn difference(&self, other: &Family) -> Family {
        let masks = self
            .masks
            .iter()
            .copied()
            .filter(|&m| !other.contains(m))
            .collect();
        Family::from_sorted(self.n(), self.k(), masks)
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Family::new(
            self.n(),
            self.k(),
            self.masks.iter().chain(other.masks.iter()).copied(),
        )
    }
}

struct DisplayMask(u32);

impl fmt::Display for DisplayMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_mask(f, self.0)
    }
}

/// `n=<n> k=<k> {a.b.c, d.e.f}`; the empty set is written `-`.
impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} {{", self.n, self.k)?;
        for (i, &m) in self.masks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_mask(f, m)?;
        }
        f.write_str("}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("family {s:?}: {why}"));
        let open = s.find('{').ok_or_else(|| bad("missing '{'"))?;
        let close = s.rfind('}').ok_or_else(|| bad("missing '}'"))?;
        if close < open || !s[close + 1..].trim().is_empty() {
            return Err(bad("malformed braces"));
        }
        let (mut n, mut k) = (None, None);
        for tok in s[..open].split_whitespace() {
            let (key, val) = tok.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let val: usize = val.parse().map_err(|_| bad("non-integer header value"))?;
            match key {
                "n" => n = Some(val),
                "k" => k = Some(val),
                _ => return Err(bad("unknown header key")),
            }
        }
        let n = n.ok_or_else(|| bad("missing n="))?;
        check_n(n)?;
        let body = s[open + 1..close].trim();
        let mut sets = Vec::new();
        if !body.is_empty() {
            for member in body.split(',') {
                let member = member.trim();
                if member == "-" {
                    sets.push(KSet::new(n, 0)?);
                    continue;
                }
                let elems = member
                    .split('.')
                    .map(|e| e.trim().parse::<usize>().map_err(|_| bad("bad element")))
                    .collect::<Result<Vec<_>>>()?;
                sets.push(KSet::from_elements(n, &elems)?);
            }
        }
        let k = match (k, sets.first()) {
            (Some(k), _) => k,
            (None, Some(first)) => first.len(),
            (None, None) => return Err(bad("empty family needs k=")),
        };
        Family::from_sets(n, k, &sets)
    }
}

/// Serialized as its text form.
impl serde::Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The first `m` k-sets in lex order.
pub fn lex_initial(n: usize, k: usize, m: u64) -> Result<Family> {
    check_n(n)?;
    let total = choose(n, k);
    if m > total {
        return Err(Error::OutOfRange {
            index: m,
            limit: total,
        });
    }
    Ok(Family::from_sorted(
        n,
        k,
        LexSets::new(n, k).take(m as usize).collect(),
    ))
}

pub fn is_l_initial(f: &Family) -> bool {
    LexSets::new(f.n(), f.k())
        .zip(f.masks())
        .all(|(a, &b)| a == b)
}

/// Every member of `a` meets every member of `b`; vacuous if either is empty.
pub fn is_cross_intersecting(a: &Family, b: &Family) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::GroundSetMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(masks_cross_intersect(a.masks(), b.masks()))
}

pub(crate) fn masks_cross_intersect(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| x & y != 0))
}

pub fn is_intersecting(a: &Family) -> bool {
    let m = a.masks();
    m.iter()
        .enumerate()
        .all(|(i, &x)| m[i + 1..].iter().all(|&y| x & y != 0))
}

/// Member-wise complement in `[n]`; uniformity becomes `n - k`.
pub fn complement_family(a: &Family) -> Family {
    let full = full_mask(a.n());
    let mut masks: Vec<u32> = a.masks.iter().map(|&m| m ^ full).collect();
    masks.sort_unstable_by(|&x, &y| lex_cmp(x, y));
    Family::from_sorted(a.n(), a.n() - a.k(), masks)
}

/// Pairwise cross-intersection of a tuple of families.
pub fn tuple_is_cross_intersecting(fams: &[Family]) -> Result<bool> {
    for (i, a) in fams.iter().enumerate() {
        for b in &fams[i + 1..] {
            if !is_cross_intersecting(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
