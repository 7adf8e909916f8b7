//! Exact non-negative counts and binomial coefficients.
//!
//! Counting paths never touch floating point. [`BigCount`] is a checked
//! 128-bit wrapper; every arithmetic step reports overflow instead of
//! wrapping.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact non-negative integer count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(u128);

impl BigCount {
    pub const ZERO: BigCount = BigCount(0);
    pub const ONE: BigCount = BigCount(1);

    pub const fn new(value: u128) -> Self {
        BigCount(value)
    }

    pub const fn get(self) -> u128 {
        self.0
    }

    pub fn checked_add(self, rhs: BigCount) -> Result<BigCount> {
        self.0.checked_add(rhs.0).map(BigCount).ok_or(Error::Overflow)
    }

    pub fn checked_sub(self, rhs: BigCount) -> Result<BigCount> {
        self.0.checked_sub(rhs.0).map(BigCount).ok_or(Error::Overflow)
    }

    pub fn checked_mul(self, rhs: BigCount) -> Result<BigCount> {
        self.0.checked_mul(rhs.0).map(BigCount).ok_or(Error::Overflow)
    }

    /// Sums an iterator of fallible counts, failing on the first error or overflow.
    pub fn try_sum<I>(iter: I) -> Result<BigCount>
    where
        I: IntoIterator<Item = Result<BigCount>>,
    {
        iter.into_iter()
            .try_fold(BigCount::ZERO, |acc, x| acc.checked_add(x?))
    }

    /// Narrows to `u64`, failing if the value does not fit.
    pub fn to_u64(self) -> Result<u64> {
        u64::try_from(self.0).map_err(|_| Error::Overflow)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(v as u128)
    }
}

impl From<usize> for BigCount {
    fn from(v: usize) -> Self {
        BigCount(v as u128)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl std::str::FromStr for BigCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse::<u128>()
            .map(BigCount)
            .map_err(|e| Error::Parse(format!("count {s:?}: {e}")))
    }
}

// Decimal strings survive 128-bit values in any JSON consumer.
impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact binomial coefficient C(n, k).
///
/// Returns 0 when `k < 0` or `k > n`. Negative `n` is rejected.
pub fn binom(n: i64, k: i64) -> Result<BigCount> {
    if n < 0 {
        return Err(Error::InvalidSet(format!("binom with negative n = {n}")));
    }
    if k < 0 || k > n {
        return Ok(BigCount::ZERO);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is an integer; divide out the common factor
        // first so the multiplication only overflows when the result would.
        let num = n - i;
        let den = i + 1;
        let g = gcd(acc, den);
        let (acc_r, den_r) = (acc / g, den / g);
        debug_assert_eq!(num % den_r, 0);
        acc = acc_r
            .checked_mul(num / den_r)
            .ok_or(Error::Overflow)?;
    }
    Ok(BigCount(acc))
}

/// Binomial for signed arguments with C(m, j) = 0 whenever `m < 0`.
///
/// Used by identity checks that walk past the ground-set size.
pub(crate) fn binom_or_zero(n: i64, k: i64) -> Result<BigCount> {
    if n < 0 {
        Ok(BigCount::ZERO)
    } else {
        binom(n, k)
    }
}

const SMALL_N: usize = 64;

const fn pascal() -> [[u64; SMALL_N + 1]; SMALL_N + 1] {
    let mut t = [[0u64; SMALL_N + 1]; SMALL_N + 1];
    let mut n = 0;
    while n <= SMALL_N {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
}

static PASCAL: [[u64; SMALL_N + 1]; SMALL_N + 1] = pascal();

/// Table lookup of C(n, k) for `n <= 64`; 0 when `k > n`.
///
/// Meant for index arithmetic inside hot loops where both arguments are
/// already validated against the ground-set cap.
#[inline]
pub fn choose(n: usize, k: usize) -> u64 {
    assert!(n <= SMALL_N, "choose: n = {n} above table size");
    if k > n {
        0
    } else {
        PASCAL[n][k]
    }
}
