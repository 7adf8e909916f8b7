//! Exact evaluation of every closed-form bound and comparison.
//!
//! `max{.,.}` evaluators never silently pick a side: ties are reported as
//! [`Branch::Tie`] because the equality characterizations differ per branch.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::count::{binom, binom_or_zero, BigCount};
use crate::error::{hypothesis, Error, Result};
use crate::profile::{check_descending, check_istar, k_bar};

/// Theorems with an evaluator or search check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Theorem {
    /// Sum bound for possibly-empty cross-intersecting k-uniform families.
    T12,
    /// Two non-empty k-uniform families.
    T13,
    /// Two non-empty families of uniformities k >= l.
    T14,
    /// r non-empty k-uniform families.
    T15,
    /// Mixed uniformities with one large family `i*`.
    T16,
    /// Mixed uniformities, descending.
    T17,
    /// Weighted pair `|A| + c|B|` with a window on `|B|`.
    T36,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::T12,
        Theorem::T13,
        Theorem::T14,
        Theorem::T15,
        Theorem::T16,
        Theorem::T17,
        Theorem::T36,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::T12 => "t12",
            Theorem::T13 => "t13",
            Theorem::T14 => "t14",
            Theorem::T15 => "t15",
            Theorem::T16 => "t16",
            Theorem::T17 => "t17",
            Theorem::T36 => "t36",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.id();
        write!(f, "T{}.{}", &s[1..2], &s[2..3])
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .filter(|c| *c != '.')
            .collect();
        let norm = norm.strip_prefix('t').unwrap_or(&norm);
        Theorem::ALL
            .into_iter()
            .find(|t| &t.id()[1..] == norm)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Which argument of a `max{cover-star, all-stars}` attained it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    CoverStar,
    AllStars,
    Tie,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::CoverStar => "cover-star",
            Branch::AllStars => "all-stars",
            Branch::Tie => "tie",
        })
    }
}

/// Value of a two-branch bound together with both arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub value: BigCount,
    pub branch: Branch,
    /// The cover/star (or Hilton-Milner-type) argument.
    pub cover_star: BigCount,
    /// The all-stars argument.
    pub all_stars: BigCount,
    /// Optimal core size(s) `s` of the extremal cover/star pair, when defined.
    pub s_star: Vec<usize>,
}

impl BoundResult {
    fn from_args(cover_star: BigCount, all_stars: BigCount, s_cover: usize) -> Self {
        let (value, branch, s_star) = match cover_star.cmp(&all_stars) {
            Ordering::Greater => (cover_star, Branch::CoverStar, vec![s_cover]),
            Ordering::Less => (all_stars, Branch::AllStars, vec![1]),
            Ordering::Equal => {
                let mut s = vec![1, s_cover];
                s.dedup();
                (cover_star, Branch::Tie, s)
            }
        };
        BoundResult {
            value,
            branch,
            cover_star,
            all_stars,
            s_star,
        }
    }
}

fn c(n: usize, k: usize) -> Result<BigCount> {
    binom(n as i64, k as i64)
}

/// C(n, k) with C(., negative) = 0, for the `k_i - s` arguments.
fn c_signed(n: usize, k: i64) -> Result<BigCount> {
    binom(n as i64, k)
}

/// `g(s) = C(n,k_1) - C(n-s,k_1) + sum_{i>=2} C(n-s, k_i-s)`.
pub fn g_eval(n: usize, ks: &[usize], s: usize) -> Result<BigCount> {
    if ks.len() < 2 {
        return Err(hypothesis("r >= 2"));
    }
    let kmin = *ks[1..].iter().min().expect("r >= 2");
    if s == 0 || s > kmin {
        return Err(hypothesis(format!(
            "1 <= s <= min(k_2..k_r) fails (s = {s}, min = {kmin})"
        )));
    }
    if n < ks[0] {
        return Err(hypothesis(format!("n >= k_1 fails ({n} < {})", ks[0])));
    }
    let head = c(n, ks[0])?.checked_sub(c(n - s, ks[0])?)?;
    let tail = BigCount::try_sum(
        ks[1..]
            .iter()
            .map(|&k| c_signed(n - s, k as i64 - s as i64)),
    )?;
    head.checked_add(tail)
}

/// Result of scanning `g(s)` over `1 <= s <= k_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndpointMax {
    pub value: BigCount,
    /// Every `s` attaining the maximum, ascending.
    pub argmax: Vec<usize>,
    /// `g(1), g(2), .., g(k_r)`.
    pub scan: Vec<BigCount>,
}

impl EndpointMax {
    /// Whether every maximizer is `1` or `k_r`.
    pub fn attained_only_at_endpoints(&self) -> bool {
        let last = self.scan.len();
        self.argmax.iter().all(|&s| s == 1 || s == last)
    }
}

/// Full scan of `g(s)`; under the hypothesis below the maximum sits at an endpoint.
///
/// Requires `k_r = min(k_2..k_r)`, `n >= k_1 + k_i` for `2 <= i <= r-1` and
/// `n > k_1 + k_r`.
pub fn g_endpoint_argmax(n: usize, ks: &[usize]) -> Result<EndpointMax> {
    let r = ks.len();
    if r < 2 {
        return Err(hypothesis("r >= 2"));
    }
    let kr = ks[r - 1];
    if ks[1..].iter().any(|&k| k < kr) {
        return Err(hypothesis("k_r = min(k_2..k_r) fails"));
    }
    if kr == 0 {
        return Err(hypothesis("k_r >= 1"));
    }
    for (i, &k) in ks.iter().enumerate().take(r - 1).skip(1) {
        if n < ks[0] + k {
            return Err(hypothesis(format!(
                "n >= k_1 + k_{} fails ({n} < {} + {k})",
                i + 1,
                ks[0]
            )));
        }
    }
    if n <= ks[0] + kr {
        return Err(hypothesis(format!(
            "n > k_1 + k_r fails ({n} <= {} + {kr})",
            ks[0]
        )));
    }
    let scan = (1..=kr)
        .map(|s| g_eval(n, ks, s))
        .collect::<Result<Vec<_>>>()?;
    let value = *scan.iter().max().expect("k_r >= 1");
    let argmax = scan
        .iter()
        .enumerate()
        .filter(|&(_, v)| *v == value)
        .map(|(i, _)| i + 1)
        .collect();
    Ok(EndpointMax {
        value,
        argmax,
        scan,
    })
}

fn all_stars_sum(n: usize, ks: &[usize]) -> Result<BigCount> {
    BigCount::try_sum(ks.iter().map(|&k| c(n - 1, k - 1)))
}

/// `max{C(n,k_1) - C(n-k_r,k_1) + sum_{i>=2} C(n-k_r,k_i-k_r), sum C(n-1,k_i-1)}`.
pub fn bound_thm17(n: usize, ks: &[usize]) -> Result<BoundResult> {
    check_descending(n, ks)?;
    let kr = ks[ks.len() - 1];
    let cover = c(n, ks[0])?
        .checked_sub(c(n - kr, ks[0])?)?
        .checked_add(BigCount::try_sum(
            ks[1..].iter().map(|&k| c(n - kr, k - kr)),
        )?)?;
    Ok(BoundResult::from_args(cover, all_stars_sum(n, ks)?, kr))
}

/// The same shape as [`bound_thm17`] centred on family `istar` (0-based) with
/// `kbar = min_{i != i*} k_i`.
pub fn bound_thm16(n: usize, ks: &[usize], istar: usize) -> Result<BoundResult> {
    check_istar(n, ks, istar)?;
    let kb = k_bar(ks, istar);
    let ki = ks[istar];
    let rest = BigCount::try_sum(
        ks.iter()
            .enumerate()
            .filter(|&(i, _)| i != istar)
            .map(|(_, &k)| c(n - kb, k - kb)),
    )?;
    let cover = c(n, ki)?.checked_sub(c(n - kb, ki)?)?.checked_add(rest)?;
    Ok(BoundResult::from_args(cover, all_stars_sum(n, ks)?, kb))
}

/// Sum bound for r cross-intersecting k-uniform families that may be empty:
/// `C(n,k)` when `r <= n/k`, else `r C(n-1,k-1)`.
pub fn bound_hilton(n: usize, k: usize, r: usize) -> Result<BigCount> {
    if k == 0 || n < 2 * k {
        return Err(hypothesis(format!("n >= 2k fails (n = {n}, k = {k})")));
    }
    if r < 2 {
        return Err(hypothesis("r >= 2"));
    }
    if r * k <= n {
        c(n, k)
    } else {
        BigCount::from(r as u64).checked_mul(c(n - 1, k - 1)?)
    }
}

/// `C(n,k) - C(n-k,k) + 1`.
pub fn bound_hm(n: usize, k: usize) -> Result<BigCount> {
    if k == 0 || n < 2 * k {
        return Err(hypothesis(format!("n >= 2k fails (n = {n}, k = {k})")));
    }
    c(n, k)?.checked_sub(c(n - k, k)?)?.checked_add(BigCount::ONE)
}

/// Two-family bound for uniformities `k >= l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FtBound {
    pub value: BigCount,
    /// Star-floor variant only: the `k = l >= 2` expression and the general
    /// expression agree at these arguments.
    pub branches_coincide: bool,
}

/// `C(n,k) - C(n-l,k) + 1`. With `b2_at_least_star` (the smaller family has
/// at least `C(n-1,l-1)` members): `C(n,k) - C(n-k,k) + 1` if `k = l >= 2`,
/// otherwise `C(n-1,k-1) + C(n-1,l-1)`.
pub fn bound_ft(n: usize, k: usize, l: usize, b2_at_least_star: bool) -> Result<FtBound> {
    if l == 0 || k < l {
        return Err(hypothesis(format!("k >= l >= 1 fails (k = {k}, l = {l})")));
    }
    if n < k + l {
        return Err(hypothesis(format!("n >= k + l fails ({n} < {k} + {l})")));
    }
    if !b2_at_least_star {
        let value = c(n, k)?.checked_sub(c(n - l, k)?)?.checked_add(BigCount::ONE)?;
        return Ok(FtBound {
            value,
            branches_coincide: false,
        });
    }
    let stars = c(n - 1, k - 1)?.checked_add(c(n - 1, l - 1)?)?;
    if k == l && k >= 2 {
        let hm = bound_hm(n, k)?;
        Ok(FtBound {
            value: hm,
            branches_coincide: hm == stars,
        })
    } else {
        Ok(FtBound {
            value: stars,
            branches_coincide: false,
        })
    }
}

/// `max{C(n,k) - C(n-k,k) + r - 1, r C(n-1,k-1)}`.
pub fn bound_sfq15(n: usize, k: usize, r: usize) -> Result<BoundResult> {
    if k == 0 || n < 2 * k {
        return Err(hypothesis(format!("n >= 2k fails (n = {n}, k = {k})")));
    }
    if r < 2 {
        return Err(hypothesis(format!("r >= 2 fails (r = {r})")));
    }
    let cover = c(n, k)?
        .checked_sub(c(n - k, k)?)?
        .checked_add(BigCount::from(r as u64 - 1))?;
    let stars = BigCount::from(r as u64).checked_mul(c(n - 1, k - 1)?)?;
    Ok(BoundResult::from_args(cover, stars, k))
}

/// `max{C(n,k) - C(n-tau,k) + c C(n-tau,l-tau), C(n-1,k-1) + c C(n-1,l-1)}`;
/// `s_star` is the core size (1 or tau) of the extremal `(R_s, P_s)` pair.
pub fn weighted_bound(n: usize, k: usize, l: usize, tau: usize, c_w: BigCount) -> Result<BoundResult> {
    if k == 0 || l == 0 {
        return Err(hypothesis("k, l >= 1"));
    }
    if n < k + l {
        return Err(hypothesis(format!("n >= k + l fails ({n} < {k} + {l})")));
    }
    if tau == 0 || tau > l {
        return Err(hypothesis(format!("l >= tau >= 1 fails (l = {l}, tau = {tau})")));
    }
    if c_w == BigCount::ZERO {
        return Err(hypothesis("c >= 1"));
    }
    let cover = c(n, k)?
        .checked_sub(c(n - tau, k)?)?
        .checked_add(c_w.checked_mul(c(n - tau, l - tau)?)?)?;
    let stars = c(n - 1, k - 1)?.checked_add(c_w.checked_mul(c(n - 1, l - 1)?)?)?;
    Ok(BoundResult::from_args(cover, stars, tau))
}

/// Checks both telescoping identities
/// `C(n,k) - C(n-s,k) = sum_{i=1..s} C(n-i,k-1)` and
/// `C(n,k) - C(n-s,k-s) = sum_{i=0..s-1} C(n-i-1,k-i)`,
/// in additive form. Binomials with negative top are 0.
pub fn lemma24_check(n: usize, k: usize, s: usize) -> bool {
    let eval = || -> Result<bool> {
        let (n, k, s) = (n as i64, k as i64, s as i64);
        let total = binom_or_zero(n, k)?;
        let first = BigCount::try_sum((1..=s).map(|i| binom_or_zero(n - i, k - 1)))?
            .checked_add(binom_or_zero(n - s, k)?)?;
        let second = BigCount::try_sum((0..s).map(|i| binom_or_zero(n - i - 1, k - i)))?
            .checked_add(binom_or_zero(n - s, k - s)?)?;
        Ok(first == total && second == total)
    };
    eval().unwrap_or(false)
}

/// Comparison of the all-stars sum against the cover/star sum centred on
/// family 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarsVsCover {
    pub stars: BigCount,
    pub cover: BigCount,
    #[serde(skip)]
    pub ordering: Ordering,
    /// `r = 2` and `n = k_1 + k_2`.
    pub equality_predicted: bool,
}

impl StarsVsCover {
    /// `stars >= cover`, with equality exactly when predicted.
    pub fn consistent(&self) -> bool {
        self.ordering != Ordering::Less
            && (self.ordering == Ordering::Equal) == self.equality_predicted
    }
}

/// Compares `sum C(n-1,k_i-1)` with
/// `C(n,k_2) - C(n-kbar,k_2) + sum_{i != 2} C(n-kbar,k_i-kbar)`,
/// `kbar = min_{i != 2} k_i`.
///
/// Requires `n >= k_i + k_j` for all pairs, `k_1 > k_2` and `kbar > 1`.
pub fn lemma25_compare(n: usize, ks: &[usize]) -> Result<StarsVsCover> {
    let r = ks.len();
    if r < 2 {
        return Err(hypothesis("r >= 2"));
    }
    for i in 0..r {
        for j in i + 1..r {
            if n < ks[i] + ks[j] {
                return Err(hypothesis(format!(
                    "n >= k_{} + k_{} fails ({n} < {} + {})",
                    i + 1,
                    j + 1,
                    ks[i],
                    ks[j]
                )));
            }
        }
    }
    if ks[0] <= ks[1] {
        return Err(hypothesis(format!("k_1 > k_2 fails ({} <= {})", ks[0], ks[1])));
    }
    let kb = k_bar(ks, 1);
    if kb <= 1 {
        return Err(hypothesis(format!("kbar > 1 fails (kbar = {kb})")));
    }
    let stars = all_stars_sum(n, ks)?;
    let rest = BigCount::try_sum(
        ks.iter()
            .enumerate()
            .filter(|&(i, _)| i != 1)
            .map(|(_, &k)| c(n - kb, k - kb)),
    )?;
    let cover = c(n, ks[1])?.checked_sub(c(n - kb, ks[1])?)?.checked_add(rest)?;
    Ok(StarsVsCover {
        ordering: stars.cmp(&cover),
        stars,
        cover,
        equality_predicted: r == 2 && n == ks[0] + ks[1],
    })
}
