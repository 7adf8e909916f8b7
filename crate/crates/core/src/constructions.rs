//! Named families: stars `P_S`, covers `R_S`, the disjointness shadow `D_l`,
//! largest cross-intersecting partners, and representatives of every
//! extremal configuration in the equality characterizations.

use serde::Serialize;

use crate::bounds::Theorem;
use crate::combinat::{complement_family, lex_initial, Family, KSet, LexSets};
use crate::count::{binom, choose, BigCount};
use crate::error::{hypothesis, Error, Result};
use crate::profile::{check_descending, check_istar, Profile};

/// All l-sets containing `s`.
pub fn star_p(n: usize, l: usize, s: KSet) -> Result<Family> {
    if s.n() != n {
        return Err(Error::GroundSetMismatch { left: n, right: s.n() });
    }
    if s.len() > l || l > n {
        return Err(hypothesis(format!(
            "|S| <= l <= n fails (|S| = {}, l = {l}, n = {n})",
            s.len()
        )));
    }
    let core = s.mask();
    Family::new(n, l, LexSets::new(n, l).filter(|&m| m & core == core))
}

/// All k-sets meeting `s`.
pub fn cover_r(n: usize, k: usize, s: KSet) -> Result<Family> {
    if s.n() != n {
        return Err(Error::GroundSetMismatch { left: n, right: s.n() });
    }
    if s.is_empty() {
        return Err(Error::InvalidSet("cover of the empty set".into()));
    }
    if k > n {
        return Err(hypothesis(format!("k <= n fails ({k} > {n})")));
    }
    let core = s.mask();
    Family::new(n, k, LexSets::new(n, k).filter(|&m| m & core != 0))
}

/// `D_l(a)`: every l-set disjoint from at least one member of `a`.
pub fn disjointness_shadow(a: &Family, l: usize) -> Result<Family> {
    let n = a.n();
    if l == 0 || l > n {
        return Err(hypothesis(format!("1 <= l <= n fails (l = {l}, n = {n})")));
    }
    let members = a.masks();
    Ok(Family::from_sorted(
        n,
        l,
        LexSets::new(n, l)
            .filter(|&d| members.iter().any(|&m| m & d == 0))
            .collect(),
    ))
}

/// The set `S` with `a = P_S`, if `a` is a non-empty full star.
pub fn star_core(a: &Family) -> Option<KSet> {
    let common = a.masks().iter().fold(u32::MAX, |acc, &m| acc & m);
    if a.is_empty() {
        return None;
    }
    let core = KSet::new(a.n(), common).ok()?;
    let expected = choose(a.n() - core.len(), a.k() - core.len());
    (a.len() as u64 == expected).then_some(core)
}

/// The disjointness shadow of `a` compared with the star threshold
/// `C(n-s, l)`, where `|a| = C(n-s, k-s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadowReport {
    pub shadow: Family,
    pub size: u64,
    /// The `s` in `[1, k]` with `|a| = C(n-s, k-s)`, if any.
    pub s: Option<usize>,
    pub threshold: Option<BigCount>,
    /// `n > k + l`, under which `size >= threshold` with equality exactly
    /// for stars.
    pub bound_applies: bool,
    pub equality: Option<bool>,
    pub star: bool,
}

pub fn shadow_report(a: &Family, l: usize) -> Result<ShadowReport> {
    let (n, k) = (a.n(), a.k());
    let shadow = disjointness_shadow(a, l)?;
    let size = shadow.len() as u64;
    // C(n-s, k-s) strictly decreases in s when k < n, so s is unique.
    let s = (1..=k).find(|&s| choose(n - s, k - s) == a.len() as u64);
    let threshold = s.map(|s| binom((n - s) as i64, l as i64)).transpose()?;
    Ok(ShadowReport {
        equality: threshold.map(|t| BigCount::from(size) == t),
        star: s.is_some() && star_core(a).is_some_and(|c| Some(c.len()) == s),
        bound_applies: n > k + l,
        shadow,
        size,
        s,
        threshold,
    })
}

/// The unique largest family of l-sets cross-intersecting with `a`.
pub fn max_partner(a: &Family, l: usize) -> Result<Family> {
    if a.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = a.n();
    if l == 0 || l > n {
        return Err(hypothesis(format!("1 <= l <= n fails (l = {l}, n = {n})")));
    }
    let members = a.masks();
    Ok(Family::from_sorted(
        n,
        l,
        LexSets::new(n, l)
            .filter(|&d| members.iter().all(|&m| m & d != 0))
            .collect(),
    ))
}

/// A representative extremal configuration tagged with the case it instantiates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalTuple {
    pub label: String,
    pub fams: Vec<Family>,
}

impl ExtremalTuple {
    pub fn sizes(&self) -> Vec<u64> {
        self.fams.iter().map(|f| f.len() as u64).collect()
    }

    pub fn sum(&self) -> u64 {
        self.fams.iter().map(|f| f.len() as u64).sum()
    }
}

/// `F_j = R_S` and every other family `P_S`.
fn cover_star_tuple(n: usize, ks: &[usize], j: usize, s: KSet) -> Result<Vec<Family>> {
    ks.iter()
        .enumerate()
        .map(|(i, &k)| if i == j { cover_r(n, k, s) } else { star_p(n, k, s) })
        .collect()
}

fn point_stars(n: usize, ks: &[usize]) -> Result<Vec<Family>> {
    let x = KSet::from_elements(n, &[1])?;
    ks.iter().map(|&k| star_p(n, k, x)).collect()
}

/// `C([n], k) \ complement(partner)`; needs `n = k + partner.k()`.
fn complement_pair(n: usize, k: usize, partner: &Family) -> Result<Family> {
    Ok(Family::complete(n, k)?.difference(&complement_family(partner)))
}

/// The last `m` k-sets in lex order.
fn lex_final(n: usize, k: usize, m: u64) -> Result<Family> {
    let total = choose(n, k);
    let skip = total.checked_sub(m).ok_or(Error::OutOfRange { index: m, limit: total })?;
    Family::new(n, k, LexSets::new(n, k).skip(skip as usize))
}

/// Smallest, middle and largest admissible sizes, deduplicated.
fn representative_sizes(lo: u64, hi: u64) -> Vec<u64> {
    let mut v = vec![lo, lo + (hi - lo) / 2, hi];
    v.dedup();
    v
}

fn tuple(label: impl Into<String>, fams: Vec<Family>) -> ExtremalTuple {
    ExtremalTuple {
        label: label.into(),
        fams,
    }
}

/// One representative per configuration named in the theorem's equality case.
///
/// Supported theorems are T1.7 (descending uniformities) and T1.6 (requires
/// `p.istar`). Case (2) lists every branch, including ones whose sum falls
/// below the bound at this profile; callers filter by the bound value.
/// Parameterized cases (complement pairs, intersecting families at
/// `n <= 2k`) emit a few representatives, not every optimum.
pub fn extremal_candidates(p: &Profile, theorem: Theorem) -> Result<Vec<ExtremalTuple>> {
    match theorem {
        Theorem::T17 => candidates_t17(p),
        Theorem::T16 => {
            let istar = p
                .istar
                .ok_or_else(|| hypothesis("T1.6 needs a designated family i*"))?;
            candidates_t16(p, istar)
        }
        other => Err(Error::UnknownTheorem(format!(
            "no extremal characterization for {other}"
        ))),
    }
}

fn candidates_t17(p: &Profile) -> Result<Vec<ExtremalTuple>> {
    let (n, ks) = (p.n, &p.ks);
    check_descending(n, ks)?;
    let r = ks.len();
    let (k1, kr) = (ks[0], ks[r - 1]);
    let mut out = Vec::new();
    if n > k1 + kr {
        out.push(tuple("T1.7-2-star", point_stars(n, ks)?));
        let s = KSet::prefix(n, kr)?;
        for j in (0..r).filter(|&j| ks[j] == k1) {
            out.push(tuple(
                format!("T1.7-2-cover(j={})", j + 1),
                cover_star_tuple(n, ks, j, s)?,
            ));
        }
    } else if r == 2 {
        // n = k_1 + k_2: F_1 is determined by F_2, 0 < |F_2| < C(n, k_2).
        let total = choose(n, ks[1]);
        if total < 2 {
            return Ok(out);
        }
        for m in representative_sizes(1, total - 1) {
            let f2 = lex_initial(n, ks[1], m)?;
            let f1 = complement_pair(n, k1, &f2)?;
            out.push(tuple(format!("T1.7-1i(|F2|={m})"), vec![f1, f2]));
        }
    } else if k1 > ks[1] {
        out.push(tuple("T1.7-1ii", point_stars(n, ks)?));
    } else {
        // All uniformities equal, n = 2k: a common intersecting family of
        // size C(n-1, k-1).
        let size = choose(n - 1, k1 - 1);
        out.push(tuple("T1.7-1iii-star", point_stars(n, ks)?));
        let f = lex_final(n, k1, size)?;
        out.push(tuple("T1.7-1iii-nonstar", vec![f; r]));
    }
    Ok(out)
}

fn candidates_t16(p: &Profile, istar: usize) -> Result<Vec<ExtremalTuple>> {
    let (n, ks) = (p.n, &p.ks);
    check_istar(n, ks, istar)?;
    let r = ks.len();
    let kbar = p.k_bar(istar);
    let ki = ks[istar];
    let mut out = Vec::new();
    if n > kbar + ki {
        let s1 = KSet::prefix(n, 1)?;
        out.push(tuple("T1.6-2-s1", cover_star_tuple(n, ks, istar, s1)?));
        if kbar > 1 {
            let sk = KSet::prefix(n, kbar)?;
            out.push(tuple("T1.6-2-skbar", cover_star_tuple(n, ks, istar, sk)?));
        }
        return Ok(out);
    }
    // n = kbar + k_{i*}, which forces k_i = kbar for every i != i*.
    let other = (0..r).find(|&i| i != istar).expect("r >= 2");
    let assemble = |f_other: &Family| -> Result<Vec<Family>> {
        let fi = complement_pair(n, ki, f_other)?;
        Ok((0..r)
            .map(|i| if i == istar { fi.clone() } else { f_other.clone() })
            .collect())
    };
    if r == 2 {
        for m in representative_sizes(1, choose(n - 1, kbar - 1)) {
            let f = lex_initial(n, ks[other], m)?;
            out.push(tuple(
                format!("T1.6-1i(|F{}|={m})", other + 1),
                assemble(&f)?,
            ));
        }
    } else if n > 2 * kbar {
        out.push(tuple("T1.6-1ii", point_stars(n, ks)?));
    } else {
        let size = choose(n - 1, kbar - 1);
        let star = star_p(n, kbar, KSet::prefix(n, 1)?)?;
        out.push(tuple("T1.6-1iii-star", assemble(&star)?));
        let f = lex_final(n, kbar, size)?;
        if f != star {
            out.push(tuple("T1.6-1iii-nonstar", assemble(&f)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{is_intersecting, is_l_initial, tuple_is_cross_intersecting};

    fn set(n: usize, e: &[usize]) -> KSet {
        KSet::from_elements(n, e).unwrap()
    }

    fn fam(s: &str) -> Family {
        s.parse().unwrap()
    }

    /// Oracle: filter the power set directly.
    fn brute(n: usize, k: usize, keep: impl Fn(u32) -> bool) -> Vec<u32> {
        let mut v: Vec<u32> = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k && keep(*m))
            .collect();
        v.sort_by(|&a, &b| crate::combinat::lex_cmp(a, b));
        v
    }

    #[test]
    fn star_examples() {
        let p = star_p(5, 3, set(5, &[1])).unwrap();
        assert_eq!(p.len(), 6);
        assert!(is_l_initial(&p));
        assert_eq!(star_p(4, 2, set(4, &[1, 2])).unwrap(), fam("n=4 {1.2}"));
        assert_eq!(
            star_p(5, 2, set(5, &[3])).unwrap(),
            fam("n=5 {1.3, 2.3, 3.4, 3.5}")
        );
        assert!(star_p(5, 1, set(5, &[1, 2])).is_err());
    }

    #[test]
    fn cover_examples() {
        assert_eq!(cover_r(5, 2, set(5, &[1])).unwrap().len(), 4);
        assert_eq!(cover_r(4, 2, KSet::prefix(4, 4).unwrap()).unwrap().len(), 6);
        assert_eq!(cover_r(5, 3, set(5, &[4, 5])).unwrap().len(), 9);
        assert!(cover_r(5, 3, KSet::new(5, 0).unwrap()).is_err());
    }

    #[test]
    fn sizes_match_closed_forms() {
        for n in 1..=9 {
            for s in 1..=n {
                let core = KSet::prefix(n, s).unwrap();
                for l in s..=n {
                    let p = star_p(n, l, core).unwrap();
                    assert_eq!(p.len() as u64, choose(n - s, l - s));
                    assert!(is_l_initial(&p));
                }
                for k in 1..=n {
                    let r = cover_r(n, k, core).unwrap();
                    assert_eq!(r.len() as u64, choose(n, k) - choose(n - s, k));
                    assert!(is_l_initial(&r));
                }
            }
        }
    }

    #[test]
    fn shadow_examples() {
        let a = star_p(5, 2, set(5, &[1])).unwrap();
        let d = disjointness_shadow(&a, 2).unwrap();
        assert_eq!(d.masks(), brute(5, 2, |m| m & 1 == 0).as_slice());
        assert_eq!(d.len(), 6);
        assert!(disjointness_shadow(&Family::empty(4, 2).unwrap(), 2).unwrap().is_empty());
        assert_eq!(
            disjointness_shadow(&fam("n=4 {1.2}"), 2).unwrap(),
            fam("n=4 {3.4}")
        );
    }

    #[test]
    fn partner_examples() {
        let p = star_p(5, 3, set(5, &[1])).unwrap();
        assert_eq!(max_partner(&p, 2).unwrap(), cover_r(5, 2, set(5, &[1])).unwrap());
        let r = cover_r(5, 2, set(5, &[1])).unwrap();
        assert_eq!(max_partner(&r, 3).unwrap(), p);
        let q = max_partner(&fam("n=4 {1.2}"), 2).unwrap();
        assert_eq!(q.len(), 5);
        assert!(!q.contains(0b1100));
        assert_eq!(max_partner(&Family::empty(4, 2).unwrap(), 2), Err(Error::EmptyFamily));
    }

    #[test]
    fn star_and_cover_cross_intersect_exhaustive() {
        for n in 1..=10 {
            for s in 1..=n {
                let core = KSet::prefix(n, s).unwrap();
                for l in s..=n {
                    let p = star_p(n, l, core).unwrap();
                    for k in s..=n {
                        let r = cover_r(n, k, core).unwrap();
                        assert!(crate::combinat::is_cross_intersecting(&p, &r).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn partner_duality_exhaustive() {
        for n in 2..=10 {
            for k in 1..n {
                for l in 1..=n - k {
                    for s in 1..=l {
                        let core = KSet::prefix(n, s).unwrap();
                        let p = star_p(n, l, core).unwrap();
                        let r = cover_r(n, k, core).unwrap();
                        assert_eq!(max_partner(&p, k).unwrap(), r, "n={n} k={k} l={l} s={s}");
                        assert_eq!(max_partner(&r, l).unwrap(), p, "n={n} k={k} l={l} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn worked_example_candidates() {
        let p = Profile::new(10, vec![5, 3, 2]).unwrap();
        let c = extremal_candidates(&p, Theorem::T17).unwrap();
        let stars = c.iter().find(|t| t.label == "T1.7-2-star").unwrap();
        assert_eq!(stars.sizes(), vec![126, 36, 9]);
        assert_eq!(stars.sum(), 171);
        let cover = c.iter().find(|t| t.label.starts_with("T1.7-2-cover")).unwrap();
        assert_eq!(cover.sizes(), vec![196, 8, 1]);
        assert_eq!(cover.sum(), 205);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn shadow_reports() {
        let one = KSet::from_elements(5, &[1]).unwrap();
        let r = shadow_report(&star_p(5, 2, one).unwrap(), 2).unwrap();
        assert_eq!((r.size, r.s, r.equality, r.star), (6, Some(1), Some(true), true));
        assert!(r.bound_applies);

        let r = shadow_report(&fam("n=4 {1.2}"), 2).unwrap();
        assert_eq!(r.shadow, fam("n=4 {3.4}"));

        // Same size as a 2-star at n = 7, k = 3, but not a star.
        let a = fam("n=7 {1.2.3, 1.2.4, 1.2.5, 1.3.4, 2.3.4}");
        let r = shadow_report(&a, 3).unwrap();
        assert_eq!(r.s, Some(2));
        assert_eq!(r.threshold, Some(BigCount::new(10)));
        assert!(r.size > 10 && r.equality == Some(false) && !r.star);

        assert_eq!(star_core(&fam("n=5 {1.2, 1.3, 1.4, 1.5}")), Some(one));
        assert_eq!(star_core(&fam("n=5 {1.2, 1.3}")), None);
    }

    #[test]
    fn complement_pair_candidate() {
        let p = Profile::new(4, vec![2, 2]).unwrap();
        let c = extremal_candidates(&p, Theorem::T17).unwrap();
        let first = &c[0];
        assert_eq!(first.fams[1], fam("n=4 {1.2}"));
        assert_eq!(first.fams[0].len(), 5);
        assert!(!first.fams[0].contains(0b1100));
        assert_eq!(first.sum(), 6);
        assert!(c.iter().all(|t| t.sum() == 6));
    }

    #[test]
    fn intersecting_case_candidates() {
        let p = Profile::new(6, vec![3, 3, 3]).unwrap();
        let c = extremal_candidates(&p, Theorem::T17).unwrap();
        assert_eq!(c.len(), 2);
        for t in &c {
            assert!(is_intersecting(&t.fams[0]));
            assert_eq!(t.sum(), 30);
        }
        assert_ne!(c[0].fams[0], c[1].fams[0]);
    }

    #[test]
    fn t16_candidates() {
        let p = Profile::new(10, vec![5, 3, 2]).unwrap().with_istar(2).unwrap();
        let c = extremal_candidates(&p, Theorem::T16).unwrap();
        let sums: Vec<u64> = c.iter().map(|t| t.sum()).collect();
        assert_eq!(sums, vec![171, 46]);

        let p = Profile::new(5, vec![3, 2, 2]).unwrap().with_istar(0).unwrap();
        let c = extremal_candidates(&p, Theorem::T16).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].label, "T1.6-1ii");

        let p = Profile::new(4, vec![2, 2, 2]).unwrap().with_istar(0).unwrap();
        let c = extremal_candidates(&p, Theorem::T16).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].label, "T1.6-1iii-star");
        assert_eq!(c[1].fams[1], fam("n=4 {2.3, 2.4, 3.4}"));
        for t in &c {
            assert!(tuple_is_cross_intersecting(&t.fams).unwrap());
        }
    }

    #[test]
    fn unsupported_theorem_and_bad_hypothesis() {
        let p = Profile::new(10, vec![5, 3, 2]).unwrap();
        assert!(matches!(
            extremal_candidates(&p, Theorem::T13),
            Err(Error::UnknownTheorem(_))
        ));
        assert!(extremal_candidates(&p, Theorem::T16).is_err());
        let bad = Profile::new(6, vec![4, 3]).unwrap();
        assert!(matches!(
            extremal_candidates(&bad, Theorem::T17),
            Err(Error::Hypothesis(_))
        ));
    }
}
