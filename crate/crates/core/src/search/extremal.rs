use std::collections::BTreeSet;

use serde::Serialize;

use crate::bounds::Theorem;
use crate::canon::{canonical_form, CanonicalKey};
use crate::combinat::{complement_family, is_intersecting, Family};
use crate::constructions::{extremal_candidates, ExtremalTuple};
use crate::count::choose;
use crate::error::Result;
use crate::profile::Profile;

use super::full::{self, full_space_supported};
use super::prefix::max_sum_l_initial;
use super::Certificate;

/// Shape of the optima for a descending profile with `n >= k_1 + k_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalCase {
    /// `n > k_1 + k_r`: point stars, or a cover/star pair on a `k_r`-set.
    CoverOrStars,
    /// `r = 2`, `n = k_1 + k_2`: `F_1 = C([n],k_1) \ complement(F_2)`.
    ComplementPair,
    /// `r > 2`, `n = k_1 + k_r`, `k_1 > k_2`: stars at a common point.
    CommonStar,
    /// `r > 2`, all `k_i` equal, `n = 2k`: one intersecting family repeated.
    Intersecting,
}

impl ExtremalCase {
    pub fn of(p: &Profile) -> Result<Self> {
        p.check_descending_hypothesis()?;
        let kr = p.ks[p.r() - 1];
        Ok(if p.n > p.ks[0] + kr {
            ExtremalCase::CoverOrStars
        } else if p.r() == 2 {
            ExtremalCase::ComplementPair
        } else if p.ks[0] > p.ks[1] {
            ExtremalCase::CommonStar
        } else {
            ExtremalCase::Intersecting
        })
    }
}

/// All optima of a descending profile, checked against the equality
/// characterization.
///
/// Within the full-space caps every optimal tuple is inspected and
/// `characterization` compares isomorphism classes (or, for the
/// complement-pair and intersecting cases, the structure of each optimum).
/// Beyond them only L-initial optima are available and the check compares
/// size vectors.
pub fn enumerate_extremal(p: &Profile) -> Result<Certificate> {
    let case = ExtremalCase::of(p)?;
    let candidates = extremal_candidates(p, Theorem::T17)?;
    if full_space_supported(p) {
        full_check(p, case, &candidates)
    } else {
        prefix_check(p, case, &candidates)
    }
}

fn keys_of(tuples: &[&ExtremalTuple]) -> Result<BTreeSet<CanonicalKey>> {
    tuples.iter().map(|t| canonical_form(&t.fams)).collect()
}

fn full_check(p: &Profile, case: ExtremalCase, candidates: &[ExtremalTuple]) -> Result<Certificate> {
    let sol = full::solve(p)?;
    let mut cert = full::certificate(p, &sol)?;
    let attaining: Vec<&ExtremalTuple> = candidates
        .iter()
        .filter(|t| t.sum() == sol.optimum)
        .collect();
    let classes: BTreeSet<CanonicalKey> = cert.extremal_classes.iter().cloned().collect();
    let count = sol.tuple_count();

    cert.characterization = match case {
        ExtremalCase::CoverOrStars | ExtremalCase::CommonStar => {
            if cert.classes_complete {
                Some(!attaining.is_empty() && keys_of(&attaining)? == classes)
            } else {
                None
            }
        }
        ExtremalCase::ComplementPair => {
            let (k1, k2) = (p.ks[0], p.ks[1]);
            let complete = Family::complete(p.n, k1)?;
            let shaped = (0..count).all(|i| {
                let t = sol.tuple(i);
                t[0] == complete.difference(&complement_family(&t[1]))
            });
            // Every F_2 with 0 < |F_2| < C(n,k_2) must occur.
            let every_size = count as u64 == (1u64 << choose(p.n, k2)) - 2;
            let reps = !cert.classes_complete || keys_of(&attaining)?.is_subset(&classes);
            Some(shaped && every_size && reps)
        }
        ExtremalCase::Intersecting => {
            let size = choose(p.n - 1, p.ks[0] - 1) as usize;
            let shaped = (0..count).all(|i| {
                let t = sol.tuple(i);
                t.iter().all(|f| *f == t[0]) && t[0].len() == size && is_intersecting(&t[0])
            });
            let reps = !cert.classes_complete || keys_of(&attaining)?.is_subset(&classes);
            Some(shaped && reps)
        }
    };
    Ok(cert)
}

fn prefix_check(p: &Profile, case: ExtremalCase, candidates: &[ExtremalTuple]) -> Result<Certificate> {
    let mut cert = max_sum_l_initial(p)?;
    let optimum = cert.optimum.to_u64()?;
    let expected: BTreeSet<Vec<u64>> = candidates
        .iter()
        .filter(|t| t.sum() == optimum)
        .map(ExtremalTuple::sizes)
        .collect();
    let found: BTreeSet<Vec<u64>> = cert.optimal_size_vectors.iter().cloned().collect();
    cert.characterization = Some(match case {
        ExtremalCase::CoverOrStars | ExtremalCase::CommonStar => expected == found,
        ExtremalCase::ComplementPair => {
            let c2 = choose(p.n, p.ks[1]);
            let c1 = choose(p.n, p.ks[0]);
            let all: BTreeSet<Vec<u64>> = (1..c2).map(|m| vec![c1 - m, m]).collect();
            all == found && expected.is_subset(&found)
        }
        ExtremalCase::Intersecting => !expected.is_empty() && expected.is_subset(&found),
    });
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::BigCount;
    use crate::search::Engine;

    fn prof(n: usize, ks: &[usize]) -> Profile {
        Profile::new(n, ks.to_vec()).unwrap()
    }

    #[test]
    fn cases() {
        assert_eq!(ExtremalCase::of(&prof(6, &[3, 2])).unwrap(), ExtremalCase::CoverOrStars);
        assert_eq!(ExtremalCase::of(&prof(5, &[3, 2])).unwrap(), ExtremalCase::ComplementPair);
        assert_eq!(ExtremalCase::of(&prof(5, &[3, 2, 2])).unwrap(), ExtremalCase::CommonStar);
        assert_eq!(ExtremalCase::of(&prof(4, &[2, 2, 2])).unwrap(), ExtremalCase::Intersecting);
        assert!(ExtremalCase::of(&prof(3, &[2, 2])).is_err());
    }

    #[test]
    fn full_space_examples() {
        // Only the cover/star pair on a 2-set attains 17; point stars give 15.
        let c = enumerate_extremal(&prof(6, &[3, 2])).unwrap();
        assert_eq!(c.optimum, BigCount::new(17));
        assert_eq!(c.extremal_classes.len(), 1);
        assert_eq!(c.characterization, Some(true));

        let c = enumerate_extremal(&prof(5, &[3, 2])).unwrap();
        assert_eq!(c.optimal_tuple_count, (1 << 10) - 2);
        assert_eq!(c.characterization, Some(true));

        let c = enumerate_extremal(&prof(4, &[2, 2])).unwrap();
        assert_eq!(c.characterization, Some(true));

        let c = enumerate_extremal(&prof(4, &[2, 2, 2])).unwrap();
        assert_eq!(c.characterization, Some(true));
        let c = enumerate_extremal(&prof(5, &[3, 2, 2])).unwrap();
        assert_eq!(c.characterization, Some(true));
    }

    #[test]
    fn prefix_level_beyond_full_caps() {
        let c = enumerate_extremal(&prof(10, &[5, 3, 2])).unwrap();
        assert_eq!(c.engine, Engine::Prefix);
        assert_eq!(c.optimum, BigCount::new(205));
        assert_eq!(c.characterization, Some(true));
        let c = enumerate_extremal(&prof(7, &[3, 3])).unwrap();
        assert_eq!(c.characterization, Some(true));
    }
}
