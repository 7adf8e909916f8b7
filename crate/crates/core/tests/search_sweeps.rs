use crossint::bounds::bound_thm17;
use crossint::combinat::{all_sets, Family};
use crossint::search::{
    enumerate_extremal, full_space_max, full_space_supported, max_sum_l_initial, max_sum_thm16,
    max_weighted_pair,
};
use crossint::{BigCount, Profile};

fn descending(r: usize, kmax: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=kmax {
        for mut rest in descending(r - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn all_vectors(r: usize, kmax: usize) -> Vec<Vec<usize>> {
    (0..r).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                (1..=kmax).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect()
    })
}

#[test]
fn prefix_search_matches_descending_bound() {
    let mut checked = 0;
    for n in 2..=12 {
        for r in 2..=4 {
            for ks in descending(r, 5) {
                if n < ks[0] + ks[1] {
                    continue;
                }
                let p = Profile::new(n, ks.clone()).unwrap();
                let c = max_sum_l_initial(&p).unwrap();
                assert_eq!(c.bound_agreement, Some(true), "{p}: {:?} vs {:?}", c.optimum, c.bound);
                assert!(c.witnesses_valid().unwrap(), "{p}");
                checked += 1;
            }
        }
    }
    assert!(checked > 300);
}

#[test]
fn floored_search_matches_one_large_family_bound() {
    let mut checked = 0;
    for n in 2..=12 {
        for r in 2..=3 {
            for ks in all_vectors(r, 5) {
                for istar in 0..r {
                    if (0..r).any(|i| i != istar && n < ks[i] + ks[istar]) {
                        continue;
                    }
                    let p = Profile::new(n, ks.clone()).unwrap();
                    let c = max_sum_thm16(&p, istar).unwrap();
                    assert_eq!(c.bound_agreement, Some(true), "{p} i*={istar}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 500);
}

/// Direct enumeration of every pair/triple of families, no partner shortcut.
fn brute_force(n: usize, ks: &[usize]) -> u64 {
    let universes: Vec<Vec<u32>> = ks.iter().map(|&k| all_sets(n, k)).collect();
    let compatible = |a: u32, ua: &[u32], b: u32, ub: &[u32]| {
        (0..ua.len()).filter(|i| a >> i & 1 == 1).all(|i| {
            (0..ub.len())
                .filter(|j| b >> j & 1 == 1)
                .all(|j| ua[i] & ub[j] != 0)
        })
    };
    type Compatible = dyn Fn(u32, &[u32], u32, &[u32]) -> bool;
    fn rec(pos: usize, chosen: &mut Vec<u32>, universes: &[Vec<u32>], ok: &Compatible) -> u64 {
        if pos == universes.len() {
            return chosen.iter().map(|m| m.count_ones() as u64).sum();
        }
        let mut best = 0;
        for m in 1u32..1 << universes[pos].len() {
            if (0..pos).all(|q| ok(chosen[q], &universes[q], m, &universes[pos])) {
                chosen.push(m);
                best = best.max(rec(pos + 1, chosen, universes, ok));
                chosen.pop();
            }
        }
        best
    }
    rec(0, &mut Vec::new(), &universes, &compatible)
}

#[test]
fn full_space_matches_brute_force() {
    for n in 1..=4 {
        for ks in all_vectors(2, n) {
            let p = Profile::new(n, ks.clone()).unwrap();
            let c = full_space_max(&p).unwrap();
            assert_eq!(c.optimum, BigCount::from(brute_force(n, &ks)), "{p}");
            assert!(c.witnesses_valid().unwrap());
        }
    }
    for n in 1..=3 {
        for ks in all_vectors(3, n) {
            let p = Profile::new(n, ks.clone()).unwrap();
            let c = full_space_max(&p).unwrap();
            assert_eq!(c.optimum, BigCount::from(brute_force(n, &ks)), "{p}");
            assert!(c.witnesses_valid().unwrap());
        }
    }
}

#[test]
fn full_space_matches_prefix_search_small() {
    for n in 1..=7 {
        for r in 2..=3 {
            for ks in descending(r, n) {
                let p = Profile::new(n, ks).unwrap();
                if !full_space_supported(&p) {
                    continue;
                }
                let full = full_space_max(&p).unwrap();
                let prefix = max_sum_l_initial(&p).unwrap();
                assert_eq!(full.optimum, prefix.optimum, "{p}");
                assert!(full.witnesses_valid().unwrap(), "{p}");
            }
        }
    }
}

#[test]
fn extremal_characterization_within_full_caps() {
    for n in 2..=6 {
        for r in 2..=3 {
            for ks in descending(r, n) {
                let p = Profile::new(n, ks.clone()).unwrap();
                if n < ks[0] + ks[1] || !full_space_supported(&p) {
                    continue;
                }
                let c = enumerate_extremal(&p).unwrap();
                assert_eq!(c.characterization, Some(true), "{p}");
                assert_eq!(c.optimum, bound_thm17(n, &ks).unwrap().value, "{p}");
            }
        }
    }
}

#[test]
fn weighted_pair_matches_weighted_bound() {
    for n in 2..=8 {
        for k in 1..=4 {
            for l in 1..=4 {
                if n < k + l {
                    continue;
                }
                for tau in 1..=l {
                    for c in 1..=3 {
                        let cert = max_weighted_pair(n, k, l, BigCount::new(c), tau).unwrap();
                        assert_eq!(cert.bound_agreement, Some(true), "n={n} k={k} l={l} tau={tau} c={c}");
                        assert!(cert.witnesses_valid().unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn witnesses_are_lex_initial_prefixes() {
    let p = Profile::new(9, vec![4, 3, 2]).unwrap();
    let c = max_sum_l_initial(&p).unwrap();
    for t in &c.witnesses {
        assert!(t.iter().all(crossint::combinat::is_l_initial));
        assert!(t.iter().all(|f: &Family| !f.is_empty()));
    }
}
