use serde::Serialize;

use crate::combinat::all_sets;
use crate::error::{Error, Result};

/// Default ground-set cap for frontier tables.
pub const FRONTIER_MAX_N: usize = 20;

/// `f[m]` is the largest `m'` such that the first `m` `k_i`-sets and the
/// first `m'` `k_j`-sets (lex order) are cross-intersecting.
///
/// `f` is non-increasing, `f[0] = C(n,k_j)`, and
/// `f_ij[m] >= m'` iff `f_ji[m'] >= m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrontierTable {
    pub n: usize,
    pub k_i: usize,
    pub k_j: usize,
    pub f: Vec<u64>,
}

impl FrontierTable {
    /// Largest compatible `k_j`-prefix for a `k_i`-prefix of length `m`.
    pub fn get(&self, m: u64) -> u64 {
        self.f[m as usize]
    }

    pub fn compatible(&self, m: u64, m_prime: u64) -> bool {
        m_prime <= self.get(m)
    }

    /// `C(n, k_i)`.
    pub fn rows(&self) -> u64 {
        self.f.len() as u64 - 1
    }
}

pub(crate) fn check_frontier_args(n: usize, k_i: usize, k_j: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "frontier ground-set size",
            value: n as u64,
            cap: cap as u64,
        });
    }
    for k in [k_i, k_j] {
        if k == 0 || k > n {
            return Err(Error::InvalidSet(format!("uniformity {k} outside [1, {n}]")));
        }
    }
    Ok(())
}

/// Two-pointer construction with a direct disjointness test for every pair
/// that could lower the pointer.
pub fn frontier_table(n: usize, k_i: usize, k_j: usize) -> Result<FrontierTable> {
    check_frontier_args(n, k_i, k_j, FRONTIER_MAX_N)?;
    let a = all_sets(n, k_i);
    let b = all_sets(n, k_j);
    Ok(build(n, k_i, k_j, &a, &b))
}

fn build(n: usize, k_i: usize, k_j: usize, a: &[u32], b: &[u32]) -> FrontierTable {
    let mut f = Vec::with_capacity(a.len() + 1);
    let mut ptr = b.len();
    f.push(ptr as u64);
    for &x in a {
        // Earlier members of `a` already meet all of b[..ptr].
        if let Some(p) = b[..ptr].iter().position(|&y| x & y == 0) {
            ptr = p;
        }
        f.push(ptr as u64);
    }
    FrontierTable { n, k_i, k_j, f }
}

/// Compares the "lex-last members intersect" predicate with the direct
/// table over all `k_i, k_j` and all non-empty prefix pairs at ground set `n`.
///
/// Returns the first `(k_i, k_j, m, m')` where they disagree. The predicate
/// fails from `n = 2` on, so tables are always built by the direct check.
pub fn last_member_shortcut_counterexample(
    n: usize,
) -> Result<Option<(usize, usize, u64, u64)>> {
    check_frontier_args(n, 1, 1, FRONTIER_MAX_N)?;
    let sets: Vec<Vec<u32>> = (0..=n).map(|k| all_sets(n, k)).collect();
    for k_i in 1..=n {
        for k_j in 1..=n {
            let (a, b) = (&sets[k_i], &sets[k_j]);
            let t = build(n, k_i, k_j, a, b);
            for m in 1..=a.len() {
                let last_a = a[m - 1];
                for mp in 1..=b.len() {
                    let shortcut = last_a & b[mp - 1] != 0;
                    if shortcut != t.compatible(m as u64, mp as u64) {
                        return Ok(Some((k_i, k_j, m as u64, mp as u64)));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{lex_initial, is_cross_intersecting};
    use crate::count::choose;

    #[test]
    fn examples() {
        assert_eq!(frontier_table(4, 2, 2).unwrap().f, vec![6, 5, 4, 3, 2, 1, 0]);
        assert_eq!(frontier_table(5, 2, 3).unwrap().get(1), 9);
        for (n, ki, kj) in [(6, 2, 3), (7, 3, 1), (5, 5, 1)] {
            assert_eq!(frontier_table(n, ki, kj).unwrap().get(0), choose(n, kj));
        }
    }

    #[test]
    fn matches_pairwise_check() {
        for n in 1..=6 {
            for ki in 1..=n {
                for kj in 1..=n {
                    let t = frontier_table(n, ki, kj).unwrap();
                    for m in 0..=choose(n, ki) {
                        let a = lex_initial(n, ki, m).unwrap();
                        let best = (0..=choose(n, kj))
                            .filter(|&mp| {
                                is_cross_intersecting(&a, &lex_initial(n, kj, mp).unwrap())
                                    .unwrap()
                            })
                            .max()
                            .unwrap();
                        assert_eq!(t.get(m), best, "n={n} ki={ki} kj={kj} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn last_member_shortcut_is_unsound() {
        // {1},{2} against itself: the last members meet but 1 and 2 do not.
        assert_eq!(last_member_shortcut_counterexample(1).unwrap(), None);
        for n in 2..=12 {
            assert_eq!(
                last_member_shortcut_counterexample(n).unwrap(),
                Some((1, 1, 2, 2))
            );
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(frontier_table(21, 2, 2), Err(Error::CapExceeded { .. })));
        assert!(frontier_table(5, 0, 2).is_err());
    }
}
