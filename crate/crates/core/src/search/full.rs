use std::collections::BTreeSet;

use crate::bounds::bound_thm17;
use crate::canon::canonical_form;
use crate::combinat::{all_sets, Family};
use crate::count::{choose, BigCount};
use crate::error::{Error, Result};
use crate::profile::Profile;

use super::{Certificate, Engine, Objective, WITNESS_CAP};

/// Two families: the smaller universe is enumerated subset by subset.
pub const FULL_MAX_UNIVERSE: usize = 20;
/// Two families: ground-set cap.
pub const FULL_MAX_N: usize = 20;
/// Three or more families: ground-set cap.
pub const FULL_MAX_N_MULTI: usize = 5;
/// Canonical classes are computed only up to this ground set...
pub const CLASS_MAX_N: usize = 7;
/// ...and this many optimal tuples.
pub const CLASS_MAX_TUPLES: usize = 50_000;

/// Whether `p` is within the full-space caps.
pub fn full_space_supported(p: &Profile) -> bool {
    check_caps(p).is_ok()
}

fn check_caps(p: &Profile) -> Result<()> {
    if p.r() == 2 {
        let u = p.ks.iter().map(|&k| choose(p.n, k)).min().expect("r = 2");
        if p.n > FULL_MAX_N {
            return Err(Error::CapExceeded {
                what: "full-space ground-set size",
                value: p.n as u64,
                cap: FULL_MAX_N as u64,
            });
        }
        if u > FULL_MAX_UNIVERSE as u64 {
            return Err(Error::CapExceeded {
                what: "full-space smaller universe",
                value: u,
                cap: FULL_MAX_UNIVERSE as u64,
            });
        }
    } else if p.n > FULL_MAX_N_MULTI {
        return Err(Error::CapExceeded {
            what: "full-space ground-set size for r >= 3",
            value: p.n as u64,
            cap: FULL_MAX_N_MULTI as u64,
        });
    }
    Ok(())
}

/// All optimal tuples of the full space, stored compactly.
pub(crate) struct FullSolution {
    pub(crate) n: usize,
    pub(crate) ks: Vec<usize>,
    pub(crate) optimum: u64,
    kind: Kind,
}

enum Kind {
    /// `optimal` holds the enumerated family as bitmasks over `universe`;
    /// the other family is its maximum partner.
    Pair {
        enumerated: usize,
        universe: Vec<u32>,
        other_universe: Vec<u32>,
        /// Per member of `other_universe`, the enumerated sets it misses.
        disjoint: Vec<u32>,
        optimal: Vec<u32>,
    },
    /// Each tuple holds one bitmask over the matching universe per family.
    Multi {
        universes: Vec<Vec<u32>>,
        optimal: Vec<Vec<u32>>,
    },
}

fn family_from_bits(n: usize, k: usize, universe: &[u32], bits: u32) -> Family {
    Family::new(
        n,
        k,
        universe
            .iter()
            .enumerate()
            .filter(|&(i, _)| bits >> i & 1 == 1)
            .map(|(_, &m)| m),
    )
    .expect("universe members are valid")
}

impl FullSolution {
    pub(crate) fn tuple_count(&self) -> usize {
        match &self.kind {
            Kind::Pair { optimal, .. } => optimal.len(),
            Kind::Multi { optimal, .. } => optimal.len(),
        }
    }

    pub(crate) fn tuple(&self, idx: usize) -> Vec<Family> {
        match &self.kind {
            Kind::Pair {
                enumerated,
                universe,
                other_universe,
                disjoint,
                optimal,
            } => {
                let b = optimal[idx];
                let e = *enumerated;
                let o = 1 - e;
                let fe = family_from_bits(self.n, self.ks[e], universe, b);
                let fo = Family::new(
                    self.n,
                    self.ks[o],
                    other_universe
                        .iter()
                        .zip(disjoint)
                        .filter(|&(_, &d)| d & b == 0)
                        .map(|(&m, _)| m),
                )
                .expect("universe members are valid");
                if e == 0 {
                    vec![fe, fo]
                } else {
                    vec![fo, fe]
                }
            }
            Kind::Multi { universes, optimal } => optimal[idx]
                .iter()
                .enumerate()
                .map(|(i, &bits)| family_from_bits(self.n, self.ks[i], &universes[i], bits))
                .collect(),
        }
    }

    fn sizes(&self, idx: usize) -> Vec<u64> {
        match &self.kind {
            Kind::Pair {
                enumerated,
                optimal,
                ..
            } => {
                let be = optimal[idx].count_ones() as u64;
                let bo = self.optimum - be;
                if *enumerated == 0 {
                    vec![be, bo]
                } else {
                    vec![bo, be]
                }
            }
            Kind::Multi { optimal, .. } => {
                optimal[idx].iter().map(|b| b.count_ones() as u64).collect()
            }
        }
    }

    pub(crate) fn size_vectors(&self) -> Vec<Vec<u64>> {
        let set: BTreeSet<Vec<u64>> = (0..self.tuple_count()).map(|i| self.sizes(i)).collect();
        set.into_iter().collect()
    }
}

pub(crate) fn solve(p: &Profile) -> Result<FullSolution> {
    check_caps(p)?;
    let (kind, optimum) = if p.r() == 2 {
        solve_pair(p)
    } else {
        solve_multi(p)
    };
    Ok(FullSolution {
        n: p.n,
        ks: p.ks.clone(),
        optimum,
        kind,
    })
}

/// Enumerates every non-empty `B` over the smaller universe; the best partner
/// is the set of members meeting all of `B`. Partner sizes for all `B` come
/// from one subset-sum transform over the "misses" masks.
fn solve_pair(p: &Profile) -> (Kind, u64) {
    let n = p.n;
    let enumerated = if choose(n, p.ks[1]) <= choose(n, p.ks[0]) { 1 } else { 0 };
    let universe = all_sets(n, p.ks[enumerated]);
    let other_universe = all_sets(n, p.ks[1 - enumerated]);
    let e = universe.len();
    let disjoint: Vec<u32> = other_universe
        .iter()
        .map(|&a| {
            universe
                .iter()
                .enumerate()
                .filter(|&(_, &b)| a & b == 0)
                .fold(0u32, |acc, (i, _)| acc | 1 << i)
        })
        .collect();

    // cnt[X] = #{a : disjoint[a] ⊆ X}, so |partner(B)| = cnt[~B].
    let full = (1usize << e) - 1;
    let mut cnt = vec![0u32; 1 << e];
    for &d in &disjoint {
        cnt[d as usize] += 1;
    }
    for bit in 0..e {
        for x in 0..=full {
            if x >> bit & 1 == 1 {
                cnt[x] += cnt[x ^ 1 << bit];
            }
        }
    }

    let mut best = 0u64;
    let mut optimal = Vec::new();
    for b in 1..=full {
        let partner = cnt[full ^ b] as u64;
        if partner == 0 {
            continue;
        }
        let value = partner + b.count_ones() as u64;
        if value > best {
            best = value;
            optimal.clear();
        }
        if value == best {
            optimal.push(b as u32);
        }
    }
    let kind = Kind::Pair {
        enumerated,
        universe,
        other_universe,
        disjoint,
        optimal,
    };
    (kind, best)
}

/// Family-by-family search over bitmasks (universes have at most 10 members
/// when `n <= 5`). The family with the largest universe comes last and is
/// always the full partner of the others.
fn solve_multi(p: &Profile) -> (Kind, u64) {
    let r = p.r();
    let universes: Vec<Vec<u32>> = p.ks.iter().map(|&k| all_sets(p.n, k)).collect();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| universes[a].len().cmp(&universes[b].len()).then(a.cmp(&b)));

    // meets[i][j][S] = members of universe j meeting every member of S ⊆ universe i.
    let meets: Vec<Vec<Vec<u32>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let single: Vec<u32> = universes[i]
                        .iter()
                        .map(|&a| {
                            universes[j]
                                .iter()
                                .enumerate()
                                .filter(|&(_, &b)| a & b != 0)
                                .fold(0u32, |acc, (x, _)| acc | 1 << x)
                        })
                        .collect();
                    let all = (1u32 << universes[j].len()) - 1;
                    let mut table = vec![all; 1 << universes[i].len()];
                    for s in 1..table.len() {
                        let low = s.trailing_zeros() as usize;
                        table[s] = table[s & (s - 1)] & single[low];
                    }
                    table
                })
                .collect()
        })
        .collect();

    let mut search = Multi {
        order,
        meets,
        best: p.ks.iter().map(|&k| choose(p.n - 1, k - 1)).sum(),
        collect: false,
        current: vec![0; r],
        optimal: Vec::new(),
    };
    let allowed: Vec<u32> = universes
        .iter()
        .map(|u| ((1u64 << u.len()) - 1) as u32)
        .collect();
    // Pass 1 finds the optimum (the point-star sum is always attained).
    search.go(0, 0, &allowed);
    search.collect = true;
    search.go(0, 0, &allowed);
    let mut optimal = std::mem::take(&mut search.optimal);
    optimal.sort();
    (Kind::Multi { universes, optimal }, search.best)
}

struct Multi {
    order: Vec<usize>,
    meets: Vec<Vec<Vec<u32>>>,
    best: u64,
    collect: bool,
    current: Vec<u32>,
    optimal: Vec<Vec<u32>>,
}

impl Multi {
    fn go(&mut self, pos: usize, sum: u64, allowed: &[u32]) {
        let r = self.order.len();
        let i = self.order[pos];
        if pos + 1 == r {
            let last = allowed[i];
            if last == 0 {
                return;
            }
            let total = sum + last.count_ones() as u64;
            if !self.collect && total > self.best {
                self.best = total;
            } else if self.collect && total == self.best {
                self.current[i] = last;
                self.optimal.push(self.current.clone());
            }
            return;
        }
        let rest: u64 = self.order[pos..]
            .iter()
            .map(|&j| allowed[j].count_ones() as u64)
            .sum();
        if self.pruned(sum + rest) {
            return;
        }
        let mut next = allowed.to_vec();
        let mut s = allowed[i];
        // Submasks in decreasing order, largest families first.
        while s != 0 {
            let mut bound = sum + s.count_ones() as u64;
            for &j in &self.order[pos + 1..] {
                next[j] = allowed[j] & self.meets[i][j][s as usize];
                bound += next[j].count_ones() as u64;
            }
            let dead = self.order[pos + 1..].iter().any(|&j| next[j] == 0);
            if !dead && !self.pruned(bound) {
                self.current[i] = s;
                self.go(pos + 1, sum + s.count_ones() as u64, &next);
            }
            s = (s - 1) & allowed[i];
        }
    }

    fn pruned(&self, bound: u64) -> bool {
        if self.collect {
            bound < self.best
        } else {
            bound <= self.best
        }
    }
}

/// Exact optimum over all non-empty cross-intersecting tuples.
///
/// Canonical classes are computed when `n <= CLASS_MAX_N` and there are at
/// most `CLASS_MAX_TUPLES` optimal tuples.
pub fn full_space_max(p: &Profile) -> Result<Certificate> {
    let sol = solve(p)?;
    certificate(p, &sol)
}

pub(crate) fn certificate(p: &Profile, sol: &FullSolution) -> Result<Certificate> {
    let count = sol.tuple_count();
    let witnesses: Vec<Vec<Family>> = (0..count.min(WITNESS_CAP)).map(|i| sol.tuple(i)).collect();
    let classes_complete = p.n <= CLASS_MAX_N && count <= CLASS_MAX_TUPLES;
    let extremal_classes = if classes_complete {
        let keys = (0..count)
            .map(|i| canonical_form(&sol.tuple(i)))
            .collect::<Result<BTreeSet<_>>>()?;
        keys.into_iter().collect()
    } else {
        Vec::new()
    };
    let bound = p
        .check_descending_hypothesis()
        .ok()
        .map(|()| bound_thm17(p.n, &p.ks))
        .transpose()?;
    let mut cert = Certificate {
        profile: p.clone(),
        engine: Engine::Full,
        objective: Objective::Sum,
        optimum: BigCount::from(sol.optimum),
        optimal_size_vectors: sol.size_vectors(),
        optimal_tuple_count: count as u64,
        witnesses,
        extremal_classes,
        classes_complete,
        bound: None,
        bound_agreement: None,
        characterization: None,
    };
    cert.attach_bound(bound);
    Ok(cert)
}
