//! The r-partite graph whose independent sets encode the slack between a
//! cover/star layer at core size `s` and the next one at `s + 1`.
//!
//! For a fixed `i*` and `s`, with ground set `Y = [s+2, n]`:
//! `X_{i*}` holds the `(k_{i*}-1)`-subsets of `Y` and every other `X_i` holds
//! the `(k_i - s)`-subsets of `Y`. Edges join disjoint sets, and only between
//! `X_{i*}` and another part, so the graph is bipartite with `X_{i*}` on one
//! side.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinat::{all_sets, full_mask, Family, KSet};
use crate::constructions::{cover_r, star_p};
use crate::count::choose;
use crate::error::{hypothesis, Error, Result};
use crate::profile::k_bar;

/// Total vertex cap.
pub const AUX_MAX_VERTICES: usize = 20_000;
/// Total edge cap.
pub const AUX_MAX_EDGES: u64 = 5_000_000;
/// Largest `|X_{i*}|` swept exhaustively by [`claim_sweep`].
pub const CLAIM_EXHAUSTIVE_MAX: usize = 18;
/// Random subsets drawn by [`claim_sweep`] above the exhaustive threshold.
pub const CLAIM_RANDOM_SAMPLES: usize = 10_000;

/// A vertex: part index and position within the part.
pub type Vertex = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxGraph {
    pub n: usize,
    pub ks: Vec<usize>,
    pub istar: usize,
    pub s: usize,
    /// Underlying subsets of `[s+2, n]` per part, lex order. Parts with the
    /// same uniformity hold equal lists but stay distinct.
    pub parts: Vec<Vec<u32>>,
    /// `adj[i][a]`: positions in part `i` adjacent to vertex `a` of part `i*`.
    /// Empty for `i = i*`.
    #[serde(skip)]
    adj: Vec<Vec<Vec<u32>>>,
}

/// Indices `i != i*` split by how `n` compares with `k_i + k_{i*}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartClassification {
    /// `n > k_i + k_{i*}`.
    pub h1: Vec<usize>,
    /// `n = k_i + k_{i*}`.
    pub h2: Vec<usize>,
    /// `n < k_i + k_{i*}`, outside the usual hypothesis.
    pub below: Vec<usize>,
}

/// Builds the graph; requires `1 <= s <= kbar - 1` and `k_{i*} >= 2`.
pub fn build_aux_graph(n: usize, ks: &[usize], istar: usize, s: usize) -> Result<AuxGraph> {
    let r = ks.len();
    if r < 2 {
        return Err(hypothesis("r >= 2"));
    }
    if istar >= r {
        return Err(Error::OutOfRange {
            index: istar as u64,
            limit: r as u64,
        });
    }
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::InvalidSet(format!("uniformity {k} outside [1, {n}]")));
    }
    if n > crate::combinat::MAX_N {
        return Err(Error::CapExceeded {
            what: "ground-set size",
            value: n as u64,
            cap: crate::combinat::MAX_N as u64,
        });
    }
    let kb = k_bar(ks, istar);
    if s == 0 || s + 1 > kb {
        return Err(hypothesis(format!(
            "2 <= s + 1 <= kbar fails (s = {s}, kbar = {kb})"
        )));
    }
    if ks[istar] < 2 {
        return Err(hypothesis(format!("k_{{i*}} >= 2 fails (k_{{i*}} = {})", ks[istar])));
    }

    let y = n - s - 1;
    let part_k = |i: usize| if i == istar { ks[i] - 1 } else { ks[i] - s };
    let sizes: Vec<u64> = (0..r).map(|i| choose(y, part_k(i))).collect();
    let vertices: u64 = sizes.iter().sum();
    if vertices > AUX_MAX_VERTICES as u64 {
        return Err(Error::CapExceeded {
            what: "auxiliary graph vertices",
            value: vertices,
            cap: AUX_MAX_VERTICES as u64,
        });
    }
    let kstar = part_k(istar);
    let edges: u64 = (0..r)
        .filter(|&i| i != istar)
        .map(|i| sizes[istar] * choose(y.saturating_sub(kstar), part_k(i)))
        .sum();
    if edges > AUX_MAX_EDGES {
        return Err(Error::CapExceeded {
            what: "auxiliary graph edges",
            value: edges,
            cap: AUX_MAX_EDGES,
        });
    }

    // Subsets of [y] shifted onto [s+2, n] (bits s+1..n-1).
    let parts: Vec<Vec<u32>> = (0..r)
        .map(|i| all_sets(y, part_k(i)).into_iter().map(|m| m << (s + 1)).collect())
        .collect();
    let adj = (0..r)
        .map(|i| {
            if i == istar {
                return Vec::new();
            }
            parts[istar]
                .iter()
                .map(|&a| {
                    parts[i]
                        .iter()
                        .enumerate()
                        .filter(|&(_, &b)| a & b == 0)
                        .map(|(x, _)| x as u32)
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(AuxGraph {
        n,
        ks: ks.to_vec(),
        istar,
        s,
        parts,
        adj,
    })
}

impl AuxGraph {
    pub fn r(&self) -> usize {
        self.ks.len()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().flatten().map(Vec::len).sum()
    }

    /// Neighbours in part `i` of vertex `a` of part `i*`.
    pub fn neighbours(&self, i: usize, a: usize) -> &[u32] {
        &self.adj[i][a]
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let (star, other) = match (u.0 == self.istar, v.0 == self.istar) {
            (true, false) => (u, v),
            (false, true) => (v, u),
            _ => return false,
        };
        self.adj[other.0][star.1].binary_search(&(other.1 as u32)).is_ok()
    }

    pub fn classification(&self) -> PartClassification {
        let kstar = self.ks[self.istar];
        let mut c = PartClassification {
            h1: Vec::new(),
            h2: Vec::new(),
            below: Vec::new(),
        };
        for (i, &k) in self.ks.iter().enumerate() {
            if i == self.istar {
                continue;
            }
            match self.n.cmp(&(k + kstar)) {
                std::cmp::Ordering::Greater => c.h1.push(i),
                std::cmp::Ordering::Equal => c.h2.push(i),
                std::cmp::Ordering::Less => c.below.push(i),
            }
        }
        c
    }

    /// Whether the edges between `X_{i*}` and `X_i` form a perfect matching.
    pub fn is_perfect_matching(&self, i: usize) -> bool {
        if i == self.istar || self.parts[i].len() != self.parts[self.istar].len() {
            return false;
        }
        let mut hit = vec![false; self.parts[i].len()];
        for nb in &self.adj[i] {
            if nb.len() != 1 || std::mem::replace(&mut hit[nb[0] as usize], true) {
                return false;
            }
        }
        true
    }

    /// `(degree of X_{i*} vertices, degree of X_i vertices)` when each side is
    /// regular towards the other.
    pub fn biregular_degrees(&self, i: usize) -> Option<(usize, usize)> {
        if i == self.istar {
            return None;
        }
        let mut deg_i = vec![0usize; self.parts[i].len()];
        let mut deg_star = None;
        for nb in &self.adj[i] {
            if *deg_star.get_or_insert(nb.len()) != nb.len() {
                return None;
            }
            for &b in nb {
                deg_i[b as usize] += 1;
            }
        }
        let d = deg_i.first().copied().unwrap_or(0);
        deg_i
            .iter()
            .all(|&x| x == d)
            .then_some((deg_star.unwrap_or(0), d))
    }

    fn check_part(&self, i: usize) -> Result<()> {
        if i >= self.r() {
            return Err(Error::OutOfRange {
                index: i as u64,
                limit: self.r() as u64,
            });
        }
        if i == self.istar {
            return Err(Error::InvalidSet(format!(
                "part {} is the centre part",
                i + 1
            )));
        }
        Ok(())
    }
}

/// Outcome of one expansion test `|N(Q)| |X_{i*}| >= |X_i| |Q|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub holds: bool,
    pub equality: bool,
}

fn expansion(nq: usize, q: usize, xi: usize, xstar: usize) -> Expansion {
    let lhs = nq as u128 * xstar as u128;
    let rhs = xi as u128 * q as u128;
    Expansion {
        holds: lhs >= rhs,
        equality: lhs == rhs,
    }
}

/// Tests the expansion inequality for `Q` (positions in `X_{i*}`) into part `i`.
pub fn neighborhood_expansion_check(g: &AuxGraph, i: usize, q: &[usize]) -> Result<Expansion> {
    g.check_part(i)?;
    let xstar = g.parts[g.istar].len();
    let mut in_q = vec![false; xstar];
    for &a in q {
        if a >= xstar {
            return Err(Error::OutOfRange {
                index: a as u64,
                limit: xstar as u64,
            });
        }
        in_q[a] = true;
    }
    let mut hit = vec![false; g.parts[i].len()];
    for (a, _) in in_q.iter().enumerate().filter(|&(_, &x)| x) {
        for &b in &g.adj[i][a] {
            hit[b as usize] = true;
        }
    }
    let nq = hit.iter().filter(|&&h| h).count();
    let qn = in_q.iter().filter(|&&x| x).count();
    Ok(expansion(nq, qn, g.parts[i].len(), xstar))
}

/// Summary of the expansion inequality over many `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimSweep {
    pub part: usize,
    pub exhaustive: bool,
    pub subsets_checked: u64,
    /// Subsets where the inequality fails.
    pub violations: u64,
    /// Subsets other than `∅` and `X_{i*}` attaining equality.
    pub nontrivial_equalities: u64,
}

impl ClaimSweep {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Exhaustive over all `Q ⊆ X_{i*}` when `|X_{i*}| <= CLAIM_EXHAUSTIVE_MAX`
/// and `|X_i| <= 128`, otherwise `CLAIM_RANDOM_SAMPLES` seeded random
/// subsets plus `∅` and `X_{i*}`.
pub fn claim_sweep(g: &AuxGraph, i: usize, seed: u64) -> Result<ClaimSweep> {
    g.check_part(i)?;
    let xstar = g.parts[g.istar].len();
    let xi = g.parts[i].len();
    let mut out = ClaimSweep {
        part: i,
        exhaustive: false,
        subsets_checked: 0,
        violations: 0,
        nontrivial_equalities: 0,
    };
    let tally = |nq: usize, q: usize, out: &mut ClaimSweep| {
        let e = expansion(nq, q, xi, xstar);
        out.subsets_checked += 1;
        out.violations += u64::from(!e.holds);
        out.nontrivial_equalities += u64::from(e.equality && q != 0 && q != xstar);
    };

    if xstar <= CLAIM_EXHAUSTIVE_MAX && xi <= 128 {
        out.exhaustive = true;
        let single: Vec<u128> = g.adj[i]
            .iter()
            .map(|nb| nb.iter().fold(0u128, |m, &b| m | 1 << b))
            .collect();
        let mut nbr = vec![0u128; 1 << xstar];
        tally(0, 0, &mut out);
        for q in 1usize..1 << xstar {
            nbr[q] = nbr[q & (q - 1)] | single[q.trailing_zeros() as usize];
            tally(nbr[q].count_ones() as usize, q.count_ones() as usize, &mut out);
        }
        return Ok(out);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hit = vec![false; xi];
    let mut run = |members: &[usize], out: &mut ClaimSweep| {
        hit.iter_mut().for_each(|h| *h = false);
        for &a in members {
            for &b in &g.adj[i][a] {
                hit[b as usize] = true;
            }
        }
        tally(hit.iter().filter(|&&h| h).count(), members.len(), out);
    };
    run(&[], &mut out);
    run(&(0..xstar).collect::<Vec<_>>(), &mut out);
    for _ in 0..CLAIM_RANDOM_SAMPLES {
        let members: Vec<usize> = (0..xstar).filter(|_| rng.gen_bool(0.5)).collect();
        run(&members, &mut out);
    }
    Ok(out)
}

/// Bipartite graph given by left-side adjacency lists.
struct Bipartite<'a> {
    right: usize,
    adj: &'a [Vec<usize>],
}

const FREE: usize = usize::MAX;

impl Bipartite<'_> {
    /// Augmenting-path matching; returns `match_left`, `match_right`.
    fn max_matching(&self) -> (Vec<usize>, Vec<usize>) {
        let left = self.adj.len();
        let mut ml = vec![FREE; left];
        let mut mr = vec![FREE; self.right];
        let mut seen = vec![usize::MAX; self.right];
        for root in 0..left {
            // Iterative DFS; `via[t]` is the right vertex used to leave level t.
            let mut stack = vec![(root, 0usize)];
            let mut via: Vec<usize> = Vec::new();
            while let Some(&mut (u, ref mut ei)) = stack.last_mut() {
                if *ei == self.adj[u].len() {
                    stack.pop();
                    via.pop();
                    continue;
                }
                let v = self.adj[u][*ei];
                *ei += 1;
                if seen[v] == root {
                    continue;
                }
                seen[v] = root;
                if mr[v] == FREE {
                    via.push(v);
                    for (t, &(x, _)) in stack.iter().enumerate() {
                        ml[x] = via[t];
                        mr[via[t]] = x;
                    }
                    break;
                }
                via.push(v);
                stack.push((mr[v], 0));
            }
        }
        (ml, mr)
    }

    /// König: with `Z` the vertices reachable from free left vertices by
    /// alternating paths, `(L ∩ Z) ∪ (R \ Z)` is a maximum independent set.
    fn independent_set(&self, ml: &[usize], mr: &[usize]) -> (Vec<bool>, Vec<bool>) {
        let left = self.adj.len();
        let mut zl = vec![false; left];
        let mut zr = vec![false; self.right];
        let mut queue: Vec<usize> = (0..left).filter(|&u| ml[u] == FREE).collect();
        for &u in &queue {
            zl[u] = true;
        }
        while let Some(u) = queue.pop() {
            for &v in &self.adj[u] {
                if !zr[v] {
                    zr[v] = true;
                    let w = mr[v];
                    if w != FREE && !zl[w] {
                        zl[w] = true;
                        queue.push(w);
                    }
                }
            }
        }
        (zl, zr.into_iter().map(|z| !z).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependentSet {
    pub size: usize,
    pub matching: usize,
    /// Sorted by part, then position.
    pub witness: Vec<Vertex>,
}

/// Exact maximum independent set via maximum matching and König duality.
/// The smaller side of the bipartition is the root side.
pub fn max_independent_set(g: &AuxGraph) -> Result<IndependentSet> {
    let istar = g.istar;
    let xstar = g.parts[istar].len();
    // Other parts laid out consecutively in index order.
    let mut offsets = vec![0usize; g.r()];
    let mut others: Vec<Vertex> = Vec::new();
    for (i, offset) in offsets.iter_mut().enumerate() {
        *offset = others.len();
        if i != istar {
            others.extend((0..g.parts[i].len()).map(|x| (i, x)));
        }
    }
    let star_adj: Vec<Vec<usize>> = (0..xstar)
        .map(|a| {
            (0..g.r())
                .filter(|&i| i != istar)
                .flat_map(|i| {
                    let off = offsets[i];
                    g.adj[i][a].iter().map(move |&b| off + b as usize)
                })
                .collect()
        })
        .collect();

    let (star_in, other_in, matching) = if xstar <= others.len() {
        let b = Bipartite {
            right: others.len(),
            adj: &star_adj,
        };
        let (ml, mr) = b.max_matching();
        let m = ml.iter().filter(|&&x| x != FREE).count();
        let (l, r) = b.independent_set(&ml, &mr);
        (l, r, m)
    } else {
        let mut rev = vec![Vec::new(); others.len()];
        for (a, nb) in star_adj.iter().enumerate() {
            for &v in nb {
                rev[v].push(a);
            }
        }
        let b = Bipartite {
            right: xstar,
            adj: &rev,
        };
        let (ml, mr) = b.max_matching();
        let m = ml.iter().filter(|&&x| x != FREE).count();
        let (l, r) = b.independent_set(&ml, &mr);
        (r, l, m)
    };

    let mut witness: Vec<Vertex> = (0..xstar)
        .filter(|&a| star_in[a])
        .map(|a| (istar, a))
        .chain(others.iter().zip(&other_in).filter(|(_, &x)| x).map(|(&v, _)| v))
        .collect();
    witness.sort_unstable();
    Ok(IndependentSet {
        size: witness.len(),
        matching,
        witness,
    })
}

/// Slack families lifted from an independent set, and the full families
/// obtained by adding the base layers `R_[s]` (part `i*`) and `P_[s+1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedFamilies {
    pub slack: Vec<Family>,
    pub full: Vec<Family>,
}

/// Adds `s+1` to members of part `i*` and `[s]` to members of other parts.
pub fn independent_set_to_families(g: &AuxGraph, indep: &[Vertex]) -> Result<LiftedFamilies> {
    for &(i, x) in indep {
        if i >= g.r() || x >= g.parts[i].len() {
            return Err(Error::OutOfRange {
                index: x as u64,
                limit: g.parts.get(i).map_or(0, Vec::len) as u64,
            });
        }
    }
    for (x, &u) in indep.iter().enumerate() {
        if indep[x + 1..].iter().any(|&v| g.adjacent(u, v)) {
            return Err(Error::NotIndependent);
        }
    }
    let n = g.n;
    let core = full_mask(g.s);
    let next = 1u32 << g.s;
    let s_set = KSet::prefix(n, g.s)?;
    let s1_set = KSet::prefix(n, g.s + 1)?;
    let mut slack = Vec::with_capacity(g.r());
    let mut full = Vec::with_capacity(g.r());
    for (i, &k) in g.ks.iter().enumerate() {
        let lift = if i == g.istar { next } else { core };
        let members = indep
            .iter()
            .filter(|&&(p, _)| p == i)
            .map(|&(_, x)| g.parts[i][x] | lift);
        let fam = Family::new(n, k, members)?;
        let base = if i == g.istar {
            cover_r(n, k, s_set)?
        } else {
            star_p(n, k, s1_set)?
        };
        full.push(base.union(&fam)?);
        slack.push(fam);
    }
    Ok(LiftedFamilies { slack, full })
}

/// Graph statistics for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxStats {
    pub part_sizes: Vec<usize>,
    pub edges: usize,
    pub classification: PartClassification,
    /// Per part `i != i*`: `(deg in X_{i*}, deg in X_i)` when biregular.
    pub degrees: Vec<Option<(usize, usize)>>,
    /// Parts in H2 whose edges to `X_{i*}` form a perfect matching.
    pub perfect_matchings: Vec<usize>,
    pub matching_number: usize,
    pub independence_number: usize,
    /// `|X_{i*}|` attains the independence number.
    pub centre_side_optimal: bool,
    /// `sum_{i != i*} |X_i|` attains it.
    pub other_side_optimal: bool,
    pub claim: Vec<ClaimSweep>,
}

pub fn aux_stats(g: &AuxGraph, seed: u64) -> Result<AuxStats> {
    let mis = max_independent_set(g)?;
    let sizes = g.part_sizes();
    let others: usize = sizes.iter().sum::<usize>() - sizes[g.istar];
    let classification = g.classification();
    let perfect_matchings = classification
        .h2
        .iter()
        .copied()
        .filter(|&i| g.is_perfect_matching(i))
        .collect();
    let parts: Vec<usize> = (0..g.r()).filter(|&i| i != g.istar).collect();
    Ok(AuxStats {
        edges: g.edge_count(),
        degrees: parts.iter().map(|&i| g.biregular_degrees(i)).collect(),
        perfect_matchings,
        matching_number: mis.matching,
        independence_number: mis.size,
        centre_side_optimal: sizes[g.istar] == mis.size,
        other_side_optimal: others == mis.size,
        claim: parts
            .iter()
            .map(|&i| claim_sweep(g, i, seed))
            .collect::<Result<_>>()?,
        classification,
        part_sizes: sizes,
    })
}
