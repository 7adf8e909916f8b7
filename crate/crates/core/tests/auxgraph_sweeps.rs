use crossint::auxgraph::{
    build_aux_graph, claim_sweep, independent_set_to_families, max_independent_set, AuxGraph,
    Vertex,
};
use crossint::combinat::tuple_is_cross_intersecting;
use crossint::count::choose;
use crossint::Profile;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every in-hypothesis `(n, ks, i*, s)` with `r <= 3` and parts of at most
/// `part_cap` vertices.
fn parameterizations(part_cap: usize) -> Vec<AuxGraph> {
    let mut out = Vec::new();
    for n in 3..=20 {
        for r in 2..=3 {
            let mut ks = vec![1; r];
            loop {
                for istar in 0..r {
                    let p = Profile::new(n, ks.clone()).unwrap();
                    if ks[istar] < 2 || p.check_istar_hypothesis(istar).is_err() {
                        continue;
                    }
                    for s in 1..p.k_bar(istar) {
                        let y = n - s - 1;
                        let fits = (0..r).all(|i| {
                            let k = if i == istar { ks[i] - 1 } else { ks[i] - s };
                            choose(y, k) <= part_cap as u64
                        });
                        if fits {
                            out.push(build_aux_graph(n, &ks, istar, s).unwrap());
                        }
                    }
                }
                // Odometer over ks in [1, n]^r.
                let Some(i) = ks.iter().position(|&k| k < n) else {
                    break;
                };
                ks[i] += 1;
                ks[..i].iter_mut().for_each(|k| *k = 1);
            }
        }
    }
    out
}

fn vertices(g: &AuxGraph) -> Vec<Vertex> {
    g.part_sizes()
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |x| (i, x)))
        .collect()
}

/// Independence number by scanning all `2^|V|` vertex subsets.
fn brute_force_mis(g: &AuxGraph) -> usize {
    let vs = vertices(g);
    let adj: Vec<u32> = vs
        .iter()
        .map(|&u| {
            vs.iter()
                .enumerate()
                .filter(|&(_, &v)| g.adjacent(u, v))
                .fold(0, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let total = 1usize << vs.len();
    let mut indep = vec![false; total];
    indep[0] = true;
    let mut best = 0;
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        indep[mask] = indep[rest] && adj[low] & mask as u32 == 0;
        if indep[mask] {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

#[test]
fn sweep_is_non_trivial() {
    let gs = parameterizations(18);
    assert!(gs.len() > 100, "{}", gs.len());
    assert!(gs.iter().any(|g| g.r() == 3));
    assert!(gs.iter().any(|g| !g.classification().h2.is_empty()));
}

#[test]
fn matching_independence_matches_brute_force() {
    let mut checked = 0;
    for g in parameterizations(18) {
        if g.vertex_count() > 22 {
            continue;
        }
        let mis = max_independent_set(&g).unwrap();
        assert_eq!(mis.size, brute_force_mis(&g), "{:?} i*={} s={}", g.ks, g.istar, g.s);
        checked += 1;
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn witness_is_independent_and_koenig_holds() {
    for g in parameterizations(18) {
        let mis = max_independent_set(&g).unwrap();
        assert_eq!(mis.size + mis.matching, g.vertex_count());
        assert_eq!(mis.witness.len(), mis.size);
        for (x, &u) in mis.witness.iter().enumerate() {
            assert!(mis.witness[x + 1..].iter().all(|&v| !g.adjacent(u, v)));
        }
    }
}

#[test]
fn strict_case_optimum_is_a_full_side() {
    let mut checked = 0;
    for g in parameterizations(18) {
        let c = g.classification();
        if !c.h2.is_empty() || !c.below.is_empty() {
            continue;
        }
        let sizes = g.part_sizes();
        let centre = sizes[g.istar];
        let rest: usize = sizes.iter().sum::<usize>() - centre;
        assert_eq!(max_independent_set(&g).unwrap().size, centre.max(rest));
        checked += 1;
    }
    assert!(checked > 50);
}

#[test]
fn tight_parts_are_perfect_matchings() {
    let mut checked = 0;
    for g in parameterizations(18) {
        for i in g.classification().h2 {
            assert!(g.is_perfect_matching(i), "{:?} i*={} s={} part {i}", g.ks, g.istar, g.s);
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn expansion_holds_for_every_subset() {
    let mut strict = 0;
    for g in parameterizations(18) {
        let c = g.classification();
        for i in (0..g.r()).filter(|&i| i != g.istar) {
            let sweep = claim_sweep(&g, i, 7).unwrap();
            assert!(sweep.exhaustive);
            assert_eq!(sweep.subsets_checked, 1 << g.part_sizes()[g.istar]);
            assert!(sweep.holds(), "{:?} i*={} s={} part {i}", g.ks, g.istar, g.s);
            if c.h1.contains(&i) {
                assert_eq!(sweep.nontrivial_equalities, 0, "{:?} i*={} s={}", g.ks, g.istar, g.s);
                strict += 1;
            }
        }
    }
    assert!(strict > 50);
}

#[test]
fn lifted_independent_sets_are_cross_intersecting() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in parameterizations(12) {
        let mut vs = vertices(&g);
        for _ in 0..4 {
            // Greedy independent set along a random vertex order.
            vs.shuffle(&mut rng);
            let mut indep: Vec<Vertex> = Vec::new();
            for &v in &vs {
                if indep.iter().all(|&u| !g.adjacent(u, v)) {
                    indep.push(v);
                }
            }
            let lifted = independent_set_to_families(&g, &indep).unwrap();
            assert!(tuple_is_cross_intersecting(&lifted.full).unwrap());
            let slack: usize = lifted.slack.iter().map(|f| f.len()).sum();
            assert_eq!(slack, indep.len());
        }
    }
}
