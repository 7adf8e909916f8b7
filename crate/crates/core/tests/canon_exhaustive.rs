use std::collections::HashMap;

use crossint::canon::canonical_form;
use crossint::combinat::{all_sets, Family};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn relabel(perm: &[usize], f: &Family) -> Vec<u32> {
    let mut v: Vec<u32> = f
        .masks()
        .iter()
        .map(|&m| (0..perm.len()).filter(|b| m >> b & 1 == 1).fold(0, |a, b| a | 1 << perm[b]))
        .collect();
    v.sort_unstable();
    v
}

/// Every tuple of families with the given uniformities over `[n]`.
fn all_tuples(n: usize, ks: &[usize]) -> Vec<Vec<Family>> {
    ks.iter().fold(vec![Vec::new()], |acc, &k| {
        let sets = all_sets(n, k);
        acc.into_iter()
            .flat_map(|t| {
                let sets = sets.clone();
                (0u32..1 << sets.len()).map(move |sel| {
                    let masks = (0..sets.len()).filter(|i| sel >> i & 1 == 1).map(|i| sets[i]);
                    let mut t = t.clone();
                    t.push(Family::new(n, k, masks).unwrap());
                    t
                })
            })
            .collect()
    })
}

/// Groups tuples into orbits under simultaneous relabeling and checks that
/// canonical keys separate exactly those orbits.
fn check(n: usize, ks: &[usize]) -> usize {
    let perms = permutations(n);
    let tuples = all_tuples(n, ks);
    let orbit_rep = |t: &[Family]| -> Vec<Vec<u32>> {
        perms
            .iter()
            .map(|p| t.iter().map(|f| relabel(p, f)).collect::<Vec<_>>())
            .min()
            .unwrap()
    };
    let mut by_orbit: HashMap<Vec<Vec<u32>>, crossint::canon::CanonicalKey> = HashMap::new();
    let mut keys_seen = HashMap::new();
    for t in &tuples {
        let key = canonical_form(t).unwrap();
        let orbit = orbit_rep(t);
        if let Some(prev) = by_orbit.insert(orbit.clone(), key.clone()) {
            assert_eq!(prev, key, "n={n} {ks:?}: one orbit, two keys");
        }
        if let Some(prev) = keys_seen.insert(key, orbit.clone()) {
            assert_eq!(prev, orbit, "n={n} {ks:?}: two orbits, one key");
        }
    }
    by_orbit.len()
}

#[test]
fn keys_separate_orbits_exactly() {
    // Graphs on 4 vertices up to isomorphism: 11.
    assert_eq!(check(4, &[2]), 11);
    // Graphs on 5 vertices: 34.
    assert_eq!(check(5, &[2]), 34);
    check(3, &[1, 2]);
    check(4, &[1, 3]);
    check(4, &[2, 1]);
    check(3, &[2, 2, 1]);
}

#[test]
fn family_order_matters() {
    let a = Family::new(4, 1, [0b0001]).unwrap();
    let b = Family::new(4, 1, [0b0001, 0b0010]).unwrap();
    assert_ne!(
        canonical_form(&[a.clone(), b.clone()]).unwrap(),
        canonical_form(&[b, a]).unwrap()
    );
}
