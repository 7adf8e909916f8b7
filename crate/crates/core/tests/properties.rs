use std::cmp::Ordering;

use crossint::canon::canonical_form;
use crossint::combinat::{
    all_sets, is_cross_intersecting, lex_cmp, lex_initial, lex_rank, lex_unrank, Family, KSet,
};
use crossint::constructions::{cover_r, disjointness_shadow, max_partner, star_p};
use crossint::count::choose;
use crossint::search::frontier_table;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn elements(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask >> b & 1 == 1).collect()
}

fn permute(perm: &[usize], mask: u32) -> u32 {
    elements(mask).iter().fold(0, |acc, &b| acc | 1 << perm[b as usize])
}

/// `(n, k, mask)` for a random k-subset of [n].
fn kset(max_n: usize) -> impl Strategy<Value = (usize, usize, u32)> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| {
            (Just(n), Just(k), subsequence((0..n as u32).collect::<Vec<_>>(), k))
        })
        .prop_map(|(n, k, els)| (n, k, els.iter().fold(0, |acc, &b| acc | 1 << b)))
}

/// A random non-empty k-uniform family over [n].
fn family(max_n: usize) -> impl Strategy<Value = Family> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, k)| {
            let sets = all_sets(n, k);
            let len = sets.len();
            (Just(n), Just(k), subsequence(sets, 1..=len.min(12)))
        })
        .prop_map(|(n, k, masks)| Family::new(n, k, masks).unwrap())
}

proptest! {
    #[test]
    fn lex_order_is_sequence_order(n in 1usize..=16, seed in any::<(u64, u64)>()) {
        // Two k-subsets compare like their ascending element sequences.
        let k = (seed.0 % (n as u64 + 1)) as usize;
        let total = choose(n, k);
        let a = lex_unrank(n, k, seed.0 % total).unwrap().mask();
        let b = lex_unrank(n, k, seed.1 % total).unwrap().mask();
        prop_assert_eq!(lex_cmp(a, b), elements(a).cmp(&elements(b)));
    }

    #[test]
    fn rank_round_trips((n, k, mask) in kset(20)) {
        let s = KSet::new(n, mask).unwrap();
        let r = lex_rank(s);
        prop_assert!(r < choose(n, k));
        prop_assert_eq!(lex_unrank(n, k, r).unwrap(), s);
    }

    #[test]
    fn family_text_round_trips(f in family(8)) {
        let back: Family = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn star_and_cover_sizes((n, k, mask) in kset(12), l_off in 0usize..6) {
        prop_assume!(k >= 1);
        let s = KSet::new(n, mask).unwrap();
        let l = (k + l_off).min(n);
        prop_assert_eq!(star_p(n, l, s).unwrap().len() as u64, choose(n - k, l - k));
        prop_assert_eq!(
            cover_r(n, l, s).unwrap().len() as u64,
            choose(n, l) - choose(n - k, l)
        );
    }

    #[test]
    fn partner_is_largest_compatible(a in family(8), l_seed in any::<usize>()) {
        let n = a.n();
        let l = 1 + l_seed % n;
        let p = max_partner(&a, l).unwrap();
        prop_assert!(is_cross_intersecting(&a, &p).unwrap());
        let shadow = disjointness_shadow(&a, l).unwrap();
        prop_assert_eq!(p.len() + shadow.len() as usize, choose(n, l) as usize);
        for m in shadow.masks() {
            prop_assert!(a.masks().iter().any(|x| x & m == 0));
        }
    }

    #[test]
    fn canonical_key_ignores_relabeling(
        (a, perm) in family(7).prop_flat_map(|a| {
            let ids: Vec<usize> = (0..a.n()).collect();
            (Just(a), Just(ids).prop_shuffle())
        }),
    ) {
        let n = a.n();
        let b = Family::new(n, a.k(), a.masks().iter().map(|&m| permute(&perm, m))).unwrap();
        let partner = max_partner(&a, 1).unwrap();
        let partner_b =
            Family::new(n, 1, partner.masks().iter().map(|&m| permute(&perm, m))).unwrap();
        prop_assert_eq!(canonical_form(std::slice::from_ref(&a)).unwrap(), canonical_form(std::slice::from_ref(&b)).unwrap());
        prop_assert_eq!(
            canonical_form(&[a, partner]).unwrap(),
            canonical_form(&[b, partner_b]).unwrap()
        );
    }

    #[test]
    fn frontier_invariants(n in 1usize..=9, ki_seed in any::<usize>(), kj_seed in any::<usize>()) {
        let ki = 1 + ki_seed % n;
        let kj = 1 + kj_seed % n;
        let fij = frontier_table(n, ki, kj).unwrap();
        let fji = frontier_table(n, kj, ki).unwrap();
        prop_assert_eq!(fij.get(0), choose(n, kj));
        prop_assert!(fij.f.windows(2).all(|w| w[0] >= w[1]));
        for m in 0..=choose(n, ki) {
            for mp in 0..=choose(n, kj) {
                prop_assert_eq!(fij.get(m) >= mp, fji.get(mp) >= m);
            }
        }
    }

    #[test]
    fn compression_preserves_cross_intersection(
        a in family(10),
        l_seed in any::<usize>(),
        keep in prop::collection::vec(any::<bool>(), 0..256),
    ) {
        let n = a.n();
        let l = 1 + l_seed % n;
        let p = max_partner(&a, l).unwrap();
        let b: Vec<u32> = p
            .masks()
            .iter()
            .zip(keep.iter().chain(std::iter::repeat(&true)))
            .filter(|(_, &k)| k)
            .map(|(&m, _)| m)
            .collect();
        let b = Family::new(n, l, b).unwrap();
        prop_assert!(is_cross_intersecting(&a, &b).unwrap());
        let al = lex_initial(n, a.k(), a.len() as u64).unwrap();
        let bl = lex_initial(n, l, b.len() as u64).unwrap();
        prop_assert!(is_cross_intersecting(&al, &bl).unwrap());
    }
}

#[test]
fn lex_cmp_is_a_total_order_on_each_layer() {
    for n in 1..=7 {
        for k in 0..=n {
            let sets = all_sets(n, k);
            for w in sets.windows(2) {
                assert_eq!(lex_cmp(w[0], w[1]), Ordering::Less);
                assert_eq!(lex_cmp(w[1], w[0]), Ordering::Greater);
            }
        }
    }
}
