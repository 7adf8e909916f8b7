use std::cmp::Ordering;

use crossint::bounds::{
    bound_thm16, bound_thm17, g_endpoint_argmax, g_eval, lemma24_check, lemma25_compare,
};
use crossint::BigCount;

/// Every non-increasing sequence of length `r` with entries in `1..=kmax`.
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

/// Pascal-rule binomial on u128, independent of the library.
fn pascal(n: usize) -> Vec<Vec<u128>> {
    let mut t = vec![vec![0u128; n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = 1;
        for j in 1..=i {
            t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
        }
    }
    t
}

#[test]
fn g_at_one_is_the_all_stars_sum() {
    let c = pascal(16);
    for n in 2..=14 {
        for r in 2..=4 {
            for ks in descending(r, n) {
                let expect: u128 = ks.iter().map(|&k| c[n - 1][k - 1]).sum();
                assert_eq!(g_eval(n, &ks, 1).unwrap(), BigCount::new(expect), "n={n} {ks:?}");
            }
        }
    }
}

#[test]
#[allow(clippy::needless_range_loop)]
fn g_against_independent_arithmetic() {
    let c = pascal(20);
    let at = |n: usize, k: i64| if k < 0 { 0 } else { c[n][k as usize] };
    for n in 2..=16 {
        for ks in descending(3, 7) {
            if n < ks[0] {
                continue;
            }
            for s in 1..=ks[2] {
                let expect = c[n][ks[0]] - at(n - s, ks[0] as i64)
                    + at(n - s, ks[1] as i64 - s as i64)
                    + at(n - s, ks[2] as i64 - s as i64);
                assert_eq!(g_eval(n, &ks, s).unwrap().get(), expect);
            }
        }
    }
}

#[test]
fn endpoint_property_full_scan() {
    let mut checked = 0;
    for n in 2..=16 {
        for r in 2..=4 {
            for ks in descending(r, 7) {
                let Ok(e) = g_endpoint_argmax(n, &ks) else {
                    continue;
                };
                let scan_max = *e.scan.iter().max().unwrap();
                let ends = e.scan[0].max(*e.scan.last().unwrap());
                assert_eq!(scan_max, ends, "n={n} {ks:?} scan={:?}", e.scan);
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn lemma24_identities() {
    for n in 1..=30 {
        for k in 1..=n {
            for s in 1..=k {
                assert!(lemma24_check(n, k, s), "n={n} k={k} s={s}");
            }
        }
    }
}

#[test]
fn lemma25_never_below_and_equality_is_exact() {
    let mut checked = 0;
    for n in 2..=14 {
        for r in 2..=4 {
            for ks in descending(r, n) {
                let Ok(e) = lemma25_compare(n, &ks) else {
                    continue;
                };
                assert_ne!(e.ordering, Ordering::Less, "n={n} {ks:?}");
                assert_eq!(
                    e.ordering == Ordering::Equal,
                    r == 2 && n == ks[0] + ks[1],
                    "n={n} {ks:?}"
                );
                assert!(e.consistent());
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn descending_bound_is_best_one_large_family_bound() {
    for n in 2..=12 {
        for r in 2..=4 {
            for ks in descending(r, n) {
                let Ok(b17) = bound_thm17(n, &ks) else {
                    continue;
                };
                let best = (0..r)
                    .filter(|&i| ks[i] == ks[0])
                    .filter_map(|i| bound_thm16(n, &ks, i).ok())
                    .map(|b| b.value)
                    .max();
                if let Some(best) = best {
                    assert_eq!(b17.value, best, "n={n} {ks:?}");
                }
            }
        }
    }
}
