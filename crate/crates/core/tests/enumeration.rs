use std::collections::BTreeSet;

use tournament_core::canon::{leaves_at_canonical_code, CanonicalCode};
use tournament_core::verify::enumerate_tournaments;
use tournament_core::*;

/// Distinct canonical codes over every labelled tournament on `n` vertices.
fn labelled_classes(n: usize) -> BTreeSet<CanonicalCode> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs)
        .map(|word| {
            let mut k = 0;
            let t = Tournament::from_fn(n, |_, _| {
                k += 1;
                word >> (k - 1) & 1 == 1
            })
            .unwrap();
            canonical_form(&t)
        })
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Isomorphism classes on `n` vertices by orbit counting. Only permutations
/// whose cycles all have odd length fix a tournament; such a permutation
/// fixes `2^e` of them, where `e` counts its orbits on unordered pairs.
fn orbit_count(n: u64) -> u128 {
    fn parts(left: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(left)).rev().filter(|p| p % 2 == 1) {
            cur.push(p);
            parts(left - p, p, cur, out);
            cur.pop();
        }
    }
    let fact = |m: u64| (1..=m as u128).product::<u128>();
    let mut cycle_types = Vec::new();
    parts(n, n, &mut Vec::new(), &mut cycle_types);
    let mut total = 0u128;
    for ty in cycle_types {
        let mut e = ty.iter().map(|l| (l - 1) / 2).sum::<u64>();
        for i in 0..ty.len() {
            for j in i + 1..ty.len() {
                e += gcd(ty[i], ty[j]);
            }
        }
        let mut centralizer = 1u128;
        let mut i = 0;
        while i < ty.len() {
            let run = ty[i..].iter().take_while(|&&l| l == ty[i]).count();
            centralizer *= (ty[i] as u128).pow(run as u32) * fact(run as u64);
            i += run;
        }
        total += fact(n) / centralizer * (1u128 << e);
    }
    total / fact(n)
}

#[test]
fn classes_agree_with_labelled_brute_force() {
    for n in 0..=6 {
        let brute = labelled_classes(n);
        let listed: BTreeSet<CanonicalCode> = enumerate_tournaments(n).unwrap().iter().map(canonical_form).collect();
        assert_eq!(brute, listed, "n = {n}");
    }
}

#[test]
fn class_counts_agree_with_orbit_counting() {
    let expected = [1u128, 1, 1, 2, 4, 12, 56, 456, 6880];
    for n in 0..=8u64 {
        assert_eq!(orbit_count(n), expected[n as usize]);
        if n >= 1 {
            assert_eq!(enumerate_tournaments(n as usize).unwrap().len() as u128, expected[n as usize], "n = {n}");
        }
    }
}

#[test]
fn orbit_sizes_sum_to_all_labellings() {
    // Each class contributes n! / |Aut| labelled tournaments.
    for n in 1..=7usize {
        let fact: u128 = (1..=n as u128).product();
        let total: u128 = enumerate_tournaments(n)
            .unwrap()
            .iter()
            .map(|t| {
                let aut = automorphism_count(t);
                assert_eq!(aut, leaves_at_canonical_code(t), "{t:?}");
                fact / aut as u128
            })
            .sum();
        assert_eq!(total, 1u128 << (n * (n - 1) / 2), "n = {n}");
    }
}

#[test]
fn representatives_are_sorted_and_distinct() {
    let reps = enumerate_tournaments(7).unwrap();
    let codes: Vec<CanonicalCode> = reps.iter().map(canonical_form).collect();
    assert!(codes.windows(2).all(|w| w[0] < w[1]));
    assert!(enumerate_tournaments(10).is_err());
}
