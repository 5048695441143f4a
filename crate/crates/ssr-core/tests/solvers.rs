mod common;

use common::{random_set, rng, set};
use ssr_core::solvers::*;
use ssr_core::superstring::*;

/// Shortest superstring over every order and every valid overlap amount at each join.
fn all_overlaps_optimum(s: &StringSet) -> usize {
    fn extend(acc: &[Symbol], rest: &[usize], s: &StringSet, best: &mut usize) {
        if rest.is_empty() {
            if is_superstring(acc, s) {
                *best = (*best).min(acc.len());
            }
            return;
        }
        for (k, &next) in rest.iter().enumerate() {
            let t = &s.strings()[next];
            let mut remaining = rest.to_vec();
            remaining.remove(k);
            for ov in 0..=t.len().min(acc.len()) {
                if acc[acc.len() - ov..] == t[..ov] {
                    let mut joined = acc.to_vec();
                    joined.extend_from_slice(&t[ov..]);
                    extend(&joined, &remaining, s, best);
                }
            }
        }
    }
    let mut best = usize::MAX;
    let all: Vec<usize> = (0..s.len()).collect();
    extend(&[], &all, s, &mut best);
    best
}

#[test]
fn examples() {
    let r = greedy_superstring(&set(&[&[1, 2], &[2, 3]])).unwrap();
    assert_eq!(r.superstring, common::letters(&[1, 2, 3]));
    let r = exact_superstring(&set(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]])).unwrap();
    assert_eq!((r.superstring.len(), r.compression), (5, 4));
    let single = set(&[&[4, 5, 6]]);
    assert_eq!(
        exact_superstring(&single).unwrap().superstring,
        common::letters(&[4, 5, 6])
    );
    assert_eq!(brute_force_superstring(&single).unwrap().superstring.len(), 3);
    let disjoint = set(&[&[1, 2], &[3, 4], &[5]]);
    let g = greedy_superstring(&disjoint).unwrap();
    assert_eq!((g.compression, g.superstring.len()), (0, 5));
}

#[test]
fn results_replay_their_order() {
    let mut r = rng(1);
    for _ in 0..100 {
        let s = random_set(&mut r, 7, 4);
        for res in [
            greedy_superstring(&s).unwrap(),
            exact_superstring(&s).unwrap(),
            brute_force_superstring(&s).unwrap(),
        ] {
            let (merged, overlaps) = merge_in_order(s.strings(), &res.order);
            assert_eq!(merged, res.superstring.symbols());
            assert_eq!(overlaps, res.overlaps);
            assert_eq!(res.compression, overlaps.iter().sum::<usize>());
            assert!(is_superstring(&res.superstring, &s));
            let mut sorted = res.order.clone();
            sorted.sort();
            assert_eq!(sorted, (0..s.len()).collect::<Vec<_>>());
        }
    }
}

#[test]
fn exact_matches_brute_force_and_beats_greedy() {
    let mut r = rng(2);
    for _ in 0..200 {
        let s = random_set(&mut r, 7, 6);
        let exact = exact_superstring(&s).unwrap();
        assert_eq!(
            exact.superstring.len(),
            brute_force_superstring(&s).unwrap().superstring.len()
        );
        let greedy = greedy_superstring(&s).unwrap();
        assert!(greedy.superstring.len() >= exact.superstring.len());
        assert!(2 * greedy.compression >= exact.compression);
    }
}

#[test]
fn max_overlap_orders_suffice() {
    let mut r = rng(3);
    for _ in 0..150 {
        let s = random_set(&mut r, 5, 3);
        assert_eq!(
            exact_superstring(&s).unwrap().superstring.len(),
            all_overlaps_optimum(&s)
        );
    }
}

#[test]
fn exact_is_deterministic() {
    let mut r = rng(4);
    for _ in 0..20 {
        let s = random_set(&mut r, 7, 3);
        assert_eq!(exact_superstring(&s).unwrap(), exact_superstring(&s).unwrap());
    }
}

#[test]
fn caps_and_empty_input() {
    let many: Vec<Vec<u32>> = (0..19).map(|i| vec![i, 100 + i]).collect();
    let s = set(&many.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
    assert_eq!(
        exact_superstring(&s),
        Err(SolveError::CapExceeded {
            got: 19,
            cap: EXACT_CAP
        })
    );
    assert!(brute_force_superstring(&s).is_err());
    assert!(greedy_superstring(&s).is_ok());
    assert_eq!(greedy_superstring(&StringSet::default()), Err(SolveError::Empty));
}

#[test]
fn permutation_enumeration() {
    let mut p = vec![0, 1, 2, 3];
    let mut count = 1;
    while next_permutation(&mut p) {
        count += 1;
    }
    assert_eq!((count, p), (24, vec![3, 2, 1, 0]));
}
