mod common;

use common::{random_set, rng, set};
use rand::Rng;
use ssr_core::atsp::*;
use ssr_core::solvers::{brute_force_superstring, exact_superstring, greedy_superstring};
use ssr_core::superstring::max_overlap;

fn random_12_graph<R: Rng>(r: &mut R) -> WeightedDigraph {
    let n = r.gen_range(2..=7);
    let mut g = WeightedDigraph::new(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                g.set_weight(i, j, r.gen_range(1..=2));
            }
        }
    }
    g
}

#[test]
fn overlap_graph_examples() {
    let g = overlap_graph(&set(&[&[1, 2, 3], &[2, 3, 4]]));
    assert_eq!(g.len(), 3);
    assert!(g.has_v0);
    assert_eq!((g.weight(1, 2), g.weight(2, 1)), (2, 0));
    let single = overlap_graph(&set(&[&[1, 2]]));
    assert_eq!(single.len(), 2);
    assert_eq!((single.weight(0, 1), single.weight(1, 0)), (0, 0));
}

#[test]
fn overlap_weights_are_recomputable() {
    let mut r = rng(1);
    for _ in 0..50 {
        let s = random_set(&mut r, 7, 4);
        let g = overlap_graph(&s);
        for (i, u) in s.strings().iter().enumerate() {
            assert_eq!(g.weight(0, i + 1), 0);
            assert_eq!(g.weight(i + 1, 0), 0);
            for (j, v) in s.strings().iter().enumerate() {
                if i != j {
                    assert_eq!(g.weight(i + 1, j + 1), max_overlap(u, v) as u64);
                }
            }
        }
    }
}

#[test]
fn compression_equals_max_tour() {
    let mut r = rng(2);
    for _ in 0..200 {
        let s = random_set(&mut r, 7, 6);
        let g = overlap_graph(&s);
        let (w, tour) = exact_max_atsp(&g).unwrap();
        assert_eq!(w as usize, exact_superstring(&s).unwrap().compression);
        assert_eq!(w as usize, brute_force_superstring(&s).unwrap().compression);
        assert_eq!(g.tour_weight(&tour), w);
        assert_eq!(tour[0], 0);
        assert!(greedy_superstring(&s).unwrap().compression as u64 <= w);
        if g.len() <= 8 {
            assert_eq!(brute_force_tour(&g, Objective::Max).unwrap(), w);
        }
    }
}

#[test]
fn min_12_duality() {
    let mut r = rng(3);
    for _ in 0..200 {
        let g = random_12_graph(&mut r);
        let min = brute_force_tour(&g, Objective::Min).unwrap();
        let t = min12_to_max(&g).unwrap();
        let max = brute_force_tour(&t, Objective::Max).unwrap();
        assert_eq!(min, 2 * g.len() as u64 - max);
        assert_eq!(exact_max_atsp(&t).unwrap().0, max);
    }
}

#[test]
fn transform_edge_cases() {
    let mut all2 = WeightedDigraph::new(4);
    let mut all1 = WeightedDigraph::new(4);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                all2.set_weight(i, j, 2);
                all1.set_weight(i, j, 1);
            }
        }
    }
    let zero = min12_to_max(&all2).unwrap();
    assert!((0..4).all(|i| (0..4).all(|j| zero.weight(i, j) == 0)));
    assert_eq!(min12_to_max(&all1).unwrap(), all1);
    all1.set_weight(0, 1, 3);
    assert_eq!(
        min12_to_max(&all1),
        Err(AtspError::OutOfRange { i: 0, j: 1, weight: 3 })
    );
}

#[test]
fn solver_limits() {
    let g = WeightedDigraph::from_matrix(vec![vec![0, 4], vec![6, 0]]);
    assert_eq!(exact_max_atsp(&g).unwrap().0, 10);
    assert_eq!(exact_max_atsp(&WeightedDigraph::new(6)).unwrap().0, 0);
    assert_eq!(exact_max_atsp(&WeightedDigraph::new(0)), Err(AtspError::Empty));
    assert_eq!(
        exact_max_atsp(&WeightedDigraph::new(ATSP_CAP + 1)),
        Err(AtspError::CapExceeded {
            got: ATSP_CAP + 1,
            cap: ATSP_CAP
        })
    );
    assert!(brute_force_tour(&WeightedDigraph::new(11), Objective::Max).is_err());
}

#[test]
fn digraph_text() {
    let mut r = rng(4);
    let g = random_12_graph(&mut r);
    let text = g.to_text();
    assert!(text.starts_with("digraph v1\n"));
    assert_eq!(
        WeightedDigraph::from_text(&text).unwrap().tour_weight(&[0, 1]),
        g.tour_weight(&[0, 1])
    );
    let back = WeightedDigraph::from_text(&text).unwrap();
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i != j {
                assert_eq!(back.weight(i, j), g.weight(i, j));
            }
        }
    }
    assert!(WeightedDigraph::from_text("digraph v1\nw 0 1 2\n").is_err());
    assert!(WeightedDigraph::from_text("digraph v1\nn 2\nw 0 5 2\n").is_err());
    assert!(WeightedDigraph::from_text("graph\nn 2\n").is_err());
}
