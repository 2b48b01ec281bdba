use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::arrangement::{Obstacle, RegionGraph};
use crate::geom::Rect;

fn p(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

fn seg(id: u32, a: (i64, i64), b: (i64, i64), w: u64) -> Obstacle {
    Obstacle::new(id, p(a.0, a.1), p(b.0, b.1), w)
}

fn inst(obstacles: Vec<Obstacle>, o: (i64, i64), g: (i64, i64)) -> Instance {
    Instance::new(Rect::from_ints(0, 0, 10, 10).unwrap(), obstacles, p(o.0, o.1), p(g.0, g.1)).unwrap()
}

fn chord() -> Instance {
    inst(vec![seg(1, (0, 5), (10, 5), 5)], (5, 2), (5, 8))
}

fn slit() -> Instance {
    inst(vec![seg(1, (2, 5), (8, 5), 4)], (5, 2), (5, 8))
}

fn plus() -> Instance {
    inst(vec![seg(1, (5, 0), (5, 10), 3), seg(2, (0, 5), (10, 5), 4)], (2, 2), (8, 8))
}

/// Chord L weight 1 below which both terminals sit, and a wall of weight 10
/// between them poking 1 unit above L.
fn observation_instance() -> Instance {
    inst(vec![seg(1, (0, 6), (10, 6), 1), seg(2, (5, 0), (5, 7), 10)], (1, 1), (9, 1))
}

/// Independent product-graph reachability over (face, set) states.
fn oracle_sets(rg: &RegionGraph) -> BTreeSet<Vec<u32>> {
    let mut moves: Vec<(usize, usize, u32)> = Vec::new();
    for e in &rg.edges {
        moves.push((e.u, e.v, e.label));
        moves.push((e.v, e.u, e.label));
    }
    for l in &rg.loops {
        moves.push((l.face, l.face, l.label));
    }
    let mut seen: BTreeSet<(usize, BTreeSet<u32>)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = (rg.o_face, BTreeSet::new());
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((f, s)) = queue.pop_front() {
        for &(from, to, label) in &moves {
            if from != f {
                continue;
            }
            let mut t = s.clone();
            t.insert(label);
            let state = (to, t);
            if seen.insert(state.clone()) {
                queue.push_back(state);
            }
        }
    }
    seen.into_iter().filter(|(f, _)| *f == rg.g_face).map(|(_, s)| s.into_iter().collect()).collect()
}

fn solved(i: &Instance) -> (RegionGraph, Weights) {
    (region_graph(i).unwrap(), i.weights())
}

#[test]
fn empty_instance_costs_nothing() {
    let (rg, w) = solved(&inst(vec![], (1, 1), (9, 9)));
    let res = solve_min(&rg, &w).unwrap();
    assert_eq!(res.removed, Vec::<u32>::new());
    assert_eq!(res.weight, 0);
    assert_eq!(res.witness.faces, vec![0]);
    check_witness(&rg, &w, &res).unwrap();
}

#[test]
fn chord_must_be_removed() {
    let (rg, w) = solved(&chord());
    for res in [solve_min(&rg, &w).unwrap(), solve_bruteforce(&rg, &w).unwrap(), solve_greedy(&rg, &w).unwrap()] {
        assert_eq!(res.removed, vec![1]);
        assert_eq!(res.weight, 5);
        assert_eq!(count_crossings(&res, 1), 1);
        check_witness(&rg, &w, &res).unwrap();
    }
    let sets = achievable_sets(&rg, DEFAULT_MAX_LABELS).unwrap();
    assert_eq!(sets.sets(), vec![vec![1]]);
    assert!(solve_exact_weight(&rg, &w, 5).unwrap().is_yes());
    assert_eq!(solve_exact_weight(&rg, &w, 0).unwrap(), ExactWeight::No);
    assert_eq!(solve_exact_weight(&rg, &w, 3).unwrap(), ExactWeight::No);
}

#[test]
fn slit_is_optional() {
    let (rg, w) = solved(&slit());
    let sets = achievable_sets(&rg, DEFAULT_MAX_LABELS).unwrap();
    assert_eq!(sets.sets(), vec![vec![], vec![1]]);
    assert_eq!(solve_min(&rg, &w).unwrap().weight, 0);
    let ExactWeight::Yes(res) = solve_exact_weight(&rg, &w, 4).unwrap() else {
        panic!("slit crossing realises weight 4");
    };
    assert_eq!(res.removed, vec![1]);
    check_witness(&rg, &w, &res).unwrap();
    // a single face: the slit is crossed once and the walk is already home
    assert_eq!(count_crossings(&res, 1), 1);
    assert!(solve_exact_weight(&rg, &w, 0).unwrap().is_yes());
    assert_eq!(solve_exact_weight(&rg, &w, 2).unwrap(), ExactWeight::No);
}

#[test]
fn plus_sign_opposite_corners() {
    let (rg, w) = solved(&plus());
    let sets = achievable_sets(&rg, DEFAULT_MAX_LABELS).unwrap();
    let oracle = oracle_sets(&rg);
    assert_eq!(sets.sets().into_iter().collect::<BTreeSet<_>>(), oracle);
    assert_eq!(oracle, [vec![1, 2]].into_iter().collect());
    let res = solve_min(&rg, &w).unwrap();
    assert_eq!(res.removed, vec![1, 2]);
    assert_eq!(res.weight, 7);
    assert_eq!(solve_bruteforce(&rg, &w).unwrap().weight, 7);
}

#[test]
fn observation_instance_removes_the_same_side_chord() {
    let i = observation_instance();
    // o and g lie strictly on the same side of L
    let l = i.obstacle(1).unwrap();
    assert_eq!(side_of_line(&i.o, &l.a, &l.b), side_of_line(&i.g, &l.a, &l.b));
    let (rg, w) = solved(&i);
    let brute = solve_bruteforce(&rg, &w).unwrap();
    let best = solve_min(&rg, &w).unwrap();
    assert_eq!(brute.removed, vec![1]);
    assert_eq!(brute.weight, 1);
    assert_eq!(best.removed, brute.removed);
    assert_eq!(count_crossings(&best, 1), 2);
    assert_eq!(count_crossings(&brute, 1), 2);
    check_witness(&rg, &w, &best).unwrap();
    check_witness(&rg, &w, &brute).unwrap();
}

#[test]
fn lines_only_examples() {
    // chords 1 and 3 separate (1,1) from (9,9); chord 2 does not
    let i =
        inst(vec![seg(1, (0, 5), (10, 5), 2), seg(2, (0, 8), (3, 10), 7), seg(3, (5, 0), (5, 10), 4)], (1, 1), (9, 9));
    let out = solve_lines_only(&i).unwrap();
    assert_eq!(out.result.removed, vec![1, 3]);
    assert_eq!(out.result.weight, 6);
    assert_eq!(out.side_tests, 6);
    let rg = region_graph(&i).unwrap();
    check_witness(&rg, &i.weights(), &out.result).unwrap();

    let empty = inst(vec![], (1, 1), (9, 9));
    assert_eq!(solve_lines_only(&empty).unwrap().result.removed, Vec::<u32>::new());
    assert_eq!(solve_lines_only(&slit()), Err(SolveError::NotLinesOnly(1)));
}

#[test]
fn lines_only_through_a_vertex_falls_back() {
    // o -> g passes exactly through the crossing of the two chords
    let i = inst(vec![seg(1, (0, 0), (10, 10), 1), seg(2, (0, 10), (10, 0), 1)], (5, 1), (5, 9));
    let out = solve_lines_only(&i).unwrap();
    assert_eq!(out.result.removed, vec![1, 2]);
    let rg = region_graph(&i).unwrap();
    check_witness(&rg, &i.weights(), &out.result).unwrap();
}

#[test]
fn tie_break_is_lexicographic() {
    // two optimal routes of weight 2: {1, 3} and {2, 3}
    let i = inst(
        vec![
            seg(1, (0, 5), (5, 5), 1),
            seg(2, (5, 5), (10, 5), 1),
            seg(3, (5, 0), (5, 10), 1),
            seg(4, (5, 8), (10, 8), 5),
        ],
        (2, 2),
        (8, 9),
    );
    let (rg, w) = solved(&i);
    let best = solve_min(&rg, &w).unwrap();
    let brute = solve_bruteforce(&rg, &w).unwrap();
    assert_eq!(best.removed, vec![1, 3]);
    assert_eq!(best.weight, 2);
    assert_eq!(brute.removed, best.removed);
    check_witness(&rg, &w, &best).unwrap();
}

#[test]
fn guard_trips() {
    let obstacles = (1..=6).map(|k| seg(k, (k as i64 + 1, 0), (k as i64 + 1, 10), 1)).collect();
    let i = inst(obstacles, (1, 1), (9, 9));
    let rg = region_graph(&i).unwrap();
    assert_eq!(
        Solver::with_max_labels(5).solve_min(&rg, &i.weights()),
        Err(SolveError::TooManyLabels { found: 6, limit: 5 })
    );
    assert!(matches!(achievable_sets(&rg, 3), Err(SolveError::TooManyLabels { .. })));
    let mut w = i.weights();
    w.remove(&3);
    assert_eq!(solve_min(&rg, &w), Err(SolveError::MissingWeight(3)));
}

#[test]
fn witness_checker_catches_tampering() {
    let (rg, w) = solved(&plus());
    let good = solve_min(&rg, &w).unwrap();
    let mut bad = good.clone();
    bad.weight += 1;
    assert!(matches!(check_witness(&rg, &w, &bad), Err(WitnessError::WeightMismatch { .. })));
    let mut bad = good.clone();
    bad.removed.push(9);
    assert_eq!(check_witness(&rg, &w, &bad), Err(WitnessError::RemovedMismatch));
    let mut bad = good.clone();
    bad.witness.faces.swap(0, 1);
    assert!(check_witness(&rg, &w, &bad).is_err());
    let mut bad = good;
    bad.witness.crossings[0].label = 2 + 1 - bad.witness.crossings[0].label;
    assert!(check_witness(&rg, &w, &bad).is_err());
}
