//! Discrete MCR: a graph whose vertices carry the set of obstacles covering
//! them. A walk from `s` to `t` is feasible once every cover it meets has been
//! removed.
//!
//! Segment obstacles have no area, so a region graph converts by giving every
//! face an empty cover and subdividing each labelled crossing with a vertex
//! covered by that single obstacle.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::arrangement::{ObstacleId, RegionGraph, Weights};
use crate::solvers::search::{Arc, SearchGraph};
use crate::solvers::{SolveError, BRUTE_FORCE_MAX_LABELS, DEFAULT_MAX_LABELS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverGraph {
    pub covers: Vec<BTreeSet<ObstacleId>>,
    /// Undirected edges.
    pub edges: Vec<(usize, usize)>,
    pub s: usize,
    pub t: usize,
    pub weights: Weights,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingWeight(ObstacleId),
    CoveredTerminal(usize),
    TerminalOutOfRange(usize),
    EdgeOutOfRange(usize),
    ZeroWeight(ObstacleId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingWeight(id) => write!(f, "obstacle {id} appears in a cover but has no weight"),
            Violation::CoveredTerminal(v) => write!(f, "terminal vertex {v} has a non-empty cover"),
            Violation::TerminalOutOfRange(v) => write!(f, "terminal vertex {v} does not exist"),
            Violation::EdgeOutOfRange(e) => write!(f, "edge {e} names a vertex that does not exist"),
            Violation::ZeroWeight(id) => write!(f, "obstacle {id} has zero weight"),
        }
    }
}

/// Solution of a cover-graph instance: removed obstacles and the vertex walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSolution {
    pub removed: Vec<ObstacleId>,
    pub weight: u64,
    pub path: Vec<usize>,
}

impl CoverGraph {
    pub fn from_region_graph(rg: &RegionGraph, weights: &Weights) -> CoverGraph {
        let faces = rg.face_count();
        let mut covers: Vec<BTreeSet<ObstacleId>> = (0..faces).map(|_| BTreeSet::new()).collect();
        let mut edges = Vec::new();
        for e in &rg.edges {
            let mid = covers.len();
            covers.push([e.label].into_iter().collect());
            edges.push((e.u, mid));
            edges.push((mid, e.v));
        }
        for l in &rg.loops {
            let mid = covers.len();
            covers.push([l.label].into_iter().collect());
            edges.push((l.face, mid));
        }
        let used: BTreeSet<ObstacleId> = covers.iter().flatten().copied().collect();
        let weights = weights.iter().filter(|(id, _)| used.contains(id)).map(|(&id, &w)| (id, w)).collect();
        CoverGraph { covers, edges, s: rg.o_face, t: rg.g_face, weights }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let n = self.covers.len();
        let mut out = Vec::new();
        for v in BTreeSet::from([self.s, self.t]) {
            if v >= n {
                out.push(Violation::TerminalOutOfRange(v));
            } else if !self.covers[v].is_empty() {
                out.push(Violation::CoveredTerminal(v));
            }
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u >= n || v >= n {
                out.push(Violation::EdgeOutOfRange(i));
            }
        }
        let used: BTreeSet<ObstacleId> = self.covers.iter().flatten().copied().collect();
        for id in used {
            match self.weights.get(&id) {
                None => out.push(Violation::MissingWeight(id)),
                Some(0) => out.push(Violation::ZeroWeight(id)),
                Some(_) => {}
            }
        }
        out
    }

    fn search_graph(&self) -> Result<SearchGraph, SolveError> {
        let labels: Vec<ObstacleId> =
            self.covers.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut g = SearchGraph::new(self.covers.len(), self.s, self.t, labels, &self.weights)?;
        let masks: Vec<u64> = self.covers.iter().map(|c| c.iter().map(|&id| g.bit(id)).fold(0, |a, b| a | b)).collect();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            g.adj[u].push(Arc { to: v, add: masks[v], tag: i });
            g.adj[v].push(Arc { to: u, add: masks[u], tag: i });
        }
        g.start_mask = masks[self.s];
        Ok(g)
    }

    fn solution(g: &SearchGraph, mask: u64, steps: &[crate::solvers::search::Step]) -> CoverSolution {
        let mut path = Vec::with_capacity(steps.len() + 1);
        path.push(g.start);
        path.extend(steps.iter().map(|s| s.to));
        CoverSolution { removed: g.ids(mask), weight: g.weight(mask), path }
    }

    fn checked(&self, limit: usize) -> Result<SearchGraph, SolveError> {
        for v in self.validate() {
            match v {
                Violation::MissingWeight(id) => return Err(SolveError::MissingWeight(id)),
                Violation::TerminalOutOfRange(_) | Violation::EdgeOutOfRange(_) => {
                    return Err(SolveError::InvalidGraph)
                }
                _ => {}
            }
        }
        let g = self.search_graph()?;
        if g.labels.len() > limit {
            return Err(SolveError::TooManyLabels { found: g.labels.len(), limit });
        }
        Ok(g)
    }

    /// Minimum total weight of covers met along some `s`-`t` walk.
    pub fn solve_min(&self) -> Result<CoverSolution, SolveError> {
        let g = self.checked(DEFAULT_MAX_LABELS)?;
        let found = g.best_first(true).ok_or(SolveError::Unreachable)?;
        Ok(Self::solution(&g, found.mask, &found.steps))
    }

    pub fn solve_bruteforce(&self) -> Result<CoverSolution, SolveError> {
        let g = self.checked(BRUTE_FORCE_MAX_LABELS)?;
        let found = g.brute_force().ok_or(SolveError::Unreachable)?;
        Ok(Self::solution(&g, found.mask, &found.steps))
    }

    /// All label sets that are exactly the union of covers along some walk.
    pub fn achievable_sets(&self, max_labels: usize) -> Result<BTreeSet<Vec<ObstacleId>>, SolveError> {
        let g = self.checked(max_labels)?;
        let reach = g.reachable_masks();
        Ok((0..reach.len() as u64).filter(|&m| reach[m as usize]).map(|m| g.ids(m)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{region_graph, Instance, Obstacle};
    use crate::geom::{Point, Rect};
    use crate::solvers;
    use alloc::vec;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn inst(obs: Vec<Obstacle>, o: (i64, i64), g: (i64, i64)) -> Instance {
        Instance::new(Rect::from_ints(0, 0, 10, 10).unwrap(), obs, p(o.0, o.1), p(g.0, g.1)).unwrap()
    }

    #[test]
    fn chord_subdivides_once() {
        let i = inst(vec![Obstacle::new(1, p(0, 5), p(10, 5), 5)], (5, 2), (5, 8));
        let rg = region_graph(&i).unwrap();
        let cg = CoverGraph::from_region_graph(&rg, &i.weights());
        assert_eq!(cg.covers.len(), 3);
        assert_eq!(cg.edges.len(), 2);
        let covered: Vec<usize> = cg.covers.iter().map(|c| c.len()).collect();
        assert_eq!(covered.iter().sum::<usize>(), 1);
        assert!(cg.validate().is_empty());
        let sol = cg.solve_min().unwrap();
        assert_eq!((sol.removed, sol.weight), (vec![1], 5));
    }

    #[test]
    fn empty_instance_is_one_vertex() {
        let i = inst(vec![], (1, 1), (9, 9));
        let rg = region_graph(&i).unwrap();
        let cg = CoverGraph::from_region_graph(&rg, &i.weights());
        assert_eq!(cg.covers.len(), 1);
        assert!(cg.edges.is_empty());
        assert_eq!(cg.s, cg.t);
        assert_eq!(cg.solve_min().unwrap().weight, 0);
    }

    #[test]
    fn plus_sign_matches_subset_enumeration() {
        let i =
            inst(vec![Obstacle::new(1, p(5, 0), p(5, 10), 3), Obstacle::new(2, p(0, 5), p(10, 5), 4)], (2, 2), (8, 8));
        let rg = region_graph(&i).unwrap();
        let cg = CoverGraph::from_region_graph(&rg, &i.weights());
        assert_eq!(cg.covers.len(), 8);
        assert_eq!(cg.edges.len(), 8);
        // enumerate the four label subsets by hand: only {1,2} connects opposite corners
        let connects = |allowed: &[u32]| -> bool {
            let mut seen = vec![false; cg.covers.len()];
            let mut stack = vec![cg.s];
            seen[cg.s] = true;
            while let Some(u) = stack.pop() {
                for &(a, b) in &cg.edges {
                    for (x, y) in [(a, b), (b, a)] {
                        if x == u && !seen[y] && cg.covers[y].iter().all(|id| allowed.contains(id)) {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            seen[cg.t]
        };
        let subsets: [&[u32]; 4] = [&[], &[1], &[2], &[1, 2]];
        let best = subsets
            .iter()
            .filter(|s| connects(s))
            .map(|s| s.iter().map(|id| i.weights()[id]).sum::<u64>())
            .min()
            .unwrap();
        assert_eq!(best, 7);
        assert_eq!(cg.solve_min().unwrap().weight, best);
        assert_eq!(cg.solve_bruteforce().unwrap().weight, best);
        assert_eq!(solvers::solve_min(&rg, &i.weights()).unwrap().weight, best);
    }

    #[test]
    fn validation_reports_violations() {
        let mut cg = CoverGraph {
            covers: vec![BTreeSet::new(), [7].into_iter().collect(), BTreeSet::new()],
            edges: vec![(0, 1), (1, 2)],
            s: 0,
            t: 2,
            weights: [(7, 2)].into_iter().collect(),
        };
        assert!(cg.validate().is_empty());
        cg.weights.clear();
        assert_eq!(cg.validate(), vec![Violation::MissingWeight(7)]);
        assert_eq!(cg.solve_min(), Err(SolveError::MissingWeight(7)));
        cg.weights.insert(7, 2);
        cg.s = 1;
        assert_eq!(cg.validate(), vec![Violation::CoveredTerminal(1)]);
    }

    #[test]
    fn general_covers_with_shared_obstacles() {
        // vertex covers overlap: path 0-1-3 meets {1,2}, path 0-2-3 meets {2} then {3}
        let cg = CoverGraph {
            covers: vec![BTreeSet::new(), [1, 2].into_iter().collect(), [2, 3].into_iter().collect(), BTreeSet::new()],
            edges: vec![(0, 1), (1, 3), (0, 2), (2, 3)],
            s: 0,
            t: 3,
            weights: [(1, 5), (2, 1), (3, 3)].into_iter().collect(),
        };
        let sol = cg.solve_min().unwrap();
        assert_eq!(sol.removed, vec![2, 3]);
        assert_eq!(sol.weight, 4);
        assert_eq!(sol.path, vec![0, 2, 3]);
        assert_eq!(cg.solve_bruteforce().unwrap().removed, sol.removed);
        let sets = cg.achievable_sets(DEFAULT_MAX_LABELS).unwrap();
        let expected: BTreeSet<Vec<u32>> = [vec![1, 2], vec![2, 3], vec![1, 2, 3]].into_iter().collect();
        assert_eq!(sets, expected);
    }

    #[test]
    fn unreachable_is_reported() {
        let cg = CoverGraph {
            covers: vec![BTreeSet::new(), BTreeSet::new()],
            edges: vec![],
            s: 0,
            t: 1,
            weights: Weights::new(),
        };
        assert_eq!(cg.solve_min(), Err(SolveError::Unreachable));
    }
}
