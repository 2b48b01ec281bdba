//! Label-set search shared by every solver.
//!
//! A [`SearchGraph`] is a directed graph whose arcs add a set of labels (a bit
//! mask over at most 64 distinct obstacle ids). Region graphs add one label per
//! crossing; cover graphs add the cover of the vertex being entered.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use hashbrown::HashMap;

use crate::arrangement::{ObstacleId, Weights};

use super::SolveError;

pub(crate) type Mask = u64;

#[derive(Clone, Debug)]
pub(crate) struct Arc {
    pub to: usize,
    pub add: Mask,
    /// Caller-defined payload (sub-edge index or cover-graph edge index).
    pub tag: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Step {
    pub to: usize,
    pub tag: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Found {
    pub mask: Mask,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug)]
pub(crate) struct SearchGraph {
    pub adj: Vec<Vec<Arc>>,
    pub start: usize,
    pub goal: usize,
    pub start_mask: Mask,
    /// Sorted ascending; bit `i` of a mask stands for `labels[i]`.
    pub labels: Vec<ObstacleId>,
    pub costs: Vec<u64>,
}

/// Compares two masks as sorted id sequences (labels are indexed in ascending
/// id order, so the lowest set bit is the smallest id).
pub(crate) fn lex_cmp(mut a: Mask, mut b: Mask) -> Ordering {
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la.cmp(&lb);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

#[derive(PartialEq, Eq)]
struct Key {
    weight: u64,
    mask: Mask,
    node: usize,
    entry: usize,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| lex_cmp(self.mask, other.mask))
            .then_with(|| self.node.cmp(&other.node))
            .then_with(|| self.entry.cmp(&other.entry))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Entry {
    node: usize,
    parent: Option<usize>,
    tag: usize,
}

impl SearchGraph {
    pub fn new(
        nodes: usize,
        start: usize,
        goal: usize,
        labels: Vec<ObstacleId>,
        weights: &Weights,
    ) -> Result<Self, SolveError> {
        if labels.len() > 64 {
            return Err(SolveError::TooManyLabels { found: labels.len(), limit: 64 });
        }
        let costs = labels
            .iter()
            .map(|id| weights.get(id).copied().ok_or(SolveError::MissingWeight(*id)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SearchGraph { adj: vec![Vec::new(); nodes], start, goal, start_mask: 0, labels, costs })
    }

    pub fn bit(&self, id: ObstacleId) -> Mask {
        match self.labels.binary_search(&id) {
            Ok(i) => 1 << i,
            Err(_) => 0,
        }
    }

    pub fn weight(&self, mut mask: Mask) -> u64 {
        let mut w = 0;
        while mask != 0 {
            w += self.costs[mask.trailing_zeros() as usize];
            mask &= mask - 1;
        }
        w
    }

    pub fn ids(&self, mut mask: Mask) -> Vec<ObstacleId> {
        let mut out = Vec::new();
        while mask != 0 {
            out.push(self.labels[mask.trailing_zeros() as usize]);
            mask &= mask - 1;
        }
        out
    }

    pub fn mask_of(&self, ids: &[ObstacleId]) -> Option<Mask> {
        ids.iter().try_fold(0, |m, id| self.labels.binary_search(id).ok().map(|i| m | (1 << i)))
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    fn unwind(entries: &[Entry], mut at: usize) -> Vec<Step> {
        let mut steps = Vec::new();
        while let Some(parent) = entries[at].parent {
            steps.push(Step { to: entries[at].node, tag: entries[at].tag });
            at = parent;
        }
        steps.reverse();
        steps
    }

    /// Best-first search over `(node, label set)` ordered by weight, then by
    /// lexicographic id sequence.
    ///
    /// With `dominance` every node keeps the list of label sets it has been
    /// settled with and discards any superset: this is exact. Without it a node
    /// is settled once, by the first (cheapest) set to reach it.
    pub fn best_first(&self, dominance: bool) -> Option<Found> {
        let mut heap = BinaryHeap::new();
        let mut entries = vec![Entry { node: self.start, parent: None, tag: 0 }];
        let mut settled: Vec<Vec<Mask>> = vec![Vec::new(); self.node_count()];
        let dominated = |settled: &[Vec<Mask>], node: usize, mask: Mask| -> bool {
            if dominance {
                settled[node].iter().any(|&r| r & !mask == 0)
            } else {
                !settled[node].is_empty()
            }
        };
        heap.push(Reverse(Key {
            weight: self.weight(self.start_mask),
            mask: self.start_mask,
            node: self.start,
            entry: 0,
        }));
        while let Some(Reverse(key)) = heap.pop() {
            if dominated(&settled, key.node, key.mask) {
                continue;
            }
            settled[key.node].push(key.mask);
            if key.node == self.goal {
                return Some(Found { mask: key.mask, steps: Self::unwind(&entries, key.entry) });
            }
            for arc in &self.adj[key.node] {
                let mask = key.mask | arc.add;
                if dominated(&settled, arc.to, mask) {
                    continue;
                }
                let entry = entries.len();
                entries.push(Entry { node: arc.to, parent: Some(key.entry), tag: arc.tag });
                heap.push(Reverse(Key { weight: self.weight(mask), mask, node: arc.to, entry }));
            }
        }
        None
    }

    /// Breadth-first walk from start to goal using only arcs whose labels are
    /// all inside `allowed`. The walk minimises the number of arcs.
    pub fn bfs_within(&self, allowed: Mask) -> Option<Vec<Step>> {
        if self.start_mask & !allowed != 0 {
            return None;
        }
        let n = self.node_count();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[self.start] = true;
        queue.push_back(self.start);
        while let Some(u) = queue.pop_front() {
            if u == self.goal {
                let mut steps = Vec::new();
                let mut at = u;
                while let Some((from, tag)) = prev[at] {
                    steps.push(Step { to: at, tag });
                    at = from;
                }
                steps.reverse();
                return Some(steps);
            }
            for arc in &self.adj[u] {
                if arc.add & !allowed == 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    prev[arc.to] = Some((u, arc.tag));
                    queue.push_back(arc.to);
                }
            }
        }
        None
    }

    /// Label set collected along `steps`.
    pub fn collected(&self, steps: &[Step]) -> Mask {
        let mut mask = self.start_mask;
        let mut at = self.start;
        for s in steps {
            let arc = self.adj[at].iter().find(|a| a.to == s.to && a.tag == s.tag).expect("step follows an arc");
            mask |= arc.add;
            at = s.to;
        }
        mask
    }

    /// Exhaustive oracle: first label set in (weight, lexicographic) order whose
    /// arcs connect start to goal.
    pub fn brute_force(&self) -> Option<Found> {
        let l = self.labels.len();
        let mut order: Vec<Mask> = (0..(1u64 << l)).collect();
        order.sort_by(|&a, &b| self.weight(a).cmp(&self.weight(b)).then_with(|| lex_cmp(a, b)));
        for allowed in order {
            if let Some(steps) = self.bfs_within(allowed) {
                let mask = self.collected(&steps);
                return Some(Found { mask, steps });
            }
        }
        None
    }

    /// Every label set with which the goal can be reached, as a bitmap over
    /// masks.
    ///
    /// Masks only grow along a walk, so processing them in increasing numeric
    /// order lets each mask's reachable nodes be closed in one pass: arcs
    /// already covered by the mask stay in the layer, the others seed a
    /// strictly larger mask.
    pub fn reachable_masks(&self) -> Vec<bool> {
        let l = self.labels.len();
        let words = self.node_count().div_ceil(64).max(1);
        let layers = 1usize << l;
        let mut reach = vec![0u64; layers * words];
        let set = |reach: &mut [u64], mask: usize, node: usize| -> bool {
            let w = &mut reach[mask * words + node / 64];
            let bit = 1u64 << (node % 64);
            let fresh = *w & bit == 0;
            *w |= bit;
            fresh
        };
        set(&mut reach, self.start_mask as usize, self.start);
        let mut at_goal = vec![false; layers];
        let mut stack = Vec::new();
        for mask in 0..layers {
            let row = &reach[mask * words..(mask + 1) * words];
            if row.iter().all(|&w| w == 0) {
                continue;
            }
            stack.clear();
            for (wi, &w) in row.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    stack.push(wi * 64 + w.trailing_zeros() as usize);
                    w &= w - 1;
                }
            }
            while let Some(u) = stack.pop() {
                for arc in &self.adj[u] {
                    let next = mask | arc.add as usize;
                    if next == mask {
                        if set(&mut reach, mask, arc.to) {
                            stack.push(arc.to);
                        }
                    } else {
                        set(&mut reach, next, arc.to);
                    }
                }
            }
            let g = self.goal;
            at_goal[mask] = reach[mask * words + g / 64] & (1 << (g % 64)) != 0;
        }
        at_goal
    }

    /// Shortest walk (fewest arcs) that ends at the goal having collected
    /// exactly `target`. States are restricted to subsets of `target`.
    pub fn walk_collecting(&self, target: Mask) -> Option<Vec<Step>> {
        if self.start_mask & !target != 0 {
            return None;
        }
        // state -> (previous state, arc tag)
        type State = (usize, Mask);
        let mut prev: HashMap<State, Option<(State, usize)>> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = (self.start, self.start_mask);
        prev.insert(start, None);
        queue.push_back(start);
        while let Some(state) = queue.pop_front() {
            if state == (self.goal, target) {
                let mut steps = Vec::new();
                let mut at = state;
                while let Some(Some((from, tag))) = prev.get(&at) {
                    steps.push(Step { to: at.0, tag: *tag });
                    at = *from;
                }
                steps.reverse();
                return Some(steps);
            }
            for arc in &self.adj[state.0] {
                if arc.add & !target != 0 {
                    continue;
                }
                let next = (arc.to, state.1 | arc.add);
                if let hashbrown::hash_map::Entry::Vacant(v) = prev.entry(next) {
                    v.insert(Some((state, arc.tag)));
                    queue.push_back(next);
                }
            }
        }
        None
    }
}
