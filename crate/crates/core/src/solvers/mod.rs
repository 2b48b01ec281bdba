//! Minimum constraint removal solvers over region graphs.
//!
//! All solvers reduce to a search over `(face, removed set)` states, see
//! [`search`]. Results carry a witness walk: the faces visited and the
//! obstacle sub-edge crossed between consecutive faces.

pub(crate) mod search;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::arrangement::{region_graph, ArrangementError, Instance, ObstacleId, RegionGraph, Weights};
use crate::geom::{segment_intersection, side_of_line, Intersection, Point, Side};

use search::{lex_cmp, Mask, SearchGraph, Step};

/// Default limit on distinct crossable labels for the exponential solvers.
pub const DEFAULT_MAX_LABELS: usize = 20;

/// Label limit for [`solve_bruteforce`], which enumerates every subset.
pub const BRUTE_FORCE_MAX_LABELS: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    TooManyLabels {
        found: usize,
        limit: usize,
    },
    MissingWeight(ObstacleId),
    NotLinesOnly(ObstacleId),
    Unreachable,
    /// A cover graph refers to vertices that do not exist.
    InvalidGraph,
    Arrangement(ArrangementError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::TooManyLabels { found, limit } => {
                write!(f, "{found} distinct crossable obstacles exceed the limit of {limit}")
            }
            SolveError::MissingWeight(id) => write!(f, "no weight for obstacle {id}"),
            SolveError::NotLinesOnly(id) => write!(f, "obstacle {id} is not a chord of the rectangle"),
            SolveError::Unreachable => f.write_str("goal unreachable even with every obstacle removed"),
            SolveError::InvalidGraph => f.write_str("cover graph refers to missing vertices"),
            SolveError::Arrangement(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SolveError {}

impl From<ArrangementError> for SolveError {
    fn from(e: ArrangementError) -> Self {
        SolveError::Arrangement(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub sub_edge: usize,
    pub label: ObstacleId,
}

/// Alternating face / crossing sequence from `o_face` to `g_face`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Walk {
    pub faces: Vec<usize>,
    pub crossings: Vec<Crossing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolveResult {
    /// Removed obstacle ids, ascending.
    pub removed: Vec<ObstacleId>,
    pub weight: u64,
    pub witness: Walk,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactWeight {
    Yes(SolveResult),
    No,
}

impl ExactWeight {
    pub fn is_yes(&self) -> bool {
        matches!(self, ExactWeight::Yes(_))
    }
}

/// Number of witness crossings labelled `id`.
pub fn count_crossings(res: &SolveResult, id: ObstacleId) -> usize {
    res.witness.crossings.iter().filter(|c| c.label == id).count()
}

pub(crate) fn search_graph(rg: &RegionGraph, weights: &Weights) -> Result<SearchGraph, SolveError> {
    let mut g = SearchGraph::new(rg.face_count(), rg.o_face, rg.g_face, rg.labels(), weights)?;
    for e in &rg.edges {
        let add = g.bit(e.label);
        g.adj[e.u].push(search::Arc { to: e.v, add, tag: e.sub_edge });
        g.adj[e.v].push(search::Arc { to: e.u, add, tag: e.sub_edge });
    }
    for l in &rg.loops {
        let add = g.bit(l.label);
        g.adj[l.face].push(search::Arc { to: l.face, add, tag: l.sub_edge });
    }
    Ok(g)
}

fn guard(g: &SearchGraph, limit: usize) -> Result<(), SolveError> {
    if g.labels.len() > limit {
        return Err(SolveError::TooManyLabels { found: g.labels.len(), limit });
    }
    Ok(())
}

fn walk(rg: &RegionGraph, steps: &[Step]) -> Walk {
    let subs = rg.arrangement.sub_edges();
    let mut faces = Vec::with_capacity(steps.len() + 1);
    faces.push(rg.o_face);
    let crossings = steps
        .iter()
        .map(|s| {
            faces.push(s.to);
            Crossing { sub_edge: s.tag, label: subs[s.tag].label.expect("only obstacle pieces are crossed") }
        })
        .collect();
    Walk { faces, crossings }
}

fn result(rg: &RegionGraph, g: &SearchGraph, mask: Mask, steps: &[Step]) -> SolveResult {
    SolveResult { removed: g.ids(mask), weight: g.weight(mask), witness: walk(rg, steps) }
}

/// Solver configuration; the free functions use the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solver {
    pub max_labels: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver { max_labels: DEFAULT_MAX_LABELS }
    }
}

impl Solver {
    pub fn with_max_labels(max_labels: usize) -> Self {
        Solver { max_labels }
    }

    pub fn solve_min(&self, rg: &RegionGraph, weights: &Weights) -> Result<SolveResult, SolveError> {
        let g = search_graph(rg, weights)?;
        guard(&g, self.max_labels)?;
        let found = g.best_first(true).ok_or(SolveError::Unreachable)?;
        Ok(result(rg, &g, found.mask, &found.steps))
    }

    pub fn solve_bruteforce(&self, rg: &RegionGraph, weights: &Weights) -> Result<SolveResult, SolveError> {
        let g = search_graph(rg, weights)?;
        guard(&g, self.max_labels.min(BRUTE_FORCE_MAX_LABELS))?;
        let found = g.brute_force().ok_or(SolveError::Unreachable)?;
        Ok(result(rg, &g, found.mask, &found.steps))
    }

    pub fn achievable_sets(&self, rg: &RegionGraph) -> Result<AchievableSets, SolveError> {
        // weights are irrelevant for reachability
        let unit: Weights = rg.labels().into_iter().map(|id| (id, 1)).collect();
        let g = search_graph(rg, &unit)?;
        guard(&g, self.max_labels)?;
        let reachable = g.reachable_masks();
        Ok(AchievableSets { labels: g.labels.clone(), reachable })
    }

    pub fn solve_exact_weight(&self, rg: &RegionGraph, weights: &Weights, k: u64) -> Result<ExactWeight, SolveError> {
        let g = search_graph(rg, weights)?;
        guard(&g, self.max_labels)?;
        let reachable = g.reachable_masks();
        let best = (0..reachable.len() as u64)
            .filter(|&m| reachable[m as usize] && g.weight(m) == k)
            .min_by(|&a, &b| lex_cmp(a, b));
        let Some(mask) = best else {
            return Ok(ExactWeight::No);
        };
        let steps = g.walk_collecting(mask).expect("reachable set has a walk");
        Ok(ExactWeight::Yes(result(rg, &g, mask, &steps)))
    }
}

/// Minimum-weight removal set, ties broken by the lexicographically smallest
/// sorted id sequence.
pub fn solve_min(rg: &RegionGraph, weights: &Weights) -> Result<SolveResult, SolveError> {
    Solver::default().solve_min(rg, weights)
}

/// Exhaustive subset enumeration; the testing oracle for [`solve_min`].
pub fn solve_bruteforce(rg: &RegionGraph, weights: &Weights) -> Result<SolveResult, SolveError> {
    Solver::default().solve_bruteforce(rg, weights)
}

pub fn achievable_sets(rg: &RegionGraph, max_labels: usize) -> Result<AchievableSets, SolveError> {
    Solver::with_max_labels(max_labels).achievable_sets(rg)
}

/// Decides whether some walk collides with obstacles of total weight exactly `k`.
pub fn solve_exact_weight(rg: &RegionGraph, weights: &Weights, k: u64) -> Result<ExactWeight, SolveError> {
    Solver::default().solve_exact_weight(rg, weights, k)
}

/// Baseline heuristic: best-first where every face keeps only the first
/// (cheapest) label set that reaches it. Never better than [`solve_min`].
pub fn solve_greedy(rg: &RegionGraph, weights: &Weights) -> Result<SolveResult, SolveError> {
    let g = search_graph(rg, weights)?;
    let found = g.best_first(false).ok_or(SolveError::Unreachable)?;
    Ok(result(rg, &g, found.mask, &found.steps))
}

/// Every collision set realised by some walk from `o_face` to `g_face`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AchievableSets {
    labels: Vec<ObstacleId>,
    reachable: Vec<bool>,
}

impl AchievableSets {
    pub fn labels(&self) -> &[ObstacleId] {
        &self.labels
    }

    fn mask_of(&self, ids: &[ObstacleId]) -> Option<usize> {
        ids.iter().try_fold(0usize, |m, id| self.labels.binary_search(id).ok().map(|i| m | (1 << i)))
    }

    fn ids(&self, mut mask: usize) -> Vec<ObstacleId> {
        let mut out = Vec::new();
        while mask != 0 {
            out.push(self.labels[mask.trailing_zeros() as usize]);
            mask &= mask - 1;
        }
        out
    }

    /// Whether exactly the obstacles `ids` can be the collision set of a walk.
    pub fn contains(&self, ids: &[ObstacleId]) -> bool {
        self.mask_of(ids).is_some_and(|m| self.reachable[m])
    }

    /// All achievable sets as sorted id lists, in increasing mask order.
    pub fn sets(&self) -> Vec<Vec<ObstacleId>> {
        (0..self.reachable.len()).filter(|&m| self.reachable[m]).map(|m| self.ids(m)).collect()
    }

    pub fn len(&self) -> usize {
        self.reachable.iter().filter(|&&r| r).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Distinct total weights of the achievable sets.
    pub fn weights(&self, weights: &Weights) -> Result<BTreeSet<u64>, SolveError> {
        let costs = self
            .labels
            .iter()
            .map(|id| weights.get(id).copied().ok_or(SolveError::MissingWeight(*id)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self
            .sets_masks()
            .map(|mut m| {
                let mut w = 0;
                while m != 0 {
                    w += costs[m.trailing_zeros() as usize];
                    m &= m - 1;
                }
                w
            })
            .collect())
    }

    fn sets_masks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.reachable.len()).filter(|&m| self.reachable[m])
    }

    /// A fewest-crossings walk realising exactly `ids`, if achievable.
    pub fn witness(&self, rg: &RegionGraph, ids: &[ObstacleId]) -> Option<Walk> {
        if !self.contains(ids) {
            return None;
        }
        let unit: Weights = self.labels.iter().map(|&id| (id, 1)).collect();
        let g = search_graph(rg, &unit).ok()?;
        let mask = g.mask_of(ids)?;
        g.walk_collecting(mask).map(|steps| walk(rg, &steps))
    }
}

/// Outcome of [`solve_lines_only`], with the number of side tests performed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinesOnly {
    pub result: SolveResult,
    pub side_tests: usize,
}

/// Linear-time decision for chord-only instances: remove exactly the chords
/// with `o` and `g` strictly on opposite sides.
///
/// The witness follows the straight segment `o -> g`; if that segment passes
/// through an arrangement vertex the witness falls back to a breadth-first
/// walk over the removed chords.
pub fn solve_lines_only(inst: &Instance) -> Result<LinesOnly, SolveError> {
    inst.validate()?;
    if let Some(ob) = inst.obstacles.iter().find(|ob| !ob.is_chord(&inst.rect)) {
        return Err(SolveError::NotLinesOnly(ob.id));
    }
    let mut side_tests = 0;
    let mut removed = Vec::new();
    let mut weight = 0;
    for ob in &inst.obstacles {
        let so = side_of_line(&inst.o, &ob.a, &ob.b);
        let sg = side_of_line(&inst.g, &ob.a, &ob.b);
        side_tests += 2;
        if so != sg && so != Side::On && sg != Side::On {
            removed.push(ob.id);
            weight += ob.weight;
        }
    }
    removed.sort_unstable();

    let rg = region_graph(inst)?;
    let witness = match straight_walk(&rg, &inst.o, &inst.g) {
        Some(w) => w,
        None => {
            let g = search_graph(&rg, &inst.weights())?;
            let allowed = g.mask_of(&removed).unwrap_or(0);
            let steps = g.bfs_within(allowed).ok_or(SolveError::Unreachable)?;
            walk(&rg, &steps)
        }
    };
    Ok(LinesOnly { result: SolveResult { removed, weight, witness }, side_tests })
}

/// Faces and crossings met by the straight segment `o -> g`, or `None` if it
/// touches a vertex or runs along an obstacle.
fn straight_walk(rg: &RegionGraph, o: &Point, g: &Point) -> Option<Walk> {
    let arr = &rg.arrangement;
    let verts = arr.vertices();
    let mut hits = Vec::new();
    for (e, se) in arr.sub_edges().iter().enumerate() {
        let Some(label) = se.label else { continue };
        let (a, b) = (&verts[se.a], &verts[se.b]);
        match segment_intersection(o, g, a, b) {
            Intersection::None => {}
            Intersection::Overlap(..) => return None,
            Intersection::Point(p) => {
                if p == *a || p == *b {
                    return None;
                }
                hits.push((o.dist2(&p), e, label));
            }
        }
    }
    hits.sort_by(|x, y| x.0.cmp(&y.0));
    if hits.windows(2).any(|w| w[0].0 == w[1].0) {
        return None;
    }
    let mut faces = alloc::vec![rg.o_face];
    let mut crossings = Vec::new();
    for (_, e, label) in hits {
        let (l, r) = arr.faces_of_sub_edge(e);
        let (l, r) = (l?, r?);
        let here = *faces.last().unwrap();
        let next = if here == l {
            r
        } else if here == r {
            l
        } else {
            return None;
        };
        faces.push(next);
        crossings.push(Crossing { sub_edge: e, label });
    }
    (*faces.last().unwrap() == rg.g_face).then_some(Walk { faces, crossings })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    WrongStart,
    WrongEnd,
    LengthMismatch,
    NotAdjacent(usize),
    WrongLabel(usize),
    RemovedMismatch,
    WeightMismatch { claimed: u64, actual: u64 },
    MissingWeight(ObstacleId),
}

impl fmt::Display for WitnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessError::WrongStart => f.write_str("witness does not start in the origin face"),
            WitnessError::WrongEnd => f.write_str("witness does not end in the goal face"),
            WitnessError::LengthMismatch => f.write_str("witness needs exactly one more face than crossings"),
            WitnessError::NotAdjacent(i) => write!(f, "crossing {i} does not separate its neighbouring faces"),
            WitnessError::WrongLabel(i) => write!(f, "crossing {i} names the wrong obstacle"),
            WitnessError::RemovedMismatch => f.write_str("removed set differs from the labels crossed"),
            WitnessError::WeightMismatch { claimed, actual } => {
                write!(f, "claimed weight {claimed} but removed obstacles weigh {actual}")
            }
            WitnessError::MissingWeight(id) => write!(f, "no weight for obstacle {id}"),
        }
    }
}

impl core::error::Error for WitnessError {}

/// Machine check of a [`SolveResult`] against its region graph.
pub fn check_witness(rg: &RegionGraph, weights: &Weights, res: &SolveResult) -> Result<(), WitnessError> {
    let w = &res.witness;
    if w.faces.len() != w.crossings.len() + 1 {
        return Err(WitnessError::LengthMismatch);
    }
    if w.faces[0] != rg.o_face {
        return Err(WitnessError::WrongStart);
    }
    if *w.faces.last().unwrap() != rg.g_face {
        return Err(WitnessError::WrongEnd);
    }
    let subs = rg.arrangement.sub_edges();
    for (i, c) in w.crossings.iter().enumerate() {
        let Some((l, r)) = rg.sides_of(c.sub_edge) else {
            return Err(WitnessError::NotAdjacent(i));
        };
        let (u, v) = (w.faces[i], w.faces[i + 1]);
        if !((u == l && v == r) || (u == r && v == l)) {
            return Err(WitnessError::NotAdjacent(i));
        }
        if subs[c.sub_edge].label != Some(c.label) {
            return Err(WitnessError::WrongLabel(i));
        }
    }
    let crossed: BTreeSet<ObstacleId> = w.crossings.iter().map(|c| c.label).collect();
    let removed: BTreeSet<ObstacleId> = res.removed.iter().copied().collect();
    if crossed != removed || removed.len() != res.removed.len() {
        return Err(WitnessError::RemovedMismatch);
    }
    let mut actual = 0;
    for id in &removed {
        actual += weights.get(id).ok_or(WitnessError::MissingWeight(*id))?;
    }
    if actual != res.weight {
        return Err(WitnessError::WeightMismatch { claimed: res.weight, actual });
    }
    Ok(())
}

#[cfg(test)]
mod tests;
