//! Planar arrangement of obstacle segments clipped to the rectangle.
//!
//! Sub-edges carry half-edges `2e` (`a -> b`) and `2e + 1` (`b -> a`). Faces
//! lie to the left of their half-edges, so bounded face boundaries run
//! counter-clockwise. Components that do not touch the rectangle boundary
//! (free-floating slits, isolated polygons) produce clockwise hole cycles which
//! are attached to their surrounding face by casting a ray to the left.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::geom::{
    cmp_direction, dist2_point_segment, orient, point_on_segment, segment_intersection, Intersection, Orientation,
    Point, Rational, Rect,
};

pub type ObstacleId = u32;

/// Map from obstacle id to its removal cost.
pub type Weights = BTreeMap<ObstacleId, u64>;

/// A weighted closed segment inside the rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Obstacle {
    pub id: ObstacleId,
    pub a: Point,
    pub b: Point,
    pub weight: u64,
}

impl Obstacle {
    pub fn new(id: ObstacleId, a: Point, b: Point, weight: u64) -> Self {
        Obstacle { id, a, b, weight }
    }

    /// Both endpoints on the rectangle boundary.
    pub fn is_chord(&self, rect: &Rect) -> bool {
        rect.on_boundary(&self.a) && rect.on_boundary(&self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    Origin,
    Goal,
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Terminal::Origin => "origin",
            Terminal::Goal => "goal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    ZeroId,
    DuplicateId(ObstacleId),
    ZeroWeight(ObstacleId),
    ZeroLength(ObstacleId),
    OutsideRect(ObstacleId),
    /// Two obstacles (or an obstacle and the boundary, reported as `None`)
    /// share a collinear piece of positive length.
    DegenerateOverlap(ObstacleId, Option<ObstacleId>),
    /// `o` or `g` is not strictly inside the rectangle, or lies on an obstacle.
    InvalidPlacement(Terminal),
    /// The queried point lies on a vertex or sub-edge.
    OnFeature,
    OutsideInterior,
}

impl fmt::Display for ArrangementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangementError::ZeroId => f.write_str("obstacle ids must be >= 1"),
            ArrangementError::DuplicateId(id) => write!(f, "duplicate obstacle id {id}"),
            ArrangementError::ZeroWeight(id) => write!(f, "obstacle {id} has zero weight"),
            ArrangementError::ZeroLength(id) => write!(f, "obstacle {id} has coincident endpoints"),
            ArrangementError::OutsideRect(id) => write!(f, "obstacle {id} leaves the rectangle"),
            ArrangementError::DegenerateOverlap(a, Some(b)) => {
                write!(f, "obstacles {a} and {b} overlap collinearly")
            }
            ArrangementError::DegenerateOverlap(a, None) => {
                write!(f, "obstacle {a} runs along the rectangle boundary")
            }
            ArrangementError::InvalidPlacement(t) => {
                write!(f, "{t} must lie strictly inside the rectangle and off every obstacle")
            }
            ArrangementError::OnFeature => f.write_str("point lies on an arrangement feature"),
            ArrangementError::OutsideInterior => f.write_str("point is not strictly inside the rectangle"),
        }
    }
}

impl core::error::Error for ArrangementError {}

/// Rectangle, obstacles and the two terminals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub rect: Rect,
    pub obstacles: Vec<Obstacle>,
    pub o: Point,
    pub g: Point,
}

impl Instance {
    /// Builds and validates an instance.
    pub fn new(rect: Rect, obstacles: Vec<Obstacle>, o: Point, g: Point) -> Result<Self, ArrangementError> {
        let inst = Instance { rect, obstacles, o, g };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), ArrangementError> {
        let mut seen = BTreeSet::new();
        for ob in &self.obstacles {
            if ob.id == 0 {
                return Err(ArrangementError::ZeroId);
            }
            if !seen.insert(ob.id) {
                return Err(ArrangementError::DuplicateId(ob.id));
            }
            if ob.weight == 0 {
                return Err(ArrangementError::ZeroWeight(ob.id));
            }
            if ob.a == ob.b {
                return Err(ArrangementError::ZeroLength(ob.id));
            }
            if !self.rect.contains(&ob.a) || !self.rect.contains(&ob.b) {
                return Err(ArrangementError::OutsideRect(ob.id));
            }
            for (s, t) in self.rect.sides() {
                if let Intersection::Overlap(..) = segment_intersection(&ob.a, &ob.b, &s, &t) {
                    return Err(ArrangementError::DegenerateOverlap(ob.id, None));
                }
            }
        }
        for (i, p) in self.obstacles.iter().enumerate() {
            for q in &self.obstacles[i + 1..] {
                if let Intersection::Overlap(..) = segment_intersection(&p.a, &p.b, &q.a, &q.b) {
                    return Err(ArrangementError::DegenerateOverlap(p.id, Some(q.id)));
                }
            }
        }
        for (t, p) in [(Terminal::Origin, &self.o), (Terminal::Goal, &self.g)] {
            if !self.rect.contains_strictly(p) || self.obstacles.iter().any(|ob| point_on_segment(p, &ob.a, &ob.b)) {
                return Err(ArrangementError::InvalidPlacement(t));
            }
        }
        Ok(())
    }

    pub fn weights(&self) -> Weights {
        self.obstacles.iter().map(|ob| (ob.id, ob.weight)).collect()
    }

    pub fn obstacle(&self, id: ObstacleId) -> Option<&Obstacle> {
        self.obstacles.iter().find(|ob| ob.id == id)
    }

    pub fn total_weight(&self) -> u64 {
        self.obstacles.iter().map(|ob| ob.weight).sum()
    }
}

/// A piece of an obstacle (or of the rectangle boundary when `label` is `None`)
/// between two consecutive arrangement vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubEdge {
    pub a: usize,
    pub b: usize,
    pub label: Option<ObstacleId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// A point strictly inside the face.
    pub witness: Point,
    /// Vertex indices of the counter-clockwise outer boundary.
    pub boundary: Vec<usize>,
    /// Clockwise boundaries of components floating inside the face.
    pub holes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct Cycle {
    half_edges: Vec<usize>,
    area2: Rational,
}

/// Exact arrangement: vertices, sub-edges, angular incidence and faces.
#[derive(Clone, Debug)]
pub struct Arrangement {
    rect: Rect,
    vertices: Vec<Point>,
    edges: Vec<SubEdge>,
    /// Outgoing half-edges per vertex, counter-clockwise from the +x axis.
    outgoing: Vec<Vec<usize>>,
    next: Vec<usize>,
    cycle_of: Vec<usize>,
    cycles: Vec<Cycle>,
    /// `None` for the unbounded outer face.
    face_of_cycle: Vec<Option<usize>>,
    faces: Vec<Face>,
    components: usize,
}

enum RayHit {
    Edge(usize),
    Vertex(usize),
}

/// Builds the arrangement of `inst` after validating it.
pub fn build_arrangement(inst: &Instance) -> Result<Arrangement, ArrangementError> {
    inst.validate()?;
    let mut segments: Vec<(Point, Point, Option<ObstacleId>)> =
        inst.rect.sides().into_iter().map(|(a, b)| (a, b, None)).collect();
    segments.extend(inst.obstacles.iter().map(|ob| (ob.a.clone(), ob.b.clone(), Some(ob.id))));

    let mut on_segment: Vec<Vec<Point>> = segments.iter().map(|(a, b, _)| vec![a.clone(), b.clone()]).collect();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (a, b, _) = &segments[i];
            let (c, d, _) = &segments[j];
            if let Intersection::Point(p) = segment_intersection(a, b, c, d) {
                on_segment[i].push(p.clone());
                on_segment[j].push(p);
            }
        }
    }

    let mut index: BTreeMap<Point, usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (pts, (_, _, label)) in on_segment.iter_mut().zip(&segments) {
        pts.sort();
        pts.dedup();
        let ids: Vec<usize> = pts
            .iter()
            .map(|p| {
                *index.entry(p.clone()).or_insert_with(|| {
                    vertices.push(p.clone());
                    vertices.len() - 1
                })
            })
            .collect();
        for w in ids.windows(2) {
            edges.push(SubEdge { a: w[0], b: w[1], label: *label });
        }
    }
    Ok(Arrangement::from_parts(inst.rect.clone(), vertices, edges))
}

impl Arrangement {
    fn from_parts(rect: Rect, vertices: Vec<Point>, edges: Vec<SubEdge>) -> Self {
        let mut arr = Arrangement {
            rect,
            vertices,
            edges,
            outgoing: Vec::new(),
            next: Vec::new(),
            cycle_of: Vec::new(),
            cycles: Vec::new(),
            face_of_cycle: Vec::new(),
            faces: Vec::new(),
            components: 0,
        };
        arr.sort_incidence();
        arr.trace_cycles();
        arr.count_components();
        arr.assign_faces();
        arr
    }

    pub fn rect(&self) -> &Rect {
        &self.rect
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn sub_edges(&self) -> &[SubEdge] {
        &self.edges
    }

    /// Interior faces; the outer face is not listed.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Outgoing half-edges at `v`, counter-clockwise.
    pub fn incidence(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn origin(&self, h: usize) -> usize {
        let e = &self.edges[h / 2];
        if h.is_multiple_of(2) {
            e.a
        } else {
            e.b
        }
    }

    pub fn dest(&self, h: usize) -> usize {
        self.origin(h ^ 1)
    }

    /// Interior face to the left of half-edge `h`, `None` for the outer face.
    pub fn face_left_of(&self, h: usize) -> Option<usize> {
        self.face_of_cycle[self.cycle_of[h]]
    }

    /// Interior faces on the two sides of sub-edge `e` (left of `a -> b` first).
    pub fn faces_of_sub_edge(&self, e: usize) -> (Option<usize>, Option<usize>) {
        (self.face_left_of(2 * e), self.face_left_of(2 * e + 1))
    }

    pub fn sub_edge_midpoint(&self, e: usize) -> Point {
        let se = &self.edges[e];
        self.vertices[se.a].midpoint(&self.vertices[se.b])
    }

    fn direction(&self, h: usize) -> (Rational, Rational) {
        let o = &self.vertices[self.origin(h)];
        let d = &self.vertices[self.dest(h)];
        (&d.x - &o.x, &d.y - &o.y)
    }

    fn sort_incidence(&mut self) {
        let mut outgoing = vec![Vec::new(); self.vertices.len()];
        for (e, se) in self.edges.iter().enumerate() {
            outgoing[se.a].push(2 * e);
            outgoing[se.b].push(2 * e + 1);
        }
        for list in &mut outgoing {
            let mut keyed: Vec<(usize, (Rational, Rational))> = list.iter().map(|&h| (h, self.direction(h))).collect();
            keyed.sort_by(|(_, (ax, ay)), (_, (bx, by))| cmp_direction(ax, ay, bx, by));
            *list = keyed.into_iter().map(|(h, _)| h).collect();
        }
        let mut position = vec![0; self.edges.len() * 2];
        for list in &outgoing {
            for (i, &h) in list.iter().enumerate() {
                position[h] = i;
            }
        }
        // next(h) = clockwise neighbour of twin(h) around dest(h)
        let mut next = vec![0; self.edges.len() * 2];
        for (h, slot) in next.iter_mut().enumerate() {
            let twin = h ^ 1;
            let around = &outgoing[self.origin(twin)];
            let i = position[twin];
            *slot = around[(i + around.len() - 1) % around.len()];
        }
        self.outgoing = outgoing;
        self.next = next;
    }

    fn trace_cycles(&mut self) {
        let n = self.next.len();
        let mut cycle_of = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let mut half_edges = Vec::new();
            let mut area2 = Rational::zero();
            let mut h = start;
            loop {
                cycle_of[h] = cycles.len();
                half_edges.push(h);
                let p = &self.vertices[self.origin(h)];
                let q = &self.vertices[self.dest(h)];
                area2 = area2 + (&p.x * &q.y - &q.x * &p.y);
                h = self.next[h];
                if h == start {
                    break;
                }
            }
            cycles.push(Cycle { half_edges, area2 });
        }
        self.cycle_of = cycle_of;
        self.cycles = cycles;
    }

    fn count_components(&mut self) {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for se in &self.edges {
            let (ra, rb) = (find(&mut parent, se.a), find(&mut parent, se.b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        self.components = (0..self.vertices.len()).filter(|&v| find(&mut parent, v) == v).count();
    }

    fn outer_cycle(&self) -> usize {
        // boundary half-edge leaving (xmin, ymin) upwards has the outside on its left
        let corner = Point::new(self.rect.xmin.clone(), self.rect.ymin.clone());
        let h = (0..self.next.len())
            .find(|&h| {
                self.edges[h / 2].label.is_none()
                    && self.vertices[self.origin(h)] == corner
                    && self.vertices[self.dest(h)].x == self.rect.xmin
            })
            .expect("rectangle boundary is always present");
        self.cycle_of[h]
    }

    fn assign_faces(&mut self) {
        let outer = self.outer_cycle();
        let mut face_of_cycle: Vec<Option<usize>> = vec![None; self.cycles.len()];
        let mut faces = Vec::new();
        for (c, cycle) in self.cycles.iter().enumerate() {
            if c != outer && cycle.area2.signum() == Ordering::Greater {
                face_of_cycle[c] = Some(faces.len());
                faces.push(Face {
                    id: faces.len(),
                    witness: Point::default(),
                    boundary: cycle.half_edges.iter().map(|&h| self.origin(h)).collect(),
                    holes: Vec::new(),
                });
            }
        }
        self.face_of_cycle = face_of_cycle;

        // holes: resolve in order of their leftmost vertex so that any hole a
        // ray lands on further left is already attached
        let mut holes: Vec<(Point, usize)> = self
            .cycles
            .iter()
            .enumerate()
            .filter(|(c, cycle)| *c != outer && cycle.area2.signum() != Ordering::Greater)
            .map(|(c, cycle)| {
                let leftmost = cycle.half_edges.iter().map(|&h| &self.vertices[self.origin(h)]).min().unwrap();
                (leftmost.clone(), c)
            })
            .collect();
        holes.sort();
        for (p, c) in holes {
            let h = self.ray_half_edge(&p).expect("the left rectangle side is always hit");
            let f = self.face_of_cycle[self.cycle_of[h]].expect("holes lie inside the rectangle");
            self.face_of_cycle[c] = Some(f);
            let boundary = self.cycles[c].half_edges.iter().map(|&h| self.origin(h)).collect();
            faces[f].holes.push(boundary);
        }
        self.faces = faces;

        for f in 0..self.faces.len() {
            let w = self.find_witness(f);
            self.faces[f].witness = w;
        }
    }

    /// Nearest feature hit by the open ray from `p` towards `-x`.
    fn ray_hit(&self, p: &Point) -> Option<RayHit> {
        let mut best: Option<(Rational, RayHit)> = None;
        let mut offer = |x: Rational, hit: RayHit| {
            if best.as_ref().is_none_or(|(bx, _)| x > *bx) {
                best = Some((x, hit));
            }
        };
        for (e, se) in self.edges.iter().enumerate() {
            let a = &self.vertices[se.a];
            let b = &self.vertices[se.b];
            if a.y == b.y {
                if a.y == p.y {
                    let (v, far) = if a.x >= b.x { (se.a, a) } else { (se.b, b) };
                    if far.x < p.x {
                        offer(far.x.clone(), RayHit::Vertex(v));
                    }
                }
                continue;
            }
            let (lo, hi) = if a.y < b.y { (a, b) } else { (b, a) };
            if p.y < lo.y || p.y > hi.y {
                continue;
            }
            if p.y == a.y {
                if a.x < p.x {
                    offer(a.x.clone(), RayHit::Vertex(se.a));
                }
                continue;
            }
            if p.y == b.y {
                if b.x < p.x {
                    offer(b.x.clone(), RayHit::Vertex(se.b));
                }
                continue;
            }
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if x < p.x {
                offer(x, RayHit::Edge(e));
            }
        }
        best.map(|(_, hit)| hit)
    }

    /// Half-edge whose left side contains the points just left of `p`.
    fn ray_half_edge(&self, p: &Point) -> Option<usize> {
        Some(match self.ray_hit(p)? {
            RayHit::Edge(e) => {
                let se = &self.edges[e];
                if orient(&self.vertices[se.a], &self.vertices[se.b], p) == Orientation::Left {
                    2 * e
                } else {
                    2 * e + 1
                }
            }
            // the wedge containing direction +x lies left of the last outgoing half-edge
            RayHit::Vertex(v) => *self.outgoing[v].last()?,
        })
    }

    fn on_feature(&self, p: &Point) -> bool {
        self.edges.iter().any(|se| point_on_segment(p, &self.vertices[se.a], &self.vertices[se.b]))
    }

    /// Interior face containing `p`.
    pub fn locate_point(&self, p: &Point) -> Result<usize, ArrangementError> {
        if !self.rect.contains_strictly(p) {
            return Err(ArrangementError::OutsideInterior);
        }
        if self.on_feature(p) {
            return Err(ArrangementError::OnFeature);
        }
        let h = self.ray_half_edge(p).ok_or(ArrangementError::OutsideInterior)?;
        self.face_left_of(h).ok_or(ArrangementError::OutsideInterior)
    }

    fn find_witness(&self, f: usize) -> Point {
        let c = self.face_of_cycle.iter().position(|x| *x == Some(f)).unwrap();
        let h = self.cycles[c].half_edges[0];
        let a = &self.vertices[self.origin(h)];
        let b = &self.vertices[self.dest(h)];
        let m = a.midpoint(b);
        let (nx, ny) = (&a.y - &b.y, &b.x - &a.x);
        let mut delta = Rational::new(1, 2);
        loop {
            let q = Point::new(&m.x + &delta * &nx, &m.y + &delta * &ny);
            if self.locate_point(&q) == Ok(f) {
                return q;
            }
            delta = delta.half();
        }
    }

    /// `V - E + F`, counting the outer face.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64 + 1
    }

    /// Whether the sub-edges labelled `id` chain exactly from `a` to `b`.
    pub fn reconstructs(&self, ob: &Obstacle) -> bool {
        let mut pieces: Vec<(&Point, &Point)> = self
            .edges
            .iter()
            .filter(|se| se.label == Some(ob.id))
            .map(|se| {
                let (p, q) = (&self.vertices[se.a], &self.vertices[se.b]);
                if p <= q {
                    (p, q)
                } else {
                    (q, p)
                }
            })
            .collect();
        pieces.sort();
        let (lo, hi) = if ob.a <= ob.b { (&ob.a, &ob.b) } else { (&ob.b, &ob.a) };
        if pieces.is_empty() || pieces[0].0 != lo || pieces[pieces.len() - 1].1 != hi {
            return false;
        }
        pieces.windows(2).all(|w| w[0].1 == w[1].0)
            && pieces.iter().all(|(p, q)| {
                orient(lo, hi, p) == Orientation::Collinear && orient(lo, hi, q) == Orientation::Collinear
            })
    }

    /// Smallest squared distance between a vertex and a sub-edge not incident to it.
    pub fn min_feature_separation(&self) -> Rational {
        let mut best: Option<Rational> = None;
        for (v, p) in self.vertices.iter().enumerate() {
            for se in &self.edges {
                if se.a == v || se.b == v {
                    continue;
                }
                let d = dist2_point_segment(p, &self.vertices[se.a], &self.vertices[se.b]);
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        }
        best.unwrap_or_else(Rational::zero)
    }
}

/// Adjacency between two distinct faces across one obstacle sub-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionEdge {
    pub u: usize,
    pub v: usize,
    pub label: ObstacleId,
    pub sub_edge: usize,
}

/// Obstacle sub-edge with the same face on both sides (a slit piece).
/// Crossing it keeps the walk in `face` but still collides with `label`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionLoop {
    pub face: usize,
    pub label: ObstacleId,
    pub sub_edge: usize,
}

/// Faces as vertices, obstacle sub-edges as labelled adjacencies.
#[derive(Clone, Debug)]
pub struct RegionGraph {
    pub arrangement: Arrangement,
    pub edges: Vec<RegionEdge>,
    pub loops: Vec<RegionLoop>,
    pub o_face: usize,
    pub g_face: usize,
}

impl RegionGraph {
    pub fn face_count(&self) -> usize {
        self.arrangement.faces().len()
    }

    /// Distinct labels that can be crossed, ascending.
    pub fn labels(&self) -> Vec<ObstacleId> {
        let set: BTreeSet<ObstacleId> =
            self.edges.iter().map(|e| e.label).chain(self.loops.iter().map(|l| l.label)).collect();
        set.into_iter().collect()
    }

    /// Faces on the two sides of sub-edge `e`, if it is a crossable obstacle piece.
    pub fn sides_of(&self, e: usize) -> Option<(usize, usize)> {
        let se = self.arrangement.sub_edges().get(e)?;
        se.label?;
        match self.arrangement.faces_of_sub_edge(e) {
            (Some(l), Some(r)) => Some((l, r)),
            _ => None,
        }
    }
}

pub fn region_graph(inst: &Instance) -> Result<RegionGraph, ArrangementError> {
    let arrangement = build_arrangement(inst)?;
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for (e, se) in arrangement.sub_edges().iter().enumerate() {
        let Some(label) = se.label else { continue };
        let (Some(l), Some(r)) = arrangement.faces_of_sub_edge(e) else {
            continue;
        };
        if l == r {
            loops.push(RegionLoop { face: l, label, sub_edge: e });
        } else {
            edges.push(RegionEdge { u: l.min(r), v: l.max(r), label, sub_edge: e });
        }
    }
    let o_face = arrangement.locate_point(&inst.o).map_err(|_| ArrangementError::InvalidPlacement(Terminal::Origin))?;
    let g_face = arrangement.locate_point(&inst.g).map_err(|_| ArrangementError::InvalidPlacement(Terminal::Goal))?;
    Ok(RegionGraph { arrangement, edges, loops, o_face, g_face })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn square() -> Rect {
        Rect::from_ints(0, 0, 10, 10).unwrap()
    }

    fn inst(obstacles: Vec<Obstacle>, o: Point, g: Point) -> Instance {
        Instance::new(square(), obstacles, o, g).unwrap()
    }

    fn seg(id: u32, a: (i64, i64), b: (i64, i64), w: u64) -> Obstacle {
        Obstacle::new(id, p(a.0, a.1), p(b.0, b.1), w)
    }

    #[test]
    fn chord_splits_in_two() {
        let i = inst(vec![seg(1, (0, 5), (10, 5), 5)], p(5, 2), p(5, 8));
        let arr = build_arrangement(&i).unwrap();
        assert_eq!(arr.faces().len(), 2);
        assert_eq!(arr.euler_characteristic(), 2);
        let rg = region_graph(&i).unwrap();
        assert_eq!(rg.edges.len(), 1);
        assert_eq!(rg.edges[0].label, 1);
        assert_ne!(rg.o_face, rg.g_face);
        assert_eq!(rg.arrangement.locate_point(&p(5, 2)), Ok(rg.o_face));
        assert_eq!(rg.arrangement.locate_point(&p(5, 8)), Ok(rg.g_face));
    }

    #[test]
    fn plus_sign() {
        let i = inst(vec![seg(1, (5, 0), (5, 10), 1), seg(2, (0, 5), (10, 5), 1)], p(2, 2), p(8, 8));
        let rg = region_graph(&i).unwrap();
        let arr = &rg.arrangement;
        assert_eq!(arr.faces().len(), 4);
        let centre = arr.vertices().iter().position(|v| *v == p(5, 5)).unwrap();
        assert_eq!(arr.incidence(centre).len(), 4);
        assert_eq!(rg.edges.len(), 4);
        let mut degree = [0; 4];
        for e in &rg.edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        assert_eq!(degree, [2; 4]);
        // around the cycle the labels alternate
        let labels_at = |f: usize| -> Vec<u32> {
            let mut ls: Vec<u32> = rg.edges.iter().filter(|e| e.u == f || e.v == f).map(|e| e.label).collect();
            ls.sort();
            ls
        };
        for f in 0..4 {
            assert_eq!(labels_at(f), [1, 2]);
        }
    }

    #[test]
    fn slit_does_not_disconnect() {
        let i = inst(vec![seg(1, (2, 5), (8, 5), 4)], p(5, 2), p(5, 8));
        let rg = region_graph(&i).unwrap();
        assert_eq!(rg.face_count(), 1);
        assert_eq!(rg.o_face, rg.g_face);
        assert!(rg.edges.is_empty());
        assert_eq!(rg.loops.len(), 1);
        assert_eq!(rg.arrangement.faces()[0].holes.len(), 1);
        // two components: rectangle and the free slit
        assert_eq!(rg.arrangement.components(), 2);
        assert_eq!(rg.arrangement.euler_characteristic(), 3);
    }

    #[test]
    fn empty_instance() {
        let i = inst(vec![], p(1, 1), p(9, 9));
        let rg = region_graph(&i).unwrap();
        assert_eq!(rg.face_count(), 1);
        assert_eq!(rg.arrangement.locate_point(&p(1, 1)), Ok(0));
        assert_eq!(rg.arrangement.euler_characteristic(), 2);
    }

    #[test]
    fn nested_floating_components() {
        // square ring floating inside, with a slit floating inside the ring
        let ring = vec![
            seg(1, (2, 2), (8, 2), 1),
            seg(2, (8, 2), (8, 8), 1),
            seg(3, (8, 8), (2, 8), 1),
            seg(4, (2, 8), (2, 2), 1),
            seg(5, (4, 5), (6, 5), 1),
        ];
        let i = inst(ring, p(1, 1), p(5, 3));
        let rg = region_graph(&i).unwrap();
        assert_eq!(rg.face_count(), 2);
        assert_ne!(rg.o_face, rg.g_face);
        let arr = &rg.arrangement;
        assert_eq!(arr.components(), 3);
        assert_eq!(arr.euler_characteristic(), 1 + 3);
        assert_eq!(arr.locate_point(&p(5, 7)), Ok(rg.g_face));
        assert_eq!(arr.locate_point(&p(9, 5)), Ok(rg.o_face));
        for f in arr.faces() {
            assert_eq!(arr.locate_point(&f.witness), Ok(f.id));
        }
        assert_eq!(rg.loops.len(), 1);
        assert_eq!(rg.loops[0].face, rg.g_face);
    }

    #[test]
    fn t_junctions_and_concurrency() {
        let obs = vec![
            seg(1, (5, 0), (5, 10), 1),
            seg(2, (0, 5), (5, 5), 1),
            seg(3, (0, 0), (10, 10), 1),
            seg(4, (5, 5), (9, 2), 1),
        ];
        let i = inst(obs.clone(), p(1, 4), p(9, 8));
        let rg = region_graph(&i).unwrap();
        let arr = &rg.arrangement;
        assert_eq!(arr.euler_characteristic(), 2);
        for ob in &obs {
            assert!(arr.reconstructs(ob));
        }
        let centre = arr.vertices().iter().position(|v| *v == p(5, 5)).unwrap();
        assert_eq!(arr.incidence(centre).len(), 6);
        for f in arr.faces() {
            assert_eq!(arr.locate_point(&f.witness), Ok(f.id));
        }
    }

    #[test]
    fn locate_rejects_features() {
        let i = inst(vec![seg(1, (0, 5), (10, 5), 5)], p(5, 2), p(5, 8));
        let arr = build_arrangement(&i).unwrap();
        assert_eq!(arr.locate_point(&p(3, 5)), Err(ArrangementError::OnFeature));
        assert_eq!(arr.locate_point(&p(0, 3)), Err(ArrangementError::OutsideInterior));
    }

    #[test]
    fn validation_errors() {
        let r = square();
        let overlap = vec![seg(1, (0, 0), (5, 5), 1), seg(2, (3, 3), (8, 8), 1)];
        assert_eq!(
            Instance::new(r.clone(), overlap, p(1, 8), p(8, 1)),
            Err(ArrangementError::DegenerateOverlap(1, Some(2)))
        );
        let along = vec![seg(1, (0, 0), (5, 0), 1)];
        assert_eq!(
            Instance::new(r.clone(), along, p(1, 8), p(8, 1)),
            Err(ArrangementError::DegenerateOverlap(1, None))
        );
        let dup = vec![seg(1, (1, 1), (2, 2), 1), seg(1, (3, 1), (4, 2), 1)];
        assert_eq!(Instance::new(r.clone(), dup, p(1, 8), p(8, 1)), Err(ArrangementError::DuplicateId(1)));
        let on = vec![seg(1, (0, 5), (10, 5), 1)];
        assert_eq!(
            Instance::new(r.clone(), on, p(3, 5), p(8, 1)),
            Err(ArrangementError::InvalidPlacement(Terminal::Origin))
        );
        assert_eq!(
            Instance::new(r.clone(), vec![], p(1, 1), p(10, 1)),
            Err(ArrangementError::InvalidPlacement(Terminal::Goal))
        );
        assert_eq!(
            Instance::new(r, vec![seg(1, (1, 1), (11, 1), 1)], p(1, 8), p(8, 1)),
            Err(ArrangementError::OutsideRect(1))
        );
    }

    #[test]
    fn separation() {
        let i = inst(vec![seg(1, (4, 0), (4, 10), 1), seg(2, (6, 0), (6, 10), 1)], p(1, 1), p(9, 9));
        let arr = build_arrangement(&i).unwrap();
        assert_eq!(arr.min_feature_separation(), Rational::from_int(4));
        let i = inst(vec![seg(1, (1, 3), (1, 7), 1)], p(5, 5), p(9, 9));
        let arr = build_arrangement(&i).unwrap();
        assert_eq!(arr.min_feature_separation(), Rational::from_int(1));
    }
}
