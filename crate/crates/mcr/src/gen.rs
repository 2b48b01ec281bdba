//! Seeded random instances on an integer grid.
//!
//! ChaCha8 and integer-only sampling make `(params, seed)` reproduce the same
//! instance on every platform. Degenerate candidates (zero length, collinear
//! overlaps, obstacles along the boundary, terminals on obstacles, and for
//! [`Kind::IncidenceFree`] any touching) are rejected and resampled.

use mcr_core::arrangement::{Instance, Obstacle};
use mcr_core::geom::{segment_intersection, Intersection, Point, Rational, Rect};
use mcr_core::reductions::check_incidence_free;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Free segments with an occasional chord.
    Mixed,
    /// Boundary-to-boundary segments only.
    Chords,
    /// Obstacles meet only in proper crossings; no endpoint in a corner.
    IncidenceFree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenParams {
    pub obstacles: usize,
    pub kind: Kind,
    pub max_weight: u64,
    /// Side length of the square rectangle.
    pub size: i64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { obstacles: 5, kind: Kind::Mixed, max_weight: 5, size: 10 }
    }
}

const ATTEMPTS: usize = 1000;

fn boundary_point(rng: &mut ChaCha8Rng, side: u8, size: i64) -> Point {
    let t = rng.gen_range(0..=size);
    match side {
        0 => Point::from_ints(t, 0),
        1 => Point::from_ints(size, t),
        2 => Point::from_ints(t, size),
        _ => Point::from_ints(0, t),
    }
}

fn chord(rng: &mut ChaCha8Rng, size: i64) -> (Point, Point) {
    let s1 = rng.gen_range(0..4u8);
    let s2 = (s1 + rng.gen_range(1..4u8)) % 4;
    (boundary_point(rng, s1, size), boundary_point(rng, s2, size))
}

fn free(rng: &mut ChaCha8Rng, size: i64) -> (Point, Point) {
    let mut p = || Point::from_ints(rng.gen_range(0..=size), rng.gen_range(0..=size));
    (p(), p())
}

fn acceptable(rect: &Rect, placed: &[Obstacle], a: &Point, b: &Point, kind: Kind) -> bool {
    if a == b {
        return false;
    }
    let corner = |p: &Point| rect.sides_touching(p).count_ones() == 2;
    if kind == Kind::IncidenceFree && (corner(a) || corner(b)) {
        return false;
    }
    let along_boundary =
        rect.sides().iter().any(|(s, t)| matches!(segment_intersection(a, b, s, t), Intersection::Overlap(..)));
    if along_boundary {
        return false;
    }
    placed.iter().all(|q| match segment_intersection(a, b, &q.a, &q.b) {
        Intersection::Overlap(..) => false,
        Intersection::Point(x) => kind != Kind::IncidenceFree || ![a, b, &q.a, &q.b].contains(&&x),
        Intersection::None => true,
    })
}

/// Random instance on `[0, size]²` with integer endpoints and terminals at
/// half-integer points. May hold fewer obstacles than asked for if a
/// placement keeps failing.
pub fn random_instance(params: &GenParams, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = params.size.max(2);
    let rect = Rect::from_ints(0, 0, size, size).expect("size is positive");
    let mut placed: Vec<Obstacle> = Vec::new();
    for k in 0..params.obstacles {
        for _ in 0..ATTEMPTS {
            let (a, b) = match params.kind {
                Kind::Chords => chord(&mut rng, size),
                _ if rng.gen_range(0..3) == 0 => chord(&mut rng, size),
                _ => free(&mut rng, size),
            };
            let weight = rng.gen_range(1..=params.max_weight.max(1));
            if !acceptable(&rect, &placed, &a, &b, params.kind) {
                continue;
            }
            let ob = Obstacle::new(k as u32 + 1, a, b, weight);
            if params.kind == Kind::IncidenceFree {
                let mut trial = placed.clone();
                trial.push(ob.clone());
                let probe = Instance {
                    rect: rect.clone(),
                    obstacles: trial,
                    o: Point::from_ints(0, 0),
                    g: Point::from_ints(0, 0),
                };
                if check_incidence_free(&probe).is_err() {
                    continue;
                }
            }
            placed.push(ob);
            break;
        }
    }
    // renumber densely in case a placement was skipped
    for (k, ob) in placed.iter_mut().enumerate() {
        ob.id = k as u32 + 1;
    }
    let half = |v: i64| Rational::new(2 * v + 1, 2);
    loop {
        let mut p = || Point::new(half(rng.gen_range(0..size)), half(rng.gen_range(0..size)));
        let (o, g) = (p(), p());
        if o == g {
            continue;
        }
        if let Ok(inst) = Instance::new(rect.clone(), placed.clone(), o, g) {
            return inst;
        }
    }
}
