//! Weight-to-copies duplication: an obstacle of weight `w` becomes `w`
//! parallel unit obstacles that cross exactly what the original crosses.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ReductionError;
use crate::arrangement::{build_arrangement, Instance, Obstacle, ObstacleId};
use crate::geom::{clip_line_to_rect, orient, segment_intersection, Intersection, Orientation, Point, Rational};

/// Upper bound on the total number of copies (the width of a label mask).
pub const MAX_COPIES: u64 = 64;

/// Halvings of the offset tried before giving up.
const MAX_HALVINGS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duplicated {
    /// Every obstacle has weight 1.
    pub instance: Instance,
    /// Copy id to original id.
    pub id_map: BTreeMap<ObstacleId, ObstacleId>,
    /// Offset step along the (unnormalised) normal of each obstacle.
    pub epsilon: Rational,
}

/// Replaces every obstacle by `weight` unit copies shifted along its normal.
///
/// Only incidence-free inputs are supported: obstacles may cross properly but
/// never touch at an endpoint, and no three meet at a point. The result is
/// checked combinatorially; the offset is halved and retried on failure.
pub fn wls_to_ls(inst: &Instance) -> Result<Duplicated, ReductionError> {
    inst.validate()?;
    let total = inst.total_weight();
    if total > MAX_COPIES {
        return Err(ReductionError::TooLarge { found: total as usize, limit: MAX_COPIES as usize });
    }
    let crossings = incidence_free(inst)?;
    if inst.obstacles.iter().all(|ob| ob.weight == 1) {
        let instance = inst.clone();
        let id_map = inst.obstacles.iter().map(|ob| (ob.id, ob.id)).collect();
        return Ok(Duplicated { instance, id_map, epsilon: Rational::zero() });
    }

    // start with the largest sweep well inside the feature separation
    let sep = build_arrangement(inst)?.min_feature_separation();
    let reach = inst
        .obstacles
        .iter()
        .map(|ob| {
            let k = Rational::from((ob.weight - 1) as i64);
            &(&k * &k) * &ob.a.dist2(&ob.b)
        })
        .max()
        .unwrap_or_else(Rational::zero);
    let mut eps = Rational::one();
    while &(&(&eps * &eps) * &reach) * &Rational::from(4) >= sep {
        eps = eps.half();
    }

    let mut culprit = inst.obstacles[0].id;
    for _ in 0..MAX_HALVINGS {
        for sign in [1i64, -1] {
            let step = &eps * &Rational::from(sign);
            match attempt(inst, &crossings, &step) {
                Ok((instance, id_map)) => return Ok(Duplicated { instance, id_map, epsilon: step }),
                Err(id) => culprit = id,
            }
        }
        eps = eps.half();
    }
    Err(ReductionError::EquivalenceCheckFailed(culprit))
}

/// Ok if obstacles only ever meet in proper crossings of exactly two.
pub fn check_incidence_free(inst: &Instance) -> Result<(), ReductionError> {
    incidence_free(inst).map(|_| ())
}

/// Rejects endpoint contacts and multiple points; returns which pairs cross.
fn incidence_free(inst: &Instance) -> Result<Vec<Vec<bool>>, ReductionError> {
    let obs = &inst.obstacles;
    let mut crossings = alloc::vec![alloc::vec![false; obs.len()]; obs.len()];
    let mut points: BTreeMap<Point, (ObstacleId, ObstacleId)> = BTreeMap::new();
    for (i, p) in obs.iter().enumerate() {
        for (j, q) in obs.iter().enumerate().skip(i + 1) {
            match segment_intersection(&p.a, &p.b, &q.a, &q.b) {
                Intersection::None => {}
                Intersection::Point(x) => {
                    if [&p.a, &p.b, &q.a, &q.b].contains(&&x) {
                        return Err(ReductionError::IncidenceUnsupported(p.id, q.id));
                    }
                    if let Some(&(a, _)) = points.get(&x) {
                        return Err(ReductionError::IncidenceUnsupported(a, q.id));
                    }
                    points.insert(x, (p.id, q.id));
                    crossings[i][j] = true;
                    crossings[j][i] = true;
                }
                Intersection::Overlap(..) => return Err(ReductionError::IncidenceUnsupported(p.id, q.id)),
            }
        }
    }
    Ok(crossings)
}

fn shifted(inst: &Instance, ob: &Obstacle, k: i64, step: &Rational) -> Option<(Point, Point)> {
    let s = step * &Rational::from(k);
    let dx = &(&ob.a.y - &ob.b.y) * &s;
    let dy = &(&ob.b.x - &ob.a.x) * &s;
    let mut a = Point::new(&ob.a.x + &dx, &ob.a.y + &dy);
    let mut b = Point::new(&ob.b.x + &dx, &ob.b.y + &dy);
    let (ab, bb) = (inst.rect.on_boundary(&ob.a), inst.rect.on_boundary(&ob.b));
    if ab || bb {
        let (ca, cb) = clip_line_to_rect(&a, &b, &inst.rect)?;
        if ab {
            a = ca;
        }
        if bb {
            b = cb;
        }
    }
    Some((a, b))
}

/// Builds the copies for one offset step and checks them. On failure returns
/// the id of an original whose copies misbehave.
fn attempt(
    inst: &Instance,
    crossings: &[Vec<bool>],
    step: &Rational,
) -> Result<(Instance, BTreeMap<ObstacleId, ObstacleId>), ObstacleId> {
    let rect = &inst.rect;
    let mut copies: Vec<Obstacle> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    let mut id_map = BTreeMap::new();
    for (i, ob) in inst.obstacles.iter().enumerate() {
        for k in 0..ob.weight as i64 {
            let (a, b) = shifted(inst, ob, k, step).ok_or(ob.id)?;
            if rect.sides_touching(&a) != rect.sides_touching(&ob.a)
                || rect.sides_touching(&b) != rect.sides_touching(&ob.b)
            {
                return Err(ob.id);
            }
            let id = copies.len() as ObstacleId + 1;
            copies.push(Obstacle::new(id, a, b, 1));
            owner.push(i);
            id_map.insert(id, ob.id);
        }
    }

    // nothing else may sit in the strip swept by an obstacle's copies
    let mut first = 0;
    for (i, ob) in inst.obstacles.iter().enumerate() {
        let last = first + ob.weight as usize - 1;
        let quad = [&copies[first].a, &copies[first].b, &copies[last].b, &copies[last].a];
        let foreign = inst
            .obstacles
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, q)| [&q.a, &q.b])
            .chain([&inst.o, &inst.g]);
        if last > first && foreign.into_iter().any(|p| in_quad(&quad, p)) {
            return Err(ob.id);
        }
        first = last + 1;
    }

    // same pairwise crossing pattern, no contact between sibling copies
    for (x, c) in copies.iter().enumerate() {
        for (y, d) in copies.iter().enumerate().skip(x + 1) {
            let hit = segment_intersection(&c.a, &c.b, &d.a, &d.b);
            let ok = match hit {
                Intersection::None => owner[x] == owner[y] || !crossings[owner[x]][owner[y]],
                Intersection::Point(ref p) => {
                    owner[x] != owner[y] && crossings[owner[x]][owner[y]] && ![&c.a, &c.b, &d.a, &d.b].contains(&p)
                }
                Intersection::Overlap(..) => false,
            };
            if !ok {
                return Err(inst.obstacles[owner[x]].id);
            }
        }
    }

    // along every copy, the crossed originals appear in the original order
    for (x, c) in copies.iter().enumerate() {
        let orig = &inst.obstacles[owner[x]];
        let expected = crossing_order(orig, inst.obstacles.iter().enumerate());
        let seen = crossing_order(c, copies.iter().enumerate().map(|(y, q)| (owner[y], q)));
        let mut collapsed = seen;
        collapsed.dedup();
        if collapsed != expected {
            return Err(orig.id);
        }
    }

    let out = Instance::new(rect.clone(), copies, inst.o.clone(), inst.g.clone()).map_err(|_| inst.obstacles[0].id)?;
    Ok((out, id_map))
}

/// Owners of the obstacles crossed by `ob`, sorted along `ob` from `a` to `b`.
fn crossing_order<'a>(ob: &Obstacle, others: impl Iterator<Item = (usize, &'a Obstacle)>) -> Vec<usize> {
    let dx = &ob.b.x - &ob.a.x;
    let dy = &ob.b.y - &ob.a.y;
    let mut hits: Vec<(Rational, usize)> = others
        .filter_map(|(owner, q)| match segment_intersection(&ob.a, &ob.b, &q.a, &q.b) {
            Intersection::Point(p) if q != ob => {
                let t = &(&(&p.x - &ob.a.x) * &dx) + &(&(&p.y - &ob.a.y) * &dy);
                Some((t, owner))
            }
            _ => None,
        })
        .collect();
    hits.sort();
    hits.into_iter().map(|(_, o)| o).collect()
}

/// Closed containment in a convex quadrilateral given in boundary order.
fn in_quad(quad: &[&Point; 4], p: &Point) -> bool {
    let mut left = false;
    let mut right = false;
    for k in 0..4 {
        match orient(quad[k], quad[(k + 1) % 4], p) {
            Orientation::Left => left = true,
            Orientation::Right => right = true,
            Orientation::Collinear => {}
        }
    }
    !(left && right)
}
