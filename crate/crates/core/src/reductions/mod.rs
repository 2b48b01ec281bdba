//! Subset Sum reduction chain: Subset Sum to the penalty-line variant, the
//! weight map between weighted variants, and weight-to-copies duplication.

mod duplicate;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arrangement::{region_graph, ArrangementError, Instance, Obstacle, ObstacleId};
use crate::geom::{point_on_segment, side_of_line, Point, Rational, Rect, Side};
use crate::solvers::{count_crossings, solve_exact_weight, ExactWeight, SolveError, SolveResult};

pub use duplicate::{check_incidence_free, wls_to_ls, Duplicated, MAX_COPIES};

/// Largest `n` accepted by [`subset_sum_bruteforce`].
pub const BRUTE_FORCE_MAX_VALUES: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    EmptyValues,
    /// Values are positive; the payload is the offending index.
    ZeroValue(usize),
    TooLarge {
        found: usize,
        limit: usize,
    },
    /// The penalty does not exceed the total segment weight.
    BadPenalty {
        penalty: u64,
        total: u64,
    },
    Overflow,
    /// Two obstacles share a point other than a proper crossing.
    IncidenceUnsupported(ObstacleId, ObstacleId),
    EquivalenceCheckFailed(ObstacleId),
    Arrangement(ArrangementError),
    Solve(SolveError),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::EmptyValues => f.write_str("subset sum instance needs at least one value"),
            ReductionError::ZeroValue(i) => write!(f, "value at index {i} is not positive"),
            ReductionError::TooLarge { found, limit } => write!(f, "size {found} exceeds the limit of {limit}"),
            ReductionError::BadPenalty { penalty, total } => {
                write!(f, "penalty {penalty} must exceed the total segment weight {total}")
            }
            ReductionError::Overflow => f.write_str("weight arithmetic overflows 64 bits"),
            ReductionError::IncidenceUnsupported(a, b) => {
                write!(f, "obstacles {a} and {b} meet at an endpoint or a multiple point")
            }
            ReductionError::EquivalenceCheckFailed(id) => {
                write!(f, "copies of obstacle {id} do not reproduce its crossing pattern")
            }
            ReductionError::Arrangement(e) => write!(f, "{e}"),
            ReductionError::Solve(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ReductionError {}

impl From<ArrangementError> for ReductionError {
    fn from(e: ArrangementError) -> Self {
        ReductionError::Arrangement(e)
    }
}

impl From<SolveError> for ReductionError {
    fn from(e: SolveError) -> Self {
        ReductionError::Solve(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetSumInstance {
    pub values: Vec<u64>,
    pub target: u64,
}

impl SubsetSumInstance {
    pub fn new(values: Vec<u64>, target: u64) -> Result<Self, ReductionError> {
        let ss = SubsetSumInstance { values, target };
        ss.validate()?;
        Ok(ss)
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.values.is_empty() {
            return Err(ReductionError::EmptyValues);
        }
        if let Some(i) = self.values.iter().position(|&a| a == 0) {
            return Err(ReductionError::ZeroValue(i));
        }
        self.values.iter().try_fold(0u64, |s, &a| s.checked_add(a)).ok_or(ReductionError::Overflow)?;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubsetSumAnswer {
    /// Zero-based indices, ascending.
    Yes(Vec<usize>),
    No,
}

impl SubsetSumAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, SubsetSumAnswer::Yes(_))
    }
}

/// Exhaustive search. Subsets are visited as ascending index sequences in
/// lexicographic order, and the first one summing to the target is returned.
pub fn subset_sum_bruteforce(ss: &SubsetSumInstance) -> Result<SubsetSumAnswer, ReductionError> {
    ss.validate()?;
    if ss.n() > BRUTE_FORCE_MAX_VALUES {
        return Err(ReductionError::TooLarge { found: ss.n(), limit: BRUTE_FORCE_MAX_VALUES });
    }
    fn dfs(values: &[u64], from: usize, sum: u64, target: u64, picked: &mut Vec<usize>) -> bool {
        if sum == target {
            return true;
        }
        for i in from..values.len() {
            if sum + values[i] > target {
                continue;
            }
            picked.push(i);
            if dfs(values, i + 1, sum + values[i], target, picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
    let mut picked = Vec::new();
    Ok(if dfs(&ss.values, 0, 0, ss.target, &mut picked) { SubsetSumAnswer::Yes(picked) } else { SubsetSumAnswer::No })
}

/// Bookkeeping for a penalty-line gadget.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EwlsCertificate {
    pub n: usize,
    /// Penalty weight of every line.
    pub penalty: u64,
    /// Number of penalty lines.
    pub z: usize,
    /// The Subset Sum target `t`.
    pub target: u64,
    /// `n * penalty + target`.
    pub target_weight: u64,
    /// Segment id to its value, one entry per index in order.
    pub segments: BTreeMap<ObstacleId, u64>,
    /// Line ids, one per index in order.
    pub lines: Vec<ObstacleId>,
}

impl EwlsCertificate {
    /// Splits an achievable weight into (lines, segment weight) if the
    /// remainder can be a segment sum.
    pub fn decompose(&self, weight: u64) -> Option<(u64, u64)> {
        let total: u64 = self.segments.values().sum();
        let (q, r) = (weight / self.penalty, weight % self.penalty);
        (r <= total).then_some((q, r))
    }

    /// `{ n * penalty + sum(T) : T subset of the values }`.
    pub fn expected_weights(&self) -> BTreeSet<u64> {
        let base = self.n as u64 * self.penalty;
        let mut sums = BTreeSet::from([0u64]);
        for &a in self.segments.values() {
            let shifted: Vec<u64> = sums.iter().map(|s| s + a).collect();
            sums.extend(shifted);
        }
        sums.into_iter().map(|s| base + s).collect()
    }
}

/// Staircase gadget: segment `s_i` (id `i`) runs from `(i, i)` to the right
/// edge at height `i`, chord `l_i` (id `n + i`) is the vertical line `x = i`,
/// which passes through the left endpoint of `s_i`.
pub fn subset_sum_to_ewls(ss: &SubsetSumInstance) -> Result<(Instance, EwlsCertificate), ReductionError> {
    ss.validate()?;
    let n = ss.n();
    let nn = i64::try_from(n).map_err(|_| ReductionError::Overflow)?;
    let idn = ObstacleId::try_from(n).map_err(|_| ReductionError::Overflow)?;
    let penalty = ss.total().checked_add(1).ok_or(ReductionError::Overflow)?;
    let target_weight =
        (n as u64).checked_mul(penalty).and_then(|w| w.checked_add(ss.target)).ok_or(ReductionError::Overflow)?;
    let rect = Rect::from_ints(0, 0, nn + 2, nn + 1).expect("non-empty");
    let mut obstacles = Vec::with_capacity(2 * n);
    let mut segments = BTreeMap::new();
    for (k, &a) in ss.values.iter().enumerate() {
        let i = k as i64 + 1;
        let id = k as ObstacleId + 1;
        obstacles.push(Obstacle::new(id, Point::from_ints(i, i), Point::from_ints(nn + 2, i), a));
        segments.insert(id, a);
    }
    let mut lines = Vec::with_capacity(n);
    for k in 0..n {
        let i = k as i64 + 1;
        let id = idn + k as ObstacleId + 1;
        obstacles.push(Obstacle::new(id, Point::from_ints(i, 0), Point::from_ints(i, nn + 1), penalty));
        lines.push(id);
    }
    let o = Point::new(Rational::new(2 * nn + 3, 2), Rational::new(1, 2));
    let g = Point::new(Rational::new(1, 2), Rational::new(1, 2));
    let inst = Instance::new(rect, obstacles, o, g)?;
    let cert = EwlsCertificate { n, penalty, z: n, target: ss.target, target_weight, segments, lines };
    Ok((inst, cert))
}

/// Weight of a penalty-line walk crossing `z` lines and segments of total
/// weight `path_weight`.
pub fn ewls_weight_map(wls: &Instance, path_weight: u64, z: u64, penalty: u64) -> Result<u64, ReductionError> {
    let total = wls.total_weight();
    if penalty <= total {
        return Err(ReductionError::BadPenalty { penalty, total });
    }
    z.checked_mul(penalty).and_then(|w| w.checked_add(path_weight)).ok_or(ReductionError::Overflow)
}

/// Adds a vertical penalty chord of weight `penalty` through every obstacle
/// endpoint strictly inside the rectangle. Returns the new instance and the
/// line ids.
pub fn add_penalty_lines(wls: &Instance, penalty: u64) -> Result<(Instance, Vec<ObstacleId>), ReductionError> {
    let total = wls.total_weight();
    if penalty <= total {
        return Err(ReductionError::BadPenalty { penalty, total });
    }
    let mut next = wls.obstacles.iter().map(|ob| ob.id).max().unwrap_or(0);
    let mut obstacles = wls.obstacles.clone();
    let mut lines = Vec::new();
    for ob in &wls.obstacles {
        for p in [&ob.a, &ob.b] {
            if wls.rect.contains_strictly(p) {
                next = next.checked_add(1).ok_or(ReductionError::Overflow)?;
                let a = Point::new(p.x.clone(), wls.rect.ymin.clone());
                let b = Point::new(p.x.clone(), wls.rect.ymax.clone());
                obstacles.push(Obstacle::new(next, a, b, penalty));
                lines.push(next);
            }
        }
    }
    let inst = Instance::new(wls.rect.clone(), obstacles, wls.o.clone(), wls.g.clone())?;
    Ok((inst, lines))
}

/// Structural checks of a gadget against its certificate; returns every
/// violation found.
pub fn check_certificate(inst: &Instance, cert: &EwlsCertificate) -> Vec<String> {
    let mut bad = Vec::new();
    let total: u64 = cert.segments.values().sum();
    if cert.penalty != total + 1 {
        bad.push(format!("penalty {} != 1 + {}", cert.penalty, total));
    }
    if Some(cert.target_weight) != (cert.n as u64).checked_mul(cert.penalty).and_then(|w| w.checked_add(cert.target)) {
        bad.push(format!("target weight {} != n * penalty + target", cert.target_weight));
    }
    if cert.z != cert.n || cert.lines.len() != cert.n || cert.segments.len() != cert.n {
        bad.push(format!("expected {} lines and segments", cert.n));
    }
    if inst.obstacles.len() != 2 * cert.n {
        bad.push(format!("instance has {} obstacles", inst.obstacles.len()));
    }
    for (&line_id, (&seg_id, &a)) in cert.lines.iter().zip(&cert.segments) {
        let Some(line) = inst.obstacle(line_id) else {
            bad.push(format!("line {line_id} missing"));
            continue;
        };
        let Some(seg) = inst.obstacle(seg_id) else {
            bad.push(format!("segment {seg_id} missing"));
            continue;
        };
        if line.weight != cert.penalty {
            bad.push(format!("line {line_id} has weight {}", line.weight));
        }
        if seg.weight != a {
            bad.push(format!("segment {seg_id} has weight {} not {a}", seg.weight));
        }
        if !line.is_chord(&inst.rect) {
            bad.push(format!("line {line_id} is not a chord"));
        }
        let (so, sg) = (side_of_line(&inst.o, &line.a, &line.b), side_of_line(&inst.g, &line.a, &line.b));
        if so == Side::On || sg == Side::On || so == sg {
            bad.push(format!("line {line_id} does not separate the terminals"));
        }
        let on_right = |p: &Point| p.x == inst.rect.xmax;
        let inner = match (on_right(&seg.a), on_right(&seg.b)) {
            (true, false) => &seg.b,
            (false, true) => &seg.a,
            _ => {
                bad.push(format!("segment {seg_id} needs exactly one endpoint on the right edge"));
                continue;
            }
        };
        if !inst.rect.contains_strictly(inner) || !point_on_segment(inner, &line.a, &line.b) {
            bad.push(format!("segment {seg_id} does not end on line {line_id}"));
        }
    }
    bad
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Disagree(Vec<String>),
}

/// Outcome of running the whole chain on one Subset Sum instance.
#[derive(Debug, Clone)]
pub struct EndToEnd {
    pub verdict: Verdict,
    pub oracle: SubsetSumAnswer,
    pub certificate: EwlsCertificate,
    /// Exact-weight witness on the gadget, if any.
    pub witness: Option<SolveResult>,
    /// Times the witness crosses each line, in line order.
    pub line_crossings: Vec<(ObstacleId, usize)>,
    /// Total value of the segments the witness collides with.
    pub segment_sum: Option<u64>,
}

impl EndToEnd {
    pub fn agrees(&self) -> bool {
        self.verdict == Verdict::Agree
    }

    /// The witness exists and crosses every line exactly once.
    pub fn crosses_each_line_once(&self) -> bool {
        self.witness.is_some() && self.line_crossings.iter().all(|&(_, c)| c == 1)
    }
}

/// Builds the gadget, decides it at weight `n * penalty + t` and compares
/// with the brute-force oracle.
///
/// A walk may cross a line several times but pays for it once, so on a Yes
/// the witness must collide with every line (an odd number of crossings
/// each, as the terminals are on opposite sides) and with segments summing
/// to `t`. Physical crossing counts are reported in `line_crossings`.
pub fn verify_reduction_end_to_end(ss: &SubsetSumInstance) -> Result<EndToEnd, ReductionError> {
    let oracle = subset_sum_bruteforce(ss)?;
    let (inst, cert) = subset_sum_to_ewls(ss)?;
    let mut why = check_certificate(&inst, &cert);
    let rg = region_graph(&inst)?;
    let decision = solve_exact_weight(&rg, &inst.weights(), cert.target_weight)?;
    let witness = match decision {
        ExactWeight::Yes(res) => Some(res),
        ExactWeight::No => None,
    };
    if oracle.is_yes() != witness.is_some() {
        why.push(format!("oracle says {}, gadget says {}", oracle.is_yes(), witness.is_some()));
    }
    let mut line_crossings = Vec::new();
    let mut segment_sum = None;
    if let Some(res) = &witness {
        line_crossings = cert.lines.iter().map(|&id| (id, count_crossings(res, id))).collect();
        for &(id, c) in &line_crossings {
            if c % 2 == 0 {
                why.push(format!("line {id} crossed {c} times"));
            }
        }
        let sum: u64 = res.removed.iter().filter_map(|id| cert.segments.get(id)).sum();
        segment_sum = Some(sum);
        if sum != cert.target {
            why.push(format!("segments sum to {sum}, target {}", cert.target));
        }
        if cert.decompose(res.weight) != Some((cert.n as u64, cert.target)) {
            why.push(format!("weight {} does not decompose as n lines plus target", res.weight));
        }
    }
    let verdict = if why.is_empty() { Verdict::Agree } else { Verdict::Disagree(why) };
    Ok(EndToEnd { verdict, oracle, certificate: cert, witness, line_crossings, segment_sum })
}
