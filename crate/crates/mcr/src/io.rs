//! JSON instance and result documents.
//!
//! Numbers that may be fractional are strings ("5", "1/2", "0.25") so they
//! survive any JSON reader exactly. The canonical text has sorted keys,
//! canonical rationals and a trailing newline.

use std::collections::{BTreeMap, BTreeSet};

use mcr_core::arrangement::{Instance, Obstacle, ObstacleId};
use mcr_core::cover_graph::{CoverGraph, CoverSolution};
use mcr_core::geom::{Point, Rational, Rect};
use mcr_core::reductions::EwlsCertificate;
use mcr_core::solvers::{Crossing, SolveResult, Walk};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("parse error in {field}: {message}")]
    Field { field: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

impl DocError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        DocError::Field { field: field.into(), message: message.into() }
    }

    pub fn is_validation(&self) -> bool {
        matches!(self, DocError::Validation(_))
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RectDoc {
    pub xmin: String,
    pub ymin: String,
    pub xmax: String,
    pub ymax: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub x: String,
    pub y: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ObstacleDoc {
    pub id: ObstacleId,
    pub x1: String,
    pub y1: String,
    pub x2: String,
    pub y2: String,
    pub weight: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SegmentValueDoc {
    pub id: ObstacleId,
    pub value: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub n: usize,
    pub penalty: u64,
    pub z: usize,
    pub target: u64,
    pub target_weight: u64,
    pub segments: Vec<SegmentValueDoc>,
    pub lines: Vec<ObstacleId>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WeightDoc {
    pub id: ObstacleId,
    pub weight: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CoverGraphDoc {
    /// Cover of every vertex, by index.
    pub covers: Vec<Vec<ObstacleId>>,
    pub edges: Vec<[usize; 2]>,
    pub s: usize,
    pub t: usize,
    pub weights: Vec<WeightDoc>,
}

/// Either a geometric instance (rect, obstacles, start, goal, optional
/// certificate) or a standalone cover graph.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rect: Option<RectDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstacles: Option<Vec<ObstacleDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<PointDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<PointDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_graph: Option<CoverGraphDoc>,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Instance { instance: Instance, certificate: Option<EwlsCertificate> },
    CoverGraph(CoverGraph),
}

fn point_doc(p: &Point) -> PointDoc {
    PointDoc { x: p.x.to_string(), y: p.y.to_string() }
}

fn number(field: &str, s: &str) -> Result<Rational, DocError> {
    s.parse().map_err(|_| DocError::field(field, format!("{s:?} is not an exact number")))
}

fn point(field: &str, p: &PointDoc) -> Result<Point, DocError> {
    Ok(Point::new(number(&format!("{field}.x"), &p.x)?, number(&format!("{field}.y"), &p.y)?))
}

impl InstanceDocument {
    pub fn from_instance(inst: &Instance, certificate: Option<&EwlsCertificate>) -> Self {
        let r = &inst.rect;
        InstanceDocument {
            version: VERSION,
            rect: Some(RectDoc {
                xmin: r.xmin.to_string(),
                ymin: r.ymin.to_string(),
                xmax: r.xmax.to_string(),
                ymax: r.ymax.to_string(),
            }),
            obstacles: Some(
                inst.obstacles
                    .iter()
                    .map(|ob| ObstacleDoc {
                        id: ob.id,
                        x1: ob.a.x.to_string(),
                        y1: ob.a.y.to_string(),
                        x2: ob.b.x.to_string(),
                        y2: ob.b.y.to_string(),
                        weight: ob.weight,
                    })
                    .collect(),
            ),
            start: Some(point_doc(&inst.o)),
            goal: Some(point_doc(&inst.g)),
            certificate: certificate.map(|c| CertificateDoc {
                n: c.n,
                penalty: c.penalty,
                z: c.z,
                target: c.target,
                target_weight: c.target_weight,
                segments: c.segments.iter().map(|(&id, &value)| SegmentValueDoc { id, value }).collect(),
                lines: c.lines.clone(),
            }),
            cover_graph: None,
        }
    }

    pub fn from_cover_graph(cg: &CoverGraph) -> Self {
        InstanceDocument {
            version: VERSION,
            rect: None,
            obstacles: None,
            start: None,
            goal: None,
            certificate: None,
            cover_graph: Some(CoverGraphDoc {
                covers: cg.covers.iter().map(|c| c.iter().copied().collect()).collect(),
                edges: cg.edges.iter().map(|&(u, v)| [u, v]).collect(),
                s: cg.s,
                t: cg.t,
                weights: cg.weights.iter().map(|(&id, &weight)| WeightDoc { id, weight }).collect(),
            }),
        }
    }

    pub fn from_document(doc: &Document) -> Self {
        match doc {
            Document::Instance { instance, certificate } => Self::from_instance(instance, certificate.as_ref()),
            Document::CoverGraph(cg) => Self::from_cover_graph(cg),
        }
    }

    /// Converts to domain types, validating every invariant.
    pub fn to_document(&self) -> Result<Document, DocError> {
        if self.version != VERSION {
            return Err(DocError::field("version", format!("unsupported version {}", self.version)));
        }
        let geometric = self.rect.is_some() || self.obstacles.is_some() || self.start.is_some() || self.goal.is_some();
        if let Some(cg) = &self.cover_graph {
            if geometric || self.certificate.is_some() {
                return Err(DocError::field("cover_graph", "cannot be combined with geometric fields"));
            }
            return cover_graph(cg).map(Document::CoverGraph);
        }
        let rect = self.rect.as_ref().ok_or_else(|| DocError::field("rect", "missing"))?;
        let rect = Rect::new(
            number("rect.xmin", &rect.xmin)?,
            number("rect.ymin", &rect.ymin)?,
            number("rect.xmax", &rect.xmax)?,
            number("rect.ymax", &rect.ymax)?,
        )
        .map_err(|e| DocError::Validation(e.to_string()))?;
        let mut obstacles = Vec::new();
        for (k, ob) in self.obstacles.iter().flatten().enumerate() {
            let f = |name: &str| format!("obstacles[{k}].{name}");
            let a = Point::new(number(&f("x1"), &ob.x1)?, number(&f("y1"), &ob.y1)?);
            let b = Point::new(number(&f("x2"), &ob.x2)?, number(&f("y2"), &ob.y2)?);
            obstacles.push(Obstacle::new(ob.id, a, b, ob.weight));
        }
        let o = point("start", self.start.as_ref().ok_or_else(|| DocError::field("start", "missing"))?)?;
        let g = point("goal", self.goal.as_ref().ok_or_else(|| DocError::field("goal", "missing"))?)?;
        let instance = Instance::new(rect, obstacles, o, g).map_err(|e| DocError::Validation(e.to_string()))?;
        let certificate = self.certificate.as_ref().map(|c| EwlsCertificate {
            n: c.n,
            penalty: c.penalty,
            z: c.z,
            target: c.target,
            target_weight: c.target_weight,
            segments: c.segments.iter().map(|s| (s.id, s.value)).collect(),
            lines: c.lines.clone(),
        });
        Ok(Document::Instance { instance, certificate })
    }
}

fn cover_graph(doc: &CoverGraphDoc) -> Result<CoverGraph, DocError> {
    let mut weights = BTreeMap::new();
    for w in &doc.weights {
        if weights.insert(w.id, w.weight).is_some() {
            return Err(DocError::Validation(format!("obstacle {} weighted twice", w.id)));
        }
    }
    let cg = CoverGraph {
        covers: doc.covers.iter().map(|c| c.iter().copied().collect::<BTreeSet<_>>()).collect(),
        edges: doc.edges.iter().map(|&[u, v]| (u, v)).collect(),
        s: doc.s,
        t: doc.t,
        weights,
    };
    if let Some(v) = cg.validate().first() {
        return Err(DocError::Validation(v.to_string()));
    }
    Ok(cg)
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, DocError> {
    serde_json::from_str(text).map_err(|e| DocError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json's map type is ordered, so going through Value sorts keys
    let v = serde_json::to_value(value).expect("documents serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse_instance(text: &str) -> Result<Document, DocError> {
    from_json::<InstanceDocument>(text)?.to_document()
}

pub fn serialize_document(doc: &Document) -> String {
    to_canonical_json(&InstanceDocument::from_document(doc))
}

pub fn serialize_instance(inst: &Instance, certificate: Option<&EwlsCertificate>) -> String {
    to_canonical_json(&InstanceDocument::from_instance(inst, certificate))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CrossingDoc {
    pub sub_edge: usize,
    pub label: ObstacleId,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub faces: Vec<usize>,
    pub crossings: Vec<CrossingDoc>,
}

/// Output of `solve`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub version: u32,
    pub solver: String,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    /// "yes" or "no" in exact-weight mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decision: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub removed: Option<Vec<ObstacleId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    /// Cover-graph vertex walk.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side_tests: Option<usize>,
}

impl ResultDocument {
    pub fn new(solver: &str, mode: &str) -> Self {
        ResultDocument {
            version: VERSION,
            solver: solver.into(),
            mode: mode.into(),
            k: None,
            decision: None,
            removed: None,
            weight: None,
            witness: None,
            path: None,
            side_tests: None,
        }
    }

    pub fn with_result(mut self, res: &SolveResult) -> Self {
        self.removed = Some(res.removed.clone());
        self.weight = Some(res.weight);
        self.witness = Some(WitnessDoc {
            faces: res.witness.faces.clone(),
            crossings: res
                .witness
                .crossings
                .iter()
                .map(|c| CrossingDoc { sub_edge: c.sub_edge, label: c.label })
                .collect(),
        });
        self
    }

    pub fn with_cover_solution(mut self, sol: &CoverSolution) -> Self {
        self.removed = Some(sol.removed.clone());
        self.weight = Some(sol.weight);
        self.path = Some(sol.path.clone());
        self
    }

    /// The geometric result carried by the document, if any.
    pub fn solve_result(&self) -> Option<SolveResult> {
        let w = self.witness.as_ref()?;
        Some(SolveResult {
            removed: self.removed.clone()?,
            weight: self.weight?,
            witness: Walk {
                faces: w.faces.clone(),
                crossings: w.crossings.iter().map(|c| Crossing { sub_edge: c.sub_edge, label: c.label }).collect(),
            },
        })
    }
}

pub fn parse_result(text: &str) -> Result<ResultDocument, DocError> {
    let doc: ResultDocument = from_json(text)?;
    if doc.version != VERSION {
        return Err(DocError::field("version", format!("unsupported version {}", doc.version)));
    }
    Ok(doc)
}
