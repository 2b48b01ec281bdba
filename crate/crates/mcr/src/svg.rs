//! Deterministic SVG rendering of instances and witness walks.

use std::collections::BTreeSet;
use std::fmt::Write;

use mcr_core::arrangement::{region_graph, Instance};
use mcr_core::geom::{Point, Rational};
use mcr_core::solvers::SolveResult;

const WIDTH: f64 = 600.0;
const MARGIN: f64 = 20.0;

struct View {
    xmin: Rational,
    ymax: Rational,
    scale: f64,
}

impl View {
    fn x(&self, x: &Rational) -> String {
        fmt(MARGIN + (x - &self.xmin).to_f64() * self.scale)
    }

    fn y(&self, y: &Rational) -> String {
        fmt(MARGIN + (&self.ymax - y).to_f64() * self.scale)
    }

    fn pt(&self, p: &Point) -> String {
        format!("{},{}", self.x(&p.x), self.y(&p.y))
    }
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Rectangle, obstacles with weight labels, terminals and, with a result,
/// removed obstacles dashed and the witness drawn through face witness
/// points and crossed sub-edge midpoints.
pub fn render_svg(inst: &Instance, res: Option<&SolveResult>) -> String {
    let r = &inst.rect;
    let w = (&r.xmax - &r.xmin).to_f64();
    let h = (&r.ymax - &r.ymin).to_f64();
    let view = View { xmin: r.xmin.clone(), ymax: r.ymax.clone(), scale: WIDTH / w };
    let (pw, ph) = (WIDTH + 2.0 * MARGIN, h * view.scale + 2.0 * MARGIN);
    let removed: BTreeSet<_> = res.map(|r| r.removed.iter().copied().collect()).unwrap_or_default();

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt(pw),
        fmt(ph),
        fmt(pw),
        fmt(ph)
    );
    let _ = writeln!(
        out,
        r#"<rect class="boundary" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        fmt(MARGIN),
        fmt(MARGIN),
        fmt(WIDTH),
        fmt(h * view.scale)
    );
    for ob in &inst.obstacles {
        let kind = if ob.is_chord(r) { "chord" } else { "segment" };
        let dash = if removed.contains(&ob.id) { r#" stroke-dasharray="6 4""# } else { "" };
        let extra = if removed.contains(&ob.id) { " removed" } else { "" };
        let _ = writeln!(
            out,
            r##"<line class="obstacle {kind}{extra}" data-id="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#444" stroke-width="2"{dash}/>"##,
            ob.id,
            view.x(&ob.a.x),
            view.y(&ob.a.y),
            view.x(&ob.b.x),
            view.y(&ob.b.y)
        );
        let mid = ob.a.midpoint(&ob.b);
        let _ = writeln!(
            out,
            r#"<text class="weight" x="{}" y="{}" font-size="12">s{}:{}</text>"#,
            view.x(&mid.x),
            view.y(&mid.y),
            ob.id,
            ob.weight
        );
    }
    if let Some(res) = res {
        if let Ok(rg) = region_graph(inst) {
            let arr = &rg.arrangement;
            let faces = arr.faces();
            let valid = res.witness.faces.iter().all(|&f| f < faces.len())
                && res.witness.crossings.iter().all(|c| c.sub_edge < arr.sub_edges().len());
            if valid {
                let mut pts = vec![view.pt(&inst.o)];
                for (k, &f) in res.witness.faces.iter().enumerate() {
                    if k > 0 {
                        pts.push(view.pt(&arr.sub_edge_midpoint(res.witness.crossings[k - 1].sub_edge)));
                    }
                    pts.push(view.pt(&faces[f].witness));
                }
                pts.push(view.pt(&inst.g));
                let _ = writeln!(
                    out,
                    r#"<polyline class="witness" points="{}" fill="none" stroke="crimson" stroke-width="1.5"/>"#,
                    pts.join(" ")
                );
            }
        }
    }
    for (class, label, p) in [("origin", "o", &inst.o), ("goal", "g", &inst.g)] {
        let _ = writeln!(
            out,
            r#"<circle class="terminal {class}" cx="{}" cy="{}" r="4" fill="black"/>"#,
            view.x(&p.x),
            view.y(&p.y)
        );
        let _ = writeln!(
            out,
            r#"<text class="terminal-label" x="{}" y="{}" font-size="14">{label}</text>"#,
            fmt(MARGIN + (&p.x - &r.xmin).to_f64() * view.scale + 6.0),
            view.y(&p.y)
        );
    }
    out.push_str("</svg>\n");
    out
}
