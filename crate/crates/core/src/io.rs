//! JSON drawing documents and SVG/DOT export.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{BaseEdge, Diagnostic, Drawing, DrawingError, VertexKind};
use crate::plane::{DartId, FaceId, PlaneMultigraph, VertexId};
use crate::visibility::BarVisibilityRep;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format version {found} (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("invariant violation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvariantViolation(Vec<Diagnostic>),
}

impl IoError {
    pub fn has_code(&self, code: crate::drawing::DiagnosticCode) -> bool {
        matches!(self, IoError::InvariantViolation(ds) if ds.iter().any(|d| d.code == code))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DartRecord {
    pub twin: usize,
    pub origin: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub endpoints: [usize; 2],
    pub dart_path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawingDocument {
    pub format_version: u32,
    pub vertices: Vec<VertexRecord>,
    pub rotations: BTreeMap<usize, Vec<usize>>,
    pub darts: BTreeMap<usize, DartRecord>,
    pub base_edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl DrawingDocument {
    /// Canonical document of a drawing: rotations start at their smallest
    /// dart, everything else is listed by id.
    pub fn from_drawing(d: &Drawing) -> Self {
        let g = d.planarization();
        let vertices = g
            .vertices()
            .map(|v| VertexRecord {
                id: v.0,
                kind: d.kind(v),
            })
            .collect();
        let rotations = g
            .vertices()
            .map(|v| {
                let rot: Vec<usize> = g.rotation(v).iter().map(|d| d.0).collect();
                let start = rot.iter().enumerate().min_by_key(|(_, d)| **d).map_or(0, |(i, _)| i);
                let mut norm = rot[start..].to_vec();
                norm.extend_from_slice(&rot[..start]);
                (v.0, norm)
            })
            .collect();
        let darts = (0..g.num_darts())
            .map(|i| {
                let d = DartId(i);
                (
                    i,
                    DartRecord {
                        twin: g.twin(d).0,
                        origin: g.origin(d).0,
                    },
                )
            })
            .collect();
        let base_edges = d
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| EdgeRecord {
                id: i,
                endpoints: [e.endpoints.0 .0, e.endpoints.1 .0],
                dart_path: e.path.iter().map(|d| d.0).collect(),
            })
            .collect();
        DrawingDocument {
            format_version: FORMAT_VERSION,
            vertices,
            rotations,
            darts,
            base_edges,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    /// Validates the document and assembles the drawing. Vertex ids are
    /// renumbered so that real vertices come first if necessary.
    pub fn to_drawing(&self) -> Result<Drawing, IoError> {
        if self.format_version != FORMAT_VERSION {
            return Err(IoError::VersionMismatch {
                found: self.format_version,
                expected: FORMAT_VERSION,
            });
        }
        let malformed = |m: String| Err(IoError::Malformed(m));
        let n = self.vertices.len();
        let mut kind_of = BTreeMap::new();
        for r in &self.vertices {
            if kind_of.insert(r.id, r.kind).is_some() {
                return malformed(format!("vertex {} listed twice", r.id));
            }
        }
        if kind_of.keys().copied().ne(0..n) {
            return malformed("vertex ids must be 0..n".into());
        }
        // real vertices first, each group in id order
        let mut order: Vec<usize> = (0..n).filter(|v| kind_of[v] == VertexKind::Real).collect();
        order.extend((0..n).filter(|v| kind_of[v] == VertexKind::Crossing));
        let mut new_id = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }

        let num_darts = self.darts.len();
        if self.darts.keys().copied().ne(0..num_darts) {
            return malformed("dart ids must be 0..number of darts".into());
        }
        for v in self.rotations.keys() {
            if *v >= n {
                return malformed(format!("rotation of unknown vertex {v}"));
            }
        }
        let mut rotations = vec![Vec::new(); n];
        let mut seen = vec![false; num_darts];
        for (&v, rot) in &self.rotations {
            for &d in rot {
                let Some(rec) = self.darts.get(&d) else {
                    return malformed(format!("rotation of vertex {v} names unknown dart {d}"));
                };
                if rec.origin != v {
                    return malformed(format!("dart {d} has origin {} but sits in the rotation of {v}", rec.origin));
                }
                if std::mem::replace(&mut seen[d], true) {
                    return malformed(format!("dart {d} appears in two rotations"));
                }
            }
            rotations[new_id[v]] = rot.iter().map(|&d| DartId(d)).collect();
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return malformed(format!("dart {d} is in no rotation"));
        }
        let twin: Vec<DartId> = self.darts.values().map(|r| DartId(r.twin)).collect();
        let g = PlaneMultigraph::build(rotations, twin).map_err(|e| IoError::Malformed(e.to_string()))?;

        let mut edges = Vec::with_capacity(self.base_edges.len());
        for (i, r) in self.base_edges.iter().enumerate() {
            if r.id != i {
                return malformed(format!("base edge ids must be 0..m, found {} at position {i}", r.id));
            }
            if r.endpoints.iter().any(|&v| v >= n) {
                return malformed(format!("base edge {i} has an unknown endpoint"));
            }
            edges.push(BaseEdge {
                endpoints: (VertexId(new_id[r.endpoints[0]]), VertexId(new_id[r.endpoints[1]])),
                path: r.dart_path.iter().map(|&d| DartId(d)).collect(),
            });
        }
        let kinds = order.iter().map(|v| kind_of[v]).collect();
        Drawing::new(g, kinds, edges).map_err(|e| match e {
            DrawingError::Invalid(diags) => IoError::InvariantViolation(diags),
            other => IoError::Malformed(other.to_string()),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

pub fn parse_drawing(text: &str) -> Result<Drawing, IoError> {
    DrawingDocument::from_json(text)?.to_drawing()
}

pub fn load(path: impl AsRef<Path>) -> Result<Drawing, IoError> {
    parse_drawing(&read_text(path.as_ref())?)
}

pub fn save(d: &Drawing, path: impl AsRef<Path>) -> Result<(), IoError> {
    write_text(path.as_ref(), &DrawingDocument::from_drawing(d).to_json())
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Undirected DOT graph with one record per base edge.
pub fn to_dot(d: &Drawing) -> String {
    let mut out = String::from("graph drawing {\n");
    for v in d.vertices() {
        writeln!(out, "  {} [label=\"{}\"];", v, v).unwrap();
    }
    for (i, e) in d.edges().iter().enumerate() {
        let c = e.path.len() - 1;
        writeln!(
            out,
            "  {} -- {} [id={}, crossed={}, crossings={}];",
            e.endpoints.0,
            e.endpoints.1,
            i,
            c > 0,
            c
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("layout needs a connected drawing")]
    Disconnected,
    #[error("layout needs at least one edge")]
    Empty,
}

/// Straight-line positions for the planarization, plus bend points for
/// segments that had to be subdivided (loops and parallel copies).
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub position: Vec<(f64, f64)>,
    /// Interior points of each planarization segment, from its lower dart's
    /// origin to its head.
    pub bends: BTreeMap<usize, Vec<(f64, f64)>>,
}

/// Barycentric layout. Loops and repeated parallel segments get two
/// subdivision vertices, every face is stellated with an apex, the outer
/// face is pinned to a convex polygon and all other vertices sit at the
/// average of their neighbours.
pub fn tutte_layout(g: &PlaneMultigraph) -> Result<Layout, LayoutError> {
    if g.num_edges() == 0 {
        return Err(LayoutError::Empty);
    }
    if !g.is_connected() {
        return Err(LayoutError::Disconnected);
    }
    let n = g.num_vertices();
    let mut next_id = n;
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    // corner sequence of each dart: origin, then its subdivision points
    let mut sub: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut seen_pairs = BTreeSet::new();
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        let key = (u.0.min(v.0), u.0.max(v.0));
        if u == v || !seen_pairs.insert(key) {
            let (a, b) = (next_id, next_id + 1);
            next_id += 2;
            link(&mut nbrs, u.0, a);
            link(&mut nbrs, a, b);
            link(&mut nbrs, b, v.0);
            sub.insert(e.0, (a, b));
        } else {
            link(&mut nbrs, u.0, v.0);
        }
    }
    let corners = |d: DartId| -> Vec<usize> {
        let e = g.edge_of(d);
        let mut c = vec![g.origin(d).0];
        if let Some(&(a, b)) = sub.get(&e.0) {
            if g.edge_darts(e).0 == d {
                c.extend([a, b]);
            } else {
                c.extend([b, a]);
            }
        }
        c
    };
    let outer = g.outer_face().unwrap_or_else(|| {
        (0..g.num_faces())
            .map(FaceId)
            .max_by_key(|f| (g.face(*f).len(), std::cmp::Reverse(f.0)))
            .unwrap()
    });
    let outer_cycle: Vec<usize> = g.face(outer).darts().iter().flat_map(|&d| corners(d)).collect();
    let outer_simple = outer_cycle.iter().collect::<BTreeSet<_>>().len() == outer_cycle.len();
    let mut apex_of = BTreeMap::new();
    for f in (0..g.num_faces()).map(FaceId) {
        if f == outer && outer_simple {
            continue;
        }
        let apex = next_id;
        next_id += 1;
        apex_of.insert(f, apex);
        for &d in g.face(f).darts() {
            for c in corners(d) {
                link(&mut nbrs, apex, c);
            }
        }
    }
    nbrs.resize(next_id, BTreeSet::new());
    // pinned boundary, clockwise on screen
    let boundary: Vec<usize> = if outer_simple {
        outer_cycle
    } else {
        let first = corners(g.face(outer).darts()[0]);
        let second = if first.len() > 1 {
            first[1]
        } else {
            g.head(g.face(outer).darts()[0]).0
        };
        vec![first[0], second, apex_of[&outer]]
    };
    let mut pos = vec![(0.0, 0.0); next_id];
    let mut fixed = vec![false; next_id];
    let k = boundary.len() as f64;
    for (i, &v) in boundary.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / k - std::f64::consts::FRAC_PI_2;
        pos[v] = (a.cos(), a.sin());
        fixed[v] = true;
    }
    for _ in 0..20_000 {
        let mut delta: f64 = 0.0;
        for v in 0..next_id {
            if fixed[v] || nbrs[v].is_empty() {
                continue;
            }
            let k = nbrs[v].len() as f64;
            let (sx, sy) = nbrs[v].iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            let p = (sx / k, sy / k);
            delta = delta.max((p.0 - pos[v].0).abs() + (p.1 - pos[v].1).abs());
            pos[v] = p;
        }
        if delta < 1e-12 {
            break;
        }
    }
    let bends = sub
        .iter()
        .map(|(&e, &(a, b))| (e, vec![pos[a], pos[b]]))
        .collect();
    pos.truncate(n);
    Ok(Layout { position: pos, bends })
}

fn link(nbrs: &mut Vec<BTreeSet<usize>>, a: usize, b: usize) {
    let m = a.max(b) + 1;
    if nbrs.len() < m {
        nbrs.resize(m, BTreeSet::new());
    }
    if a != b {
        nbrs[a].insert(b);
        nbrs[b].insert(a);
    }
}

/// Points of a base edge from its first endpoint to its last.
fn edge_points(d: &Drawing, layout: &Layout, path: &[DartId]) -> Vec<(f64, f64)> {
    let g = d.planarization();
    let mut pts = vec![layout.position[g.origin(path[0]).0]];
    for &dart in path {
        let e = g.edge_of(dart);
        if let Some(b) = layout.bends.get(&e.0) {
            if g.edge_darts(e).0 == dart {
                pts.extend(b.iter().copied());
            } else {
                pts.extend(b.iter().rev().copied());
            }
        }
        pts.push(layout.position[g.head(dart).0]);
    }
    pts
}

fn fmt_points(pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|(x, y)| format!("{:.2},{:.2}", x, y))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Planar straight-line SVG of the planarization. Uncrossed edges are
/// `<line class="skeleton">` (or a polyline if subdivided), crossed edges
/// are `<polyline class="chord">` through their crossing points.
pub fn to_svg(d: &Drawing) -> Result<String, LayoutError> {
    const SIZE: f64 = 800.0;
    const MARGIN: f64 = 40.0;
    let layout = tutte_layout(d.planarization())?;
    let r = (SIZE - 2.0 * MARGIN) / 2.0;
    let map = |(x, y): (f64, f64)| (SIZE / 2.0 + r * x, SIZE / 2.0 + r * y);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    )
    .unwrap();
    out.push_str(
        "<style>.skeleton{stroke:#000;stroke-width:2.5;fill:none}.chord{stroke:#c33;stroke-width:1.2;fill:none}.vertex{fill:#fff;stroke:#000}</style>\n",
    );
    for (i, e) in d.edges().iter().enumerate() {
        let pts: Vec<(f64, f64)> = edge_points(d, &layout, &e.path).into_iter().map(map).collect();
        if e.path.len() == 1 && pts.len() == 2 {
            writeln!(
                out,
                "<line class=\"skeleton\" data-edge=\"{i}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
                pts[0].0, pts[0].1, pts[1].0, pts[1].1
            )
            .unwrap();
        } else {
            let class = if e.path.len() == 1 { "skeleton" } else { "chord" };
            writeln!(
                out,
                "<polyline class=\"{class}\" data-edge=\"{i}\" points=\"{}\"/>",
                fmt_points(&pts)
            )
            .unwrap();
        }
    }
    for v in d.vertices() {
        let (x, y) = map(layout.position[v.0]);
        writeln!(out, "<circle class=\"vertex\" data-vertex=\"{}\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\"/>", v.0).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Bars as rectangles, visibilities as vertical lines; y grows upward.
pub fn bar_visibility_svg(rep: &BarVisibilityRep) -> String {
    const UX: f64 = 6.0;
    const UY: f64 = 30.0;
    const PAD: f64 = 20.0;
    let (x0, x1, y0, y1) = rep.bounding_box();
    let w = (x1 - x0) as f64 * UX + 2.0 * PAD;
    let h = (y1 - y0) as f64 * UY + 2.0 * PAD;
    let sx = |x: i64| PAD + (x - x0) as f64 * UX;
    let sy = |y: i64| h - PAD - (y - y0) as f64 * UY;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    )
    .unwrap();
    for (e, v) in &rep.visibilities {
        let class = if v.crossed_bars.is_empty() { "visibility" } else { "visibility crossing" };
        let stroke = if v.crossed_bars.is_empty() { "#000" } else { "#c33" };
        writeln!(
            out,
            "<line class=\"{class}\" data-edge=\"{}\" x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{stroke}\"/>",
            e.0,
            sx(v.x),
            sy(v.y.0),
            sx(v.x),
            sy(v.y.1)
        )
        .unwrap();
    }
    for (v, b) in &rep.bars {
        writeln!(
            out,
            "<rect class=\"bar\" data-vertex=\"{}\" x=\"{:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"4\" fill=\"#48c\"/>",
            v.0,
            sx(b.x.0) - 2.0,
            sy(b.y) - 2.0,
            (b.x.1 - b.x.0) as f64 * UX + 4.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Plain-text table of bars and visibilities.
pub fn bar_visibility_table(rep: &BarVisibilityRep) -> String {
    let mut out = String::from("bar\ty\tx0\tx1\n");
    for (v, b) in &rep.bars {
        writeln!(out, "{}\t{}\t{}\t{}", v, b.y, b.x.0, b.x.1).unwrap();
    }
    out.push_str("\nedge\tu\tv\tx\ty0\ty1\tcrossed\n");
    for (e, vis) in &rep.visibilities {
        let crossed: Vec<String> = vis.crossed_bars.iter().map(ToString::to_string).collect();
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            e,
            vis.endpoints.0,
            vis.endpoints.1,
            vis.x,
            vis.y.0,
            vis.y.1,
            if crossed.is_empty() { "-".to_string() } else { crossed.join(",") }
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::theta_pentagulation;

    #[test]
    fn plane_round_trip() {
        let d = Drawing::from_plane(theta_pentagulation(4).unwrap()).unwrap();
        let doc = DrawingDocument::from_drawing(&d);
        let back = DrawingDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(DrawingDocument::from_drawing(&back.to_drawing().unwrap()), doc);
    }

    #[test]
    fn version_is_checked() {
        let d = Drawing::from_plane(theta_pentagulation(2).unwrap()).unwrap();
        let mut doc = DrawingDocument::from_drawing(&d);
        doc.format_version = 7;
        assert!(matches!(doc.to_drawing(), Err(IoError::VersionMismatch { found: 7, .. })));
    }
}
