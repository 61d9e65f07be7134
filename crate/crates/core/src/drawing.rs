//! k-planar topological drawings stored as planarizations.
//!
//! A [`Drawing`] is a [`PlaneMultigraph`] whose vertices are tagged real or
//! crossing, together with one dart path per base edge. Real vertices occupy
//! ids `0..n` and are the vertices of the base multigraph; crossing vertices
//! follow. A base edge crossed `c` times is a path of `c + 1` segments.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane::{DartId, EdgeId, FaceId, PlaneError, PlaneMultigraph, Side, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Real,
    Crossing,
}

/// Edge of the drawn multigraph with its planarization path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseEdge {
    pub endpoints: (VertexId, VertexId),
    pub path: Vec<DartId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DiagnosticCode {
    SelfCrossingEdge,
    TangentialCrossing,
    BadCrossingDegree,
    OrphanSegment,
    VertexOnEdge,
    BrokenPath,
    IsolatedVertex,
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub message: String,
}

impl Diagnostic {
    fn new(code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("expected {expected} vertex kinds, got {got}")]
    KindCount { expected: usize, got: usize },
    #[error("real vertices must precede crossing vertices")]
    RealVerticesNotPrefix,
    #[error("invalid drawing: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

impl DrawingError {
    pub fn has_code(&self, code: DiagnosticCode) -> bool {
        matches!(self, DrawingError::Invalid(ds) if ds.iter().any(|d| d.code == code))
    }
}

/// Checks every drawing axiom and returns one diagnostic per violation.
pub fn validate(
    planarization: &PlaneMultigraph,
    kinds: &[VertexKind],
    edges: &[BaseEdge],
) -> Vec<Diagnostic> {
    use DiagnosticCode::*;
    let mut out = Vec::new();
    let num_darts = planarization.num_darts();
    let mut owners = vec![Vec::new(); planarization.num_edges()];
    // crossing vertex -> passes (edge, incoming-side dart, outgoing dart)
    let mut passes: BTreeMap<VertexId, Vec<(EdgeId, DartId, DartId)>> = BTreeMap::new();

    for (i, edge) in edges.iter().enumerate() {
        let e = EdgeId(i);
        let path = &edge.path;
        if path.is_empty() || path.iter().any(|d| d.0 >= num_darts) {
            out.push(Diagnostic::new(BrokenPath, format!("{e} has an empty or unknown dart path")));
            continue;
        }
        for &d in path {
            owners[planarization.edge_of(d).0].push(e);
        }
        let (u, v) = edge.endpoints;
        if planarization.origin(path[0]) != u || planarization.head(*path.last().unwrap()) != v {
            out.push(Diagnostic::new(
                BrokenPath,
                format!("{e} path does not run from {u} to {v}"),
            ));
        }
        for w in [u, v] {
            if kinds.get(w.0) != Some(&VertexKind::Real) {
                out.push(Diagnostic::new(BrokenPath, format!("{e} endpoint {w} is not a real vertex")));
            }
        }
        let mut interior = BTreeSet::new();
        for (j, pair) in path.windows(2).enumerate() {
            let x = planarization.head(pair[0]);
            if x != planarization.origin(pair[1]) {
                out.push(Diagnostic::new(
                    BrokenPath,
                    format!("{e} path is discontinuous after segment {j}"),
                ));
                continue;
            }
            if kinds.get(x.0) == Some(&VertexKind::Real) {
                out.push(Diagnostic::new(VertexOnEdge, format!("{e} passes through real vertex {x}")));
                continue;
            }
            if !interior.insert(x) || x == u || x == v {
                out.push(Diagnostic::new(SelfCrossingEdge, format!("{e} visits {x} twice")));
            }
            passes
                .entry(x)
                .or_default()
                .push((e, planarization.twin(pair[0]), pair[1]));
        }
    }

    for (s, own) in owners.iter().enumerate() {
        if own.len() != 1 {
            let (a, b) = planarization.endpoints(EdgeId(s));
            out.push(Diagnostic::new(
                OrphanSegment,
                format!("segment {a}-{b} belongs to {} edge paths", own.len()),
            ));
        }
    }

    for v in planarization.vertices() {
        let deg = planarization.degree(v);
        match kinds.get(v.0) {
            Some(VertexKind::Real) if deg == 0 => {
                out.push(Diagnostic::new(IsolatedVertex, format!("real vertex {v} has degree 0")))
            }
            Some(VertexKind::Crossing) => {
                let here = passes.get(&v).map(Vec::as_slice).unwrap_or(&[]);
                if deg != 4 || here.len() != 2 {
                    out.push(Diagnostic::new(
                        BadCrossingDegree,
                        format!("crossing vertex {v} has degree {deg} and {} edge passes", here.len()),
                    ));
                    continue;
                }
                let (e1, a1, b1) = here[0];
                let (e2, _, _) = here[1];
                if e1 == e2 {
                    out.push(Diagnostic::new(SelfCrossingEdge, format!("{e1} crosses itself at {v}")));
                    continue;
                }
                let i = planarization.rotation_index(a1);
                let j = planarization.rotation_index(b1);
                if (i + 4 - j) % 4 != 2 {
                    out.push(Diagnostic::new(
                        TangentialCrossing,
                        format!("{e1} and {e2} touch at {v} without alternating"),
                    ));
                }
            }
            _ => {}
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    planarization: PlaneMultigraph,
    kinds: Vec<VertexKind>,
    num_real: usize,
    edges: Vec<BaseEdge>,
    segment_owner: Vec<EdgeId>,
    crossing_pair: BTreeMap<VertexId, (EdgeId, EdgeId)>,
}

impl Drawing {
    /// Validates and assembles a drawing.
    pub fn new(
        planarization: PlaneMultigraph,
        kinds: Vec<VertexKind>,
        edges: Vec<BaseEdge>,
    ) -> Result<Self, DrawingError> {
        if kinds.len() != planarization.num_vertices() {
            return Err(DrawingError::KindCount {
                expected: planarization.num_vertices(),
                got: kinds.len(),
            });
        }
        let num_real = kinds.iter().take_while(|k| **k == VertexKind::Real).count();
        if kinds[num_real..].contains(&VertexKind::Real) {
            return Err(DrawingError::RealVerticesNotPrefix);
        }
        let diags = validate(&planarization, &kinds, &edges);
        if !diags.is_empty() {
            return Err(DrawingError::Invalid(diags));
        }
        let mut segment_owner = vec![EdgeId(0); planarization.num_edges()];
        let mut crossing_pair = BTreeMap::new();
        for (i, edge) in edges.iter().enumerate() {
            for &d in &edge.path {
                segment_owner[planarization.edge_of(d).0] = EdgeId(i);
            }
            for &d in &edge.path[..edge.path.len() - 1] {
                let x = planarization.head(d);
                crossing_pair
                    .entry(x)
                    .and_modify(|p: &mut (EdgeId, EdgeId)| p.1 = EdgeId(i))
                    .or_insert((EdgeId(i), EdgeId(i)));
            }
        }
        Ok(Drawing {
            planarization,
            kinds,
            num_real,
            edges,
            segment_owner,
            crossing_pair,
        })
    }

    /// A crossing-free drawing of an embedded multigraph.
    pub fn from_plane(g: PlaneMultigraph) -> Result<Self, DrawingError> {
        let kinds = vec![VertexKind::Real; g.num_vertices()];
        let edges = g
            .edges()
            .map(|e| {
                let (d, _) = g.edge_darts(e);
                BaseEdge {
                    endpoints: (g.origin(d), g.head(d)),
                    path: vec![d],
                }
            })
            .collect();
        Drawing::new(g, kinds, edges)
    }

    /// Re-runs the drawing axioms; always empty for a constructed drawing.
    pub fn validate(&self) -> Vec<Diagnostic> {
        validate(&self.planarization, &self.kinds, &self.edges)
    }

    pub fn planarization(&self) -> &PlaneMultigraph {
        &self.planarization
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kinds[v.0]
    }

    /// Number of real vertices (n).
    pub fn num_vertices(&self) -> usize {
        self.num_real
    }

    /// Number of base edges (m).
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.kinds.len() - self.num_real
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_real).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[BaseEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &BaseEdge {
        &self.edges[e.0]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0].endpoints
    }

    pub fn path(&self, e: EdgeId) -> &[DartId] {
        &self.edges[e.0].path
    }

    /// Number of times `e` is crossed.
    pub fn crossing_count(&self, e: EdgeId) -> usize {
        self.edges[e.0].path.len() - 1
    }

    /// Crossing vertices along `e`, in path order.
    pub fn crossings_along(&self, e: EdgeId) -> Vec<VertexId> {
        let path = &self.edges[e.0].path;
        path[..path.len() - 1]
            .iter()
            .map(|&d| self.planarization.head(d))
            .collect()
    }

    /// Base edge owning a planarization segment.
    pub fn segment_owner(&self, segment: EdgeId) -> EdgeId {
        self.segment_owner[segment.0]
    }

    /// The two base edges through a crossing vertex.
    pub fn crossing_pair(&self, x: VertexId) -> Option<(EdgeId, EdgeId)> {
        self.crossing_pair.get(&x).copied()
    }

    pub fn is_real(&self, v: VertexId) -> bool {
        v.0 < self.num_real
    }

    /// True if the base multigraph has no parallel edges and no self-loops.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| {
            let (u, v) = e.endpoints;
            u != v && seen.insert((u.min(v), u.max(v)))
        })
    }

    pub fn crossing_graph(&self) -> CrossingGraph {
        let mut multiplicity = BTreeMap::new();
        for &(a, b) in self.crossing_pair.values() {
            *multiplicity.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        CrossingGraph {
            num_nodes: self.edges.len(),
            multiplicity,
        }
    }

    /// Connected components of the crossing graph, each sorted, ordered by
    /// smallest edge id. Uncrossed edges form singletons.
    pub fn crossing_components(&self) -> Vec<Vec<EdgeId>> {
        self.crossing_graph().components()
    }

    pub fn crossing_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for e in self.edge_ids() {
            *h.entry(self.crossing_count(e)).or_insert(0) += 1;
        }
        h
    }

    pub fn max_crossings_per_edge(&self) -> usize {
        self.edge_ids().map(|e| self.crossing_count(e)).max().unwrap_or(0)
    }

    pub fn is_k_planar(&self, k: usize) -> bool {
        self.max_crossings_per_edge() <= k
    }

    /// Sub-embedding of the uncrossed edges on all real vertices.
    pub fn true_planar_skeleton(&self) -> Skeleton {
        let g = &self.planarization;
        let mut skeleton_dart = vec![None; g.num_darts()];
        let mut planar_dart = Vec::new();
        let mut base_edge = Vec::new();
        for e in self.edge_ids() {
            let path = self.path(e);
            if path.len() == 1 {
                let d = path[0];
                skeleton_dart[d.0] = Some(DartId(planar_dart.len()));
                skeleton_dart[g.twin(d).0] = Some(DartId(planar_dart.len() + 1));
                planar_dart.push(d);
                planar_dart.push(g.twin(d));
                base_edge.push(e);
            }
        }
        let rotations = self
            .vertices()
            .map(|v| g.rotation(v).iter().filter_map(|d| skeleton_dart[d.0]).collect())
            .collect();
        let twin = (0..planar_dart.len()).map(|d| DartId(d ^ 1)).collect();
        let graph = PlaneMultigraph::build(rotations, twin)
            .expect("restriction of a plane embedding is plane");
        Skeleton {
            graph,
            base_edge,
            planar_dart,
            skeleton_dart,
        }
    }

    /// Returns one triple of pairwise crossing edges, if any.
    pub fn quasi_planarity_witness(&self) -> Option<(EdgeId, EdgeId, EdgeId)> {
        let x = self.crossing_graph();
        let adj = x.adjacency();
        for &(a, b) in x.multiplicity.keys() {
            for &c in adj[a.0].range(EdgeId(b.0 + 1)..) {
                if adj[b.0].contains(&c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn is_quasi_planar(&self) -> bool {
        self.quasi_planarity_witness().is_none()
    }

    /// An edge whose crossers share no common endpoint, with those crossers.
    pub fn fan_planarity_witness(&self) -> Option<(EdgeId, Vec<EdgeId>)> {
        let adj = self.crossing_graph().adjacency();
        for e in self.edge_ids() {
            let crossers: Vec<EdgeId> = adj[e.0].iter().copied().collect();
            if crossers.len() <= 1 {
                continue;
            }
            let mut common: BTreeSet<VertexId> = {
                let (u, v) = self.endpoints(crossers[0]);
                [u, v].into_iter().collect()
            };
            for &c in &crossers[1..] {
                let (u, v) = self.endpoints(c);
                common.retain(|w| *w == u || *w == v);
            }
            if common.is_empty() {
                return Some((e, crossers));
            }
        }
        None
    }

    pub fn is_fan_planar(&self) -> bool {
        self.fan_planarity_witness().is_none()
    }

    /// Pairs of edges crossing each other more than once.
    pub fn double_crossing_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        self.crossing_graph()
            .multiplicity
            .into_iter()
            .filter(|&(_, m)| m >= 2)
            .map(|(p, _)| p)
            .collect()
    }

    /// An odd closed walk in the skeleton, as a vertex sequence.
    pub fn odd_true_planar_cycle(&self) -> Option<Vec<VertexId>> {
        odd_closed_walk(&self.true_planar_skeleton().graph)
    }

    /// A skeleton face of length 3 on three distinct vertices whose region
    /// contains no vertex and no edge segment.
    pub fn empty_true_planar_triangle(&self) -> Option<Vec<VertexId>> {
        let sk = self.true_planar_skeleton();
        for (f, walk) in sk.graph.faces().iter().enumerate() {
            if walk.len() != 3 {
                continue;
            }
            let verts = sk.graph.face_vertices(FaceId(f));
            if verts[0] == verts[1] || verts[1] == verts[2] || verts[0] == verts[2] {
                continue;
            }
            let pd = sk.planar_dart[walk.darts()[0].0];
            let pf = self.planarization.face_of(pd);
            if self.planarization.face(pf).len() == 3 {
                return Some(verts);
            }
        }
        None
    }

    /// Closed planarization curve along `e1` and back along `e2`.
    fn pair_curve(&self, e1: EdgeId, e2: EdgeId) -> Result<Vec<DartId>, PlaneError> {
        let (u, v) = self.endpoints(e1);
        let (x, y) = self.endpoints(e2);
        if e1 == e2 || !((u == x && v == y) || (u == y && v == x)) {
            return Err(PlaneError::NotParallel(e1, e2));
        }
        let g = &self.planarization;
        let mut curve = self.path(e1).to_vec();
        if x == v && y == u && u != v {
            curve.extend_from_slice(self.path(e2));
        } else {
            curve.extend(self.path(e2).iter().rev().map(|&d| g.twin(d)));
        }
        Ok(curve)
    }

    fn curve_has_empty_side(&self, curve: &[DartId]) -> Result<bool, PlaneError> {
        let g = &self.planarization;
        let real = |v: VertexId| v.0 < self.num_real;
        Ok(!g.region_contains_vertex(curve, Side::Left, real)?
            || !g.region_contains_vertex(curve, Side::Right, real)?)
    }

    /// True iff two parallel base edges bound a region without real vertices.
    pub fn is_homotopic_pair(&self, e1: EdgeId, e2: EdgeId) -> Result<bool, PlaneError> {
        for e in [e1, e2] {
            if e.0 >= self.edges.len() {
                return Err(PlaneError::UnknownEdge(e));
            }
        }
        let curve = self.pair_curve(e1, e2)?;
        self.curve_has_empty_side(&curve)
    }

    /// True iff a self-loop bounds a region without real vertices.
    pub fn is_homotopic_loop(&self, e: EdgeId) -> Result<bool, PlaneError> {
        if e.0 >= self.edges.len() {
            return Err(PlaneError::UnknownEdge(e));
        }
        let (u, v) = self.endpoints(e);
        if u != v {
            return Err(PlaneError::NotLoop(e));
        }
        self.curve_has_empty_side(self.path(e))
    }

    /// Groups of base edges sharing the same (unordered) endpoints.
    pub fn parallel_classes(&self) -> BTreeMap<(VertexId, VertexId), Vec<EdgeId>> {
        let mut classes: BTreeMap<_, Vec<EdgeId>> = BTreeMap::new();
        for e in self.edge_ids() {
            let (u, v) = self.endpoints(e);
            classes.entry((u.min(v), u.max(v))).or_default().push(e);
        }
        classes
    }

    /// Forbidden self-loops `(e, None)` and parallel pairs `(e1, Some(e2))`.
    pub fn homotopic_witnesses(&self) -> Vec<(EdgeId, Option<EdgeId>)> {
        let mut out = Vec::new();
        for ((u, v), class) in self.parallel_classes() {
            if u == v {
                for &e in &class {
                    if self.is_homotopic_loop(e).unwrap_or(false) {
                        out.push((e, None));
                    }
                }
            }
            for (i, &e1) in class.iter().enumerate() {
                for &e2 in &class[i + 1..] {
                    if self.is_homotopic_pair(e1, e2).unwrap_or(false) {
                        out.push((e1, Some(e2)));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Has at least one parallel pair or self-loop.
    pub fn has_multi_edges(&self) -> bool {
        !self.is_simple()
    }

    /// The drawing with base edge `e` erased. Crossing vertices on `e` are
    /// dissolved, merging the segments of the edges that crossed it.
    pub fn without_edge(&self, e: EdgeId) -> Result<Drawing, DrawingError> {
        if e.0 >= self.edges.len() {
            return Err(DrawingError::UnknownEdge(e));
        }
        let g = &self.planarization;
        let removed: BTreeSet<VertexId> = self.crossings_along(e).into_iter().collect();
        let mut new_vertex = vec![None; g.num_vertices()];
        let mut kinds = Vec::new();
        for v in g.vertices() {
            if !removed.contains(&v) {
                new_vertex[v.0] = Some(VertexId(kinds.len()));
                kinds.push(self.kinds[v.0]);
            }
        }
        // old dart -> new dart, for darts that survive at kept vertices
        let mut dart_map = vec![None; g.num_darts()];
        let mut edges = Vec::with_capacity(self.edges.len() - 1);
        let mut next_dart = 0;
        for (i, edge) in self.edges.iter().enumerate() {
            if i == e.0 {
                continue;
            }
            let mut path = Vec::new();
            let mut start = edge.path[0];
            for (j, &d) in edge.path.iter().enumerate() {
                let h = g.head(d);
                let last = j + 1 == edge.path.len();
                if !last && removed.contains(&h) {
                    continue;
                }
                let fwd = DartId(next_dart);
                let back = DartId(next_dart + 1);
                next_dart += 2;
                dart_map[start.0] = Some(fwd);
                dart_map[g.twin(d).0] = Some(back);
                path.push(fwd);
                if !last {
                    start = edge.path[j + 1];
                }
            }
            edges.push(BaseEdge {
                endpoints: edge.endpoints,
                path,
            });
        }
        let rotations = g
            .vertices()
            .filter(|v| !removed.contains(v))
            .map(|v| g.rotation(v).iter().filter_map(|d| dart_map[d.0]).collect())
            .collect();
        let twin = (0..next_dart).map(|d| DartId(d ^ 1)).collect();
        let planarization = PlaneMultigraph::build(rotations, twin)?;
        Drawing::new(planarization, kinds, edges)
    }
}

/// The uncrossed edges of a drawing with their inherited embedding.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub graph: PlaneMultigraph,
    /// Base edge of each skeleton edge.
    pub base_edge: Vec<EdgeId>,
    /// Planarization dart of each skeleton dart.
    pub planar_dart: Vec<DartId>,
    /// Skeleton dart of each planarization dart, if it belongs to one.
    pub skeleton_dart: Vec<Option<DartId>>,
}

/// Nodes are base edges; `multiplicity` counts shared crossing vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingGraph {
    pub num_nodes: usize,
    pub multiplicity: BTreeMap<(EdgeId, EdgeId), usize>,
}

impl CrossingGraph {
    pub fn adjacency(&self) -> Vec<BTreeSet<EdgeId>> {
        let mut adj = vec![BTreeSet::new(); self.num_nodes];
        for &(a, b) in self.multiplicity.keys() {
            adj[a.0].insert(b);
            adj[b.0].insert(a);
        }
        adj
    }

    /// Crossing degree of `e`, counted with multiplicity.
    pub fn degree(&self, e: EdgeId) -> usize {
        self.multiplicity
            .iter()
            .filter(|((a, b), _)| *a == e || *b == e)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn components(&self) -> Vec<Vec<EdgeId>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_nodes];
        let mut out = Vec::new();
        for s in 0..self.num_nodes {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![EdgeId(s)];
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                for &b in &adj[a] {
                    if !seen[b.0] {
                        seen[b.0] = true;
                        comp.push(b);
                        queue.push_back(b.0);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }
}

/// Odd closed walk certificate for a non-bipartite multigraph.
pub fn odd_closed_walk(g: &PlaneMultigraph) -> Option<Vec<VertexId>> {
    let n = g.num_vertices();
    let mut color = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    for s in 0..n {
        if color[s] != usize::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([VertexId(s)]);
        while let Some(v) = queue.pop_front() {
            for &d in g.rotation(v) {
                let w = g.head(d);
                if color[w.0] == usize::MAX {
                    color[w.0] = 1 - color[v.0];
                    parent[w.0] = Some(v);
                    queue.push_back(w);
                } else if color[w.0] == color[v.0] {
                    return Some(close_walk(&parent, v, w));
                }
            }
        }
    }
    None
}

fn close_walk(parent: &[Option<VertexId>], v: VertexId, w: VertexId) -> Vec<VertexId> {
    let up = |mut x: VertexId| {
        let mut chain = vec![x];
        while let Some(p) = parent[x.0] {
            chain.push(p);
            x = p;
        }
        chain
    };
    let a = up(v);
    let b = up(w);
    // strip the common suffix down to the lowest common ancestor
    let mut i = a.len();
    let mut j = b.len();
    while i > 1 && j > 1 && a[i - 2] == b[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut walk: Vec<VertexId> = a[..i].to_vec();
    walk.extend(b[..j - 1].iter().rev());
    walk
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> PlaneMultigraph {
        let adj: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        PlaneMultigraph::from_neighbor_rotations(&adj).unwrap()
    }

    #[test]
    fn plane_drawing_is_valid_and_uncrossed() {
        let d = Drawing::from_plane(cycle(5)).unwrap();
        assert!(d.validate().is_empty());
        assert!(d.is_k_planar(0));
        assert_eq!(d.crossing_components().len(), 5);
        assert!(d.is_quasi_planar() && d.is_fan_planar());
        assert!(d.double_crossing_pairs().is_empty());
        assert!(d.empty_true_planar_triangle().is_none());
        assert_eq!(d.odd_true_planar_cycle().map(|w| w.len() % 2), Some(1));
    }

    #[test]
    fn triangle_is_an_empty_true_planar_triangle() {
        let d = Drawing::from_plane(cycle(3)).unwrap();
        assert!(d.empty_true_planar_triangle().is_some());
        assert!(Drawing::from_plane(cycle(4)).unwrap().odd_true_planar_cycle().is_none());
    }

    /// Two edges a-b and c-d crossing once at x, with a given rotation at x.
    fn one_crossing(rot_x: [usize; 4]) -> Result<Drawing, DrawingError> {
        // darts: 0/1 a-x, 2/3 x-b, 4/5 c-x, 6/7 x-d
        let rot = vec![
            vec![DartId(0)],
            vec![DartId(3)],
            vec![DartId(4)],
            vec![DartId(7)],
            rot_x.iter().map(|&d| DartId(d)).collect(),
        ];
        let twin = (0..8).map(|d| DartId(d ^ 1)).collect();
        let g = PlaneMultigraph::build(rot, twin)?;
        let mut kinds = vec![VertexKind::Real; 4];
        kinds.push(VertexKind::Crossing);
        let edges = vec![
            BaseEdge { endpoints: (VertexId(0), VertexId(1)), path: vec![DartId(0), DartId(2)] },
            BaseEdge { endpoints: (VertexId(2), VertexId(3)), path: vec![DartId(4), DartId(6)] },
        ];
        Drawing::new(g, kinds, edges)
    }

    #[test]
    fn alternation_at_crossings() {
        let d = one_crossing([1, 5, 2, 6]).unwrap();
        assert_eq!(d.crossing_histogram(), BTreeMap::from([(1, 2)]));
        assert!(!d.is_k_planar(0) && d.is_k_planar(1));
        let err = one_crossing([1, 2, 5, 6]).unwrap_err();
        assert!(err.has_code(DiagnosticCode::TangentialCrossing), "{err}");
    }

    #[test]
    fn removing_an_edge_can_isolate_vertices() {
        let d = one_crossing([1, 5, 2, 6]).unwrap();
        let err = d.without_edge(EdgeId(0)).unwrap_err();
        assert!(err.has_code(DiagnosticCode::IsolatedVertex), "{err}");
    }

    #[test]
    fn odd_walk_is_closed_and_odd() {
        let g = cycle(7);
        let w = odd_closed_walk(&g).unwrap();
        assert_eq!(w.len() % 2, 1);
        for i in 0..w.len() {
            let (a, b) = (w[i], w[(i + 1) % w.len()]);
            assert!(g.rotation(a).iter().any(|&d| g.head(d) == b));
        }
    }
}
