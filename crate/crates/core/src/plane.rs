//! Embedded multigraphs on the sphere, stored as rotation systems of darts.
//!
//! Every edge is a pair of opposite darts `{d, twin(d)}`. Each vertex owns the
//! clockwise cyclic sequence of darts leaving it. Faces are the orbits of
//!
//! ```text
//! next(d) = rotation successor of twin(d)
//! ```
//!
//! With that convention a face lies to the left of every dart of its walk.
//! Self-loops put both of their darts into the same rotation, parallel edges
//! are allowed, and face walks may repeat vertices and edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident, $prefix:literal) => {
        $(#[$meta])*
        #[derive(
            Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub usize);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }
    };
}

id_type!(
    /// Vertex of an embedded multigraph.
    VertexId,
    "v"
);
id_type!(
    /// Half-edge; `origin` is the vertex it leaves.
    DartId,
    "d"
);
id_type!(
    /// Edge of a multigraph. For a [`PlaneMultigraph`] edges are numbered by
    /// their lower dart; for a drawing they are the base edges.
    EdgeId,
    "e"
);
id_type!(
    /// Face of an embedded multigraph.
    FaceId,
    "f"
);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("dart {0} appears more than once in the rotations")]
    DuplicateDart(DartId),
    #[error("dart {0} is not listed in any rotation")]
    MissingDart(DartId),
    #[error("twin of dart {0} does not exist")]
    DanglingTwin(DartId),
    #[error("twin map is not a fixed-point-free involution at dart {0}")]
    InvalidTwin(DartId),
    #[error("component containing {vertex} has n - m + f = {euler}, not 2")]
    NonZeroGenus { vertex: VertexId, euler: i64 },
    #[error("adjacency lists are not symmetric at {0} -> {1}")]
    AsymmetricAdjacency(VertexId, VertexId),
    #[error("boundary curve is empty or not closed")]
    OpenCurve,
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("edges {0} and {1} are not parallel")]
    NotParallel(EdgeId, EdgeId),
    #[error("edge {0} is not a self-loop")]
    NotLoop(EdgeId),
    #[error("vertex {0} is not isolated or face {1} does not exist")]
    BadPlacement(VertexId, FaceId),
}

/// Side of an oriented closed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One face boundary. Isolated vertices own an empty walk anchored at them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceWalk {
    darts: Vec<DartId>,
    anchor: VertexId,
}

impl FaceWalk {
    pub fn darts(&self) -> &[DartId] {
        &self.darts
    }

    /// Number of darts on the walk, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// A vertex on the walk (the origin of its first dart).
    pub fn anchor(&self) -> VertexId {
        self.anchor
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMultigraph {
    rotations: Vec<Vec<DartId>>,
    origin: Vec<VertexId>,
    twin: Vec<DartId>,
    rot_index: Vec<usize>,
    edge_of: Vec<EdgeId>,
    edge_dart: Vec<DartId>,
    face_of: Vec<FaceId>,
    faces: Vec<FaceWalk>,
    isolated_face: BTreeMap<VertexId, FaceId>,
    isolated_host: BTreeMap<VertexId, FaceId>,
    outer_face: Option<FaceId>,
}

impl PlaneMultigraph {
    /// Builds and validates an embedding from clockwise rotations and a twin
    /// table indexed by dart id. Dart ids must be `0..twin.len()`.
    pub fn build(rotations: Vec<Vec<DartId>>, twin: Vec<DartId>) -> Result<Self, PlaneError> {
        let num_darts = twin.len();
        let mut origin = vec![None; num_darts];
        let mut rot_index = vec![0; num_darts];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d.0 >= num_darts {
                    return Err(PlaneError::DanglingTwin(d));
                }
                if origin[d.0].is_some() {
                    return Err(PlaneError::DuplicateDart(d));
                }
                origin[d.0] = Some(VertexId(v));
                rot_index[d.0] = i;
            }
        }
        let origin = origin
            .into_iter()
            .enumerate()
            .map(|(d, o)| o.ok_or(PlaneError::MissingDart(DartId(d))))
            .collect::<Result<Vec<_>, _>>()?;
        for (d, &t) in twin.iter().enumerate() {
            if t.0 >= num_darts {
                return Err(PlaneError::DanglingTwin(DartId(d)));
            }
            if t.0 == d || twin[t.0].0 != d {
                return Err(PlaneError::InvalidTwin(DartId(d)));
            }
        }

        let mut edge_of = vec![EdgeId(0); num_darts];
        let mut edge_dart = Vec::with_capacity(num_darts / 2);
        for d in 0..num_darts {
            if d < twin[d].0 {
                edge_of[d] = EdgeId(edge_dart.len());
                edge_of[twin[d].0] = EdgeId(edge_dart.len());
                edge_dart.push(DartId(d));
            }
        }

        let mut g = PlaneMultigraph {
            rotations,
            origin,
            twin,
            rot_index,
            edge_of,
            edge_dart,
            face_of: vec![FaceId(usize::MAX); num_darts],
            faces: Vec::new(),
            isolated_face: BTreeMap::new(),
            isolated_host: BTreeMap::new(),
            outer_face: None,
        };
        g.trace_faces();
        g.check_euler()?;
        Ok(g)
    }

    /// Builds a simple embedded graph from clockwise neighbour lists.
    pub fn from_neighbor_rotations(adjacency: &[Vec<usize>]) -> Result<Self, PlaneError> {
        let mut dart_of: BTreeMap<(usize, usize), DartId> = BTreeMap::new();
        let mut twin = Vec::new();
        for (u, nbrs) in adjacency.iter().enumerate() {
            for &v in nbrs {
                if u <= v {
                    if u == v || dart_of.contains_key(&(u, v)) {
                        return Err(PlaneError::AsymmetricAdjacency(VertexId(u), VertexId(v)));
                    }
                    let d = DartId(twin.len());
                    dart_of.insert((u, v), d);
                    dart_of.insert((v, u), DartId(d.0 + 1));
                    twin.push(DartId(d.0 + 1));
                    twin.push(d);
                }
            }
        }
        let mut rotations = Vec::with_capacity(adjacency.len());
        let mut used = BTreeSet::new();
        for (u, nbrs) in adjacency.iter().enumerate() {
            let mut rot = Vec::with_capacity(nbrs.len());
            for &v in nbrs {
                let d = *dart_of
                    .get(&(u, v))
                    .ok_or(PlaneError::AsymmetricAdjacency(VertexId(u), VertexId(v)))?;
                if !used.insert(d) {
                    return Err(PlaneError::AsymmetricAdjacency(VertexId(u), VertexId(v)));
                }
                rot.push(d);
            }
            rotations.push(rot);
        }
        if used.len() != twin.len() {
            let missing = (0..twin.len()).find(|d| !used.contains(&DartId(*d))).unwrap();
            let (&(u, v), _) = dart_of.iter().find(|(_, d)| d.0 == missing).unwrap();
            return Err(PlaneError::AsymmetricAdjacency(VertexId(u), VertexId(v)));
        }
        Self::build(rotations, twin)
    }

    fn trace_faces(&mut self) {
        for start in 0..self.num_darts() {
            if self.face_of[start].0 != usize::MAX {
                continue;
            }
            let f = FaceId(self.faces.len());
            let mut walk = Vec::new();
            let mut d = DartId(start);
            loop {
                self.face_of[d.0] = f;
                walk.push(d);
                d = self.next_in_face(d);
                if d.0 == start {
                    break;
                }
            }
            self.faces.push(FaceWalk {
                anchor: self.origin[start],
                darts: walk,
            });
        }
        for v in 0..self.num_vertices() {
            if self.rotations[v].is_empty() {
                let f = FaceId(self.faces.len());
                self.isolated_face.insert(VertexId(v), f);
                self.faces.push(FaceWalk {
                    darts: Vec::new(),
                    anchor: VertexId(v),
                });
            }
        }
    }

    fn check_euler(&self) -> Result<(), PlaneError> {
        let comp = self.component_labels();
        let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut euler = vec![0i64; ncomp];
        for &c in &comp {
            euler[c] += 1;
        }
        for &d in &self.edge_dart {
            euler[comp[self.origin[d.0].0]] -= 1;
        }
        for face in &self.faces {
            euler[comp[face.anchor.0]] += 1;
        }
        for (c, &chi) in euler.iter().enumerate() {
            if chi != 2 {
                let vertex = VertexId(comp.iter().position(|&x| x == c).unwrap());
                return Err(PlaneError::NonZeroGenus { vertex, euler: chi });
            }
        }
        Ok(())
    }

    /// Connected component label per vertex, numbered by smallest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.num_vertices();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &d in &self.rotations[v] {
                    let w = self.head(d).0;
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn num_components(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_darts(&self) -> usize {
        self.twin.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_dart.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.num_edges()).map(EdgeId)
    }

    #[inline]
    pub fn origin(&self, d: DartId) -> VertexId {
        self.origin[d.0]
    }

    #[inline]
    pub fn head(&self, d: DartId) -> VertexId {
        self.origin[self.twin[d.0].0]
    }

    #[inline]
    pub fn twin(&self, d: DartId) -> DartId {
        self.twin[d.0]
    }

    pub fn twins(&self) -> &[DartId] {
        &self.twin
    }

    pub fn rotation(&self, v: VertexId) -> &[DartId] {
        &self.rotations[v.0]
    }

    pub fn rotations(&self) -> &[Vec<DartId>] {
        &self.rotations
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v.0].len()
    }

    /// Position of `d` inside the rotation of its origin.
    pub fn rotation_index(&self, d: DartId) -> usize {
        self.rot_index[d.0]
    }

    /// Clockwise successor of `d` around its origin.
    pub fn rotation_succ(&self, d: DartId) -> DartId {
        let rot = &self.rotations[self.origin[d.0].0];
        rot[(self.rot_index[d.0] + 1) % rot.len()]
    }

    /// Clockwise predecessor of `d` around its origin.
    pub fn rotation_pred(&self, d: DartId) -> DartId {
        let rot = &self.rotations[self.origin[d.0].0];
        rot[(self.rot_index[d.0] + rot.len() - 1) % rot.len()]
    }

    #[inline]
    pub fn next_in_face(&self, d: DartId) -> DartId {
        self.rotation_succ(self.twin[d.0])
    }

    #[inline]
    pub fn edge_of(&self, d: DartId) -> EdgeId {
        self.edge_of[d.0]
    }

    /// The two darts of `e`, lower id first.
    pub fn edge_darts(&self, e: EdgeId) -> (DartId, DartId) {
        let d = self.edge_dart[e.0];
        (d, self.twin[d.0])
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (a, b) = self.edge_darts(e);
        (self.origin[a.0], self.origin[b.0])
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    /// Face to the left of `d`.
    #[inline]
    pub fn face_of(&self, d: DartId) -> FaceId {
        self.face_of[d.0]
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &FaceWalk {
        &self.faces[f.0]
    }

    /// Vertex sequence of a face walk (origins of its darts).
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        let walk = &self.faces[f.0];
        if walk.is_empty() {
            return vec![walk.anchor];
        }
        walk.darts.iter().map(|&d| self.origin(d)).collect()
    }

    /// Face owned by an isolated vertex.
    pub fn isolated_face(&self, v: VertexId) -> Option<FaceId> {
        self.isolated_face.get(&v).copied()
    }

    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer_face
    }

    pub fn with_outer_face(mut self, f: Option<FaceId>) -> Self {
        self.outer_face = f.filter(|f| f.0 < self.faces.len());
        self
    }

    /// Places an isolated vertex inside face `host` of another component.
    /// Only used by region queries; the Euler check is per component.
    pub fn place_isolated(&mut self, v: VertexId, host: FaceId) -> Result<(), PlaneError> {
        if !self.isolated_face.contains_key(&v) || host.0 >= self.faces.len() {
            return Err(PlaneError::BadPlacement(v, host));
        }
        self.isolated_host.insert(v, host);
        Ok(())
    }

    /// Face-length histogram (length with multiplicity -> number of faces),
    /// ignoring the empty faces of isolated vertices.
    pub fn face_length_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for f in self.faces.iter().filter(|f| !f.is_empty()) {
            *h.entry(f.len()).or_insert(0) += 1;
        }
        h
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for rot in &self.rotations {
            *h.entry(rot.len()).or_insert(0) += 1;
        }
        h
    }

    /// True if the graph has neither parallel edges nor self-loops.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges().all(|e| {
            let (u, v) = self.endpoints(e);
            u != v && seen.insert((u.min(v), u.max(v)))
        })
    }

    fn check_closed(&self, boundary: &[DartId]) -> Result<(), PlaneError> {
        if boundary.is_empty() {
            return Err(PlaneError::OpenCurve);
        }
        for (i, &d) in boundary.iter().enumerate() {
            if d.0 >= self.num_darts() {
                return Err(PlaneError::OpenCurve);
            }
            let next = boundary[(i + 1) % boundary.len()];
            if next.0 >= self.num_darts() || self.head(d) != self.origin(next) {
                return Err(PlaneError::OpenCurve);
            }
        }
        Ok(())
    }

    /// Vertices strictly on one side of a closed dart curve, found by a
    /// flood fill over faces that never crosses an edge of the curve.
    /// Crossing points of a planarization are ordinary vertices here.
    pub fn region_vertices(
        &self,
        boundary: &[DartId],
        side: Side,
    ) -> Result<BTreeSet<VertexId>, PlaneError> {
        let mut found = BTreeSet::new();
        self.flood_region(boundary, side, |v| {
            found.insert(v);
            false
        })?;
        Ok(found)
    }

    /// True iff some vertex accepted by `counts` lies strictly on the chosen
    /// side of the curve. Stops at the first hit.
    pub fn region_contains_vertex(
        &self,
        boundary: &[DartId],
        side: Side,
        counts: impl Fn(VertexId) -> bool,
    ) -> Result<bool, PlaneError> {
        self.flood_region(boundary, side, counts)
    }

    /// True iff at least one vertex off the curve lies strictly on that side.
    pub fn region_contains_real_vertex(
        &self,
        boundary: &[DartId],
        side: Side,
    ) -> Result<bool, PlaneError> {
        self.region_contains_vertex(boundary, side, |_| true)
    }

    /// Visits vertices of the region until `visit` returns true.
    fn flood_region(
        &self,
        boundary: &[DartId],
        side: Side,
        mut visit: impl FnMut(VertexId) -> bool,
    ) -> Result<bool, PlaneError> {
        self.check_closed(boundary)?;
        let blocked: BTreeSet<EdgeId> = boundary.iter().map(|&d| self.edge_of(d)).collect();
        let on_curve: BTreeSet<VertexId> = boundary.iter().map(|&d| self.origin(d)).collect();
        let mut seen_face = vec![false; self.faces.len()];
        let mut seen_vertex = BTreeSet::new();
        let mut queue = VecDeque::new();
        for &d in boundary {
            let start = match side {
                Side::Left => d,
                Side::Right => self.twin(d),
            };
            let f = self.face_of(start);
            if !seen_face[f.0] {
                seen_face[f.0] = true;
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            for (&v, &host) in &self.isolated_host {
                if host == f && seen_vertex.insert(v) && visit(v) {
                    return Ok(true);
                }
            }
            for &d in &self.faces[f.0].darts {
                let v = self.origin(d);
                if !on_curve.contains(&v) && seen_vertex.insert(v) && visit(v) {
                    return Ok(true);
                }
                if blocked.contains(&self.edge_of(d)) {
                    continue;
                }
                let g = self.face_of(self.twin(d));
                if !seen_face[g.0] {
                    seen_face[g.0] = true;
                    queue.push_back(g);
                }
            }
        }
        Ok(false)
    }

    /// Closed curve formed by two parallel edges: `e1` forwards, `e2` back.
    pub fn parallel_pair_curve(&self, e1: EdgeId, e2: EdgeId) -> Result<Vec<DartId>, PlaneError> {
        for e in [e1, e2] {
            if e.0 >= self.num_edges() {
                return Err(PlaneError::UnknownEdge(e));
            }
        }
        let (a, a_rev) = self.edge_darts(e1);
        let (b, b_rev) = self.edge_darts(e2);
        let (u, v) = (self.origin(a), self.head(a));
        let (x, y) = (self.origin(b), self.head(b));
        if e1 == e2 || !((u == x && v == y) || (u == y && v == x)) {
            return Err(PlaneError::NotParallel(e1, e2));
        }
        let _ = a_rev;
        // walk back along e2 from v to u
        let back = if self.origin(b_rev) == v { b_rev } else { b };
        Ok(vec![a, back])
    }

    /// True iff the parallel pair bounds a side with no vertex, i.e. the two
    /// edges are homotopic and the configuration is forbidden.
    pub fn is_homotopic_pair(&self, e1: EdgeId, e2: EdgeId) -> Result<bool, PlaneError> {
        let curve = self.parallel_pair_curve(e1, e2)?;
        Ok(!self.region_contains_real_vertex(&curve, Side::Left)?
            || !self.region_contains_real_vertex(&curve, Side::Right)?)
    }

    /// True iff the self-loop bounds a side with no vertex.
    pub fn is_homotopic_loop(&self, e: EdgeId) -> Result<bool, PlaneError> {
        if e.0 >= self.num_edges() {
            return Err(PlaneError::UnknownEdge(e));
        }
        if !self.is_loop(e) {
            return Err(PlaneError::NotLoop(e));
        }
        let curve = [self.edge_darts(e).0];
        Ok(!self.region_contains_real_vertex(&curve, Side::Left)?
            || !self.region_contains_real_vertex(&curve, Side::Right)?)
    }

    /// All forbidden parallel pairs and self-loops.
    pub fn homotopic_witnesses(&self) -> Vec<(EdgeId, Option<EdgeId>)> {
        let mut out = Vec::new();
        let mut classes: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
        for e in self.edges() {
            let (u, v) = self.endpoints(e);
            classes.entry((u.min(v), u.max(v))).or_default().push(e);
            if u == v && self.is_homotopic_loop(e).unwrap_or(false) {
                out.push((e, None));
            }
        }
        for class in classes.values() {
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
}
