//! Skeleton families and the chord patterns that complete them into optimal
//! drawings.
//!
//! Chords are identified by positions on a face walk, so faces that visit a
//! vertex more than once still receive a full pattern; distinct positions on
//! the same vertex yield self-loops or parallel edges that are not homotopic.
//! Inside a face the chords are realized as straight segments between points
//! placed in convex position in walk order. That fixes the crossing order
//! along every chord and the rotation at every crossing vertex.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use thiserror::Error;

use crate::characterize::{positions_interleave, OptimalClass};
use crate::drawing::{BaseEdge, Drawing, DrawingError, VertexKind};
use crate::plane::{DartId, FaceId, PlaneError, PlaneMultigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("theta pentagulation needs an even number of paths >= 2, got {0}")]
    OddP(usize),
    #[error("theta hexangulation needs at least one path")]
    NoPaths,
    #[error("face {0} already holds chords")]
    FaceNotEmpty(FaceId),
    #[error("face {face} has length {length}, expected {expected}")]
    WrongLength {
        face: FaceId,
        length: usize,
        expected: usize,
    },
    #[error("face {face} has length {length}, expected {expected}")]
    BadFaceLength {
        face: FaceId,
        length: usize,
        expected: usize,
    },
    #[error("face {0} does not exist")]
    UnknownFace(FaceId),
    #[error("missing middle chord index {0} is not 0, 1 or 2")]
    BadMiddleIndex(usize),
    #[error("chord {chord:?} would be crossed {count} times, more than {limit}")]
    TooManyCrossings {
        chord: (usize, usize),
        count: usize,
        limit: usize,
    },
    #[error("chord {0:?} is not a proper chord of its face")]
    BadChord((usize, usize)),
    #[error("skeleton has homotopic parallel edges or self-loops")]
    HomotopicSkeleton,
    #[error("skeleton is disconnected or has isolated vertices")]
    Disconnected,
    #[error("degenerate chord geometry in face {0}")]
    Degenerate(FaceId),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// Two poles joined by internally disjoint paths of the given lengths, in
/// clockwise order around the first pole. Consecutive paths bound a face of
/// length `len[i] + len[i + 1]`.
pub fn theta(path_lengths: &[usize]) -> Result<PlaneMultigraph, PlaneError> {
    let mut rotations: Vec<Vec<DartId>> = vec![Vec::new(), Vec::new()];
    let mut num_darts = 0;
    let mut pole_v = Vec::new();
    for &len in path_lengths {
        let mut prev = 0;
        for step in 0..len {
            let next = if step + 1 == len {
                1
            } else {
                rotations.push(Vec::new());
                rotations.len() - 1
            };
            let fwd = DartId(num_darts);
            let back = DartId(num_darts + 1);
            num_darts += 2;
            if prev == 0 {
                rotations[0].push(fwd);
            } else {
                rotations[prev].push(fwd);
            }
            if next == 1 {
                pole_v.push(back);
            } else {
                rotations[next].push(back);
            }
            prev = next;
        }
    }
    pole_v.reverse();
    rotations[1] = pole_v;
    let twin = (0..num_darts).map(|d| DartId(d ^ 1)).collect();
    PlaneMultigraph::build(rotations, twin)
}

/// Theta graph with `p` paths of lengths 2, 3, 2, 3, ...: all faces are
/// pentagons, `n = 2 + 3p/2`, `m = 5p/2`, `f = p`.
pub fn theta_pentagulation(p: usize) -> Result<PlaneMultigraph, GenerateError> {
    if p < 2 || p % 2 == 1 {
        return Err(GenerateError::OddP(p));
    }
    let lengths: Vec<usize> = (0..p).map(|i| if i % 2 == 0 { 2 } else { 3 }).collect();
    Ok(theta(&lengths)?)
}

/// Theta graph with `p` paths of length 3: all faces are hexagons,
/// `n = 2p + 2`, `m = 3p`, `f = p`. For `p = 1` this is the path P4 whose
/// single face walk has length 6.
pub fn theta_hexangulation(p: usize) -> Result<PlaneMultigraph, GenerateError> {
    if p == 0 {
        return Err(GenerateError::NoPaths);
    }
    Ok(theta(&vec![3; p])?)
}

/// The dodecahedron: outer pentagon 0..5, a 10-cycle 5..15, inner pentagon
/// 15..20.
pub fn dodecahedron() -> PlaneMultigraph {
    let mut edges = Vec::new();
    let mut coords = vec![(0.0, 0.0); 20];
    for i in 0..5 {
        let a = TAU * i as f64 / 5.0;
        let b = a + TAU / 10.0;
        coords[i] = (3.0 * a.cos(), 3.0 * a.sin());
        coords[5 + 2 * i] = (2.0 * a.cos(), 2.0 * a.sin());
        coords[6 + 2 * i] = (2.0 * b.cos(), 2.0 * b.sin());
        coords[15 + i] = (b.cos(), b.sin());
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((6 + 2 * i, 15 + i));
        edges.push((15 + i, 15 + (i + 1) % 5));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    straight_line_embedding(&coords, &edges).expect("dodecahedron layout is planar")
}

/// Rotation system of a straight-line drawing: neighbours sorted clockwise.
fn straight_line_embedding(
    coords: &[(f64, f64)],
    edges: &[(usize, usize)],
) -> Result<PlaneMultigraph, PlaneError> {
    let mut adj = vec![Vec::new(); coords.len()];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for (u, nbrs) in adj.iter_mut().enumerate() {
        let angle = |v: &usize| {
            let (dx, dy) = (coords[*v].0 - coords[u].0, coords[*v].1 - coords[u].1);
            -dy.atan2(dx)
        };
        nbrs.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    }
    PlaneMultigraph::from_neighbor_rotations(&adj)
}

/// Five chords `(i, i + 2)` of a pentagonal face.
pub fn pentagram_chords() -> Vec<(usize, usize)> {
    (0..5).map(|i| (i, (i + 2) % 5)).collect()
}

/// Six short chords `(i, i + 2)` of a hexagonal face plus the middle chords
/// `(j, j + 3)` other than `missing_middle`.
pub fn hexagon_chords(missing_middle: usize) -> Result<Vec<(usize, usize)>, GenerateError> {
    if missing_middle > 2 {
        return Err(GenerateError::BadMiddleIndex(missing_middle));
    }
    let mut chords: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 2) % 6)).collect();
    chords.extend((0..3).filter(|&j| j != missing_middle).map(|j| (j, j + 3)));
    Ok(chords)
}

/// Number of chords of the same face that cross each chord, by strict
/// interleaving of positions.
pub fn interleaving_counts(len: usize, chords: &[(usize, usize)]) -> Vec<usize> {
    chords
        .iter()
        .map(|&a| chords.iter().filter(|&&b| positions_interleave(len, a, b)).count())
        .collect()
}

/// A skeleton together with the chords inserted into its faces so far.
#[derive(Debug, Clone)]
pub struct PatternBuilder {
    skeleton: PlaneMultigraph,
    chords: BTreeMap<FaceId, Vec<(usize, usize)>>,
}

impl PatternBuilder {
    pub fn new(skeleton: PlaneMultigraph) -> Self {
        PatternBuilder {
            skeleton,
            chords: BTreeMap::new(),
        }
    }

    pub fn skeleton(&self) -> &PlaneMultigraph {
        &self.skeleton
    }

    pub fn chords(&self, face: FaceId) -> &[(usize, usize)] {
        self.chords.get(&face).map(Vec::as_slice).unwrap_or(&[])
    }

    fn face_length(&self, face: FaceId, expected: usize) -> Result<usize, GenerateError> {
        if face.0 >= self.skeleton.num_faces() {
            return Err(GenerateError::UnknownFace(face));
        }
        let length = self.skeleton.face(face).len();
        if length != expected {
            return Err(GenerateError::WrongLength {
                face,
                length,
                expected,
            });
        }
        Ok(length)
    }

    /// Inserts arbitrary position chords into an empty face, refusing any
    /// set in which some chord would be crossed more than `limit` times.
    pub fn insert_chords(
        &mut self,
        face: FaceId,
        chords: Vec<(usize, usize)>,
        limit: usize,
    ) -> Result<&[(usize, usize)], GenerateError> {
        if face.0 >= self.skeleton.num_faces() {
            return Err(GenerateError::UnknownFace(face));
        }
        if self.chords.contains_key(&face) {
            return Err(GenerateError::FaceNotEmpty(face));
        }
        let len = self.skeleton.face(face).len();
        for &(a, b) in &chords {
            let gap = (b + len - a) % len;
            if a >= len || b >= len || gap < 2 || gap > len - 2 {
                return Err(GenerateError::BadChord((a, b)));
            }
        }
        let counts = interleaving_counts(len, &chords);
        if let Some((i, &count)) = counts.iter().enumerate().find(|(_, &c)| c > limit) {
            return Err(GenerateError::TooManyCrossings {
                chord: chords[i],
                count,
                limit,
            });
        }
        Ok(self.chords.entry(face).or_insert(chords))
    }

    /// Pentagram inside a pentagonal face: each chord crossed twice.
    pub fn insert_pentagram(&mut self, face: FaceId) -> Result<&[(usize, usize)], GenerateError> {
        self.face_length(face, 5)?;
        self.insert_chords(face, pentagram_chords(), 2)
    }

    /// Eight chords inside a hexagonal face, each crossed at most 3 times.
    pub fn insert_hexagon_pattern(
        &mut self,
        face: FaceId,
        missing_middle: usize,
    ) -> Result<&[(usize, usize)], GenerateError> {
        self.face_length(face, 6)?;
        let chords = hexagon_chords(missing_middle)?;
        self.insert_chords(face, chords, 3)
    }

    /// Assembles the planarization. Base edges are the skeleton edges in
    /// skeleton order followed by the chords, face by face.
    pub fn build(&self) -> Result<Drawing, GenerateError> {
        let sk = &self.skeleton;
        let n = sk.num_vertices();
        // skeleton dart -> planarization dart
        let planar_of = |s: DartId| {
            let e = sk.edge_of(s);
            let (lo, _) = sk.edge_darts(e);
            DartId(2 * e.0 + usize::from(s != lo))
        };
        let mut rotations: Vec<Vec<DartId>> = vec![Vec::new(); n];
        let mut kinds = vec![VertexKind::Real; n];
        let mut edges: Vec<BaseEdge> = sk
            .edges()
            .map(|e| {
                let (u, v) = sk.endpoints(e);
                BaseEdge {
                    endpoints: (u, v),
                    path: vec![DartId(2 * e.0)],
                }
            })
            .collect();
        let mut num_darts = 2 * sk.num_edges();
        // skeleton dart w_i -> chord darts leaving corner i, clockwise
        let mut corner_darts: BTreeMap<DartId, Vec<(usize, DartId)>> = BTreeMap::new();

        for (&face, chords) in &self.chords {
            let walk = sk.face(face).darts();
            let len = walk.len();
            let points: Vec<(f64, f64)> = (0..len)
                .map(|i| {
                    let jitter = 0.013 * ((i * 7 + 3) % 11) as f64 / 11.0;
                    let a = TAU * (i as f64 + jitter) / len as f64;
                    (a.cos(), a.sin())
                })
                .collect();
            let segment = |c: (usize, usize)| (points[c.0], points[c.1]);

            // crossing vertices of this face, keyed by chord index pair
            let mut crossing: BTreeMap<(usize, usize), (usize, (f64, f64))> = BTreeMap::new();
            for i in 0..chords.len() {
                for j in i + 1..chords.len() {
                    if positions_interleave(len, chords[i], chords[j]) {
                        let p = intersect(segment(chords[i]), segment(chords[j]))
                            .ok_or(GenerateError::Degenerate(face))?;
                        crossing.insert((i, j), (kinds.len(), p));
                        kinds.push(VertexKind::Crossing);
                        rotations.push(Vec::new());
                    }
                }
            }
            // darts at each crossing vertex with their outgoing direction
            let mut at_crossing: BTreeMap<usize, Vec<(f64, DartId)>> = BTreeMap::new();
            for (ci, &(a, b)) in chords.iter().enumerate() {
                let (pa, pb) = segment((a, b));
                let dir = (pb.0 - pa.0, pb.1 - pa.1);
                let mut stops: Vec<(f64, usize)> = crossing
                    .iter()
                    .filter(|((i, j), _)| *i == ci || *j == ci)
                    .map(|(_, &(x, p))| (param_along((pa, pb), p), x))
                    .collect();
                stops.sort_by(|s, t| s.0.total_cmp(&t.0));
                if stops.windows(2).any(|w| (w[1].0 - w[0].0).abs() < 1e-9) {
                    return Err(GenerateError::Degenerate(face));
                }
                let mut path = Vec::with_capacity(stops.len() + 1);
                for k in 0..=stops.len() {
                    let fwd = DartId(num_darts);
                    let back = DartId(num_darts + 1);
                    num_darts += 2;
                    path.push(fwd);
                    match k.checked_sub(1).map(|p| stops[p].1) {
                        None => corner_darts
                            .entry(walk[a])
                            .or_default()
                            .push(((a + len - b) % len, fwd)),
                        Some(x) => at_crossing
                            .entry(x)
                            .or_default()
                            .push(((dir.1).atan2(dir.0), fwd)),
                    }
                    match stops.get(k) {
                        None => corner_darts
                            .entry(walk[b])
                            .or_default()
                            .push(((b + len - a) % len, back)),
                        Some(&(_, x)) => at_crossing
                            .entry(x)
                            .or_default()
                            .push(((-dir.1).atan2(-dir.0), back)),
                    }
                }
                edges.push(BaseEdge {
                    endpoints: (sk.origin(walk[a]), sk.origin(walk[b])),
                    path,
                });
            }
            for (x, mut darts) in at_crossing {
                darts.sort_by(|s, t| t.0.total_cmp(&s.0));
                rotations[x] = darts.into_iter().map(|(_, d)| d).collect();
            }
        }

        for v in sk.vertices() {
            for &s in sk.rotation(v) {
                if let Some(mut chord_darts) = corner_darts.remove(&s) {
                    chord_darts.sort();
                    rotations[v.0].extend(chord_darts.into_iter().map(|(_, d)| d));
                }
                rotations[v.0].push(planar_of(s));
            }
        }
        let twin = (0..num_darts).map(|d| DartId(d ^ 1)).collect();
        let planarization = PlaneMultigraph::build(rotations, twin)?;
        Ok(Drawing::new(planarization, kinds, edges)?)
    }
}

fn intersect(
    (p, q): ((f64, f64), (f64, f64)),
    (r, s): ((f64, f64), (f64, f64)),
) -> Option<(f64, f64)> {
    let d1 = (q.0 - p.0, q.1 - p.1);
    let d2 = (s.0 - r.0, s.1 - r.1);
    let denom = d1.0 * d2.1 - d1.1 * d2.0;
    if denom.abs() < 1e-12 {
        return None;
    }
    let t = ((r.0 - p.0) * d2.1 - (r.1 - p.1) * d2.0) / denom;
    Some((p.0 + t * d1.0, p.1 + t * d1.1))
}

fn param_along((p, q): ((f64, f64), (f64, f64)), x: (f64, f64)) -> f64 {
    let d = (q.0 - p.0, q.1 - p.1);
    ((x.0 - p.0) * d.0 + (x.1 - p.1) * d.1) / (d.0 * d.0 + d.1 * d.1)
}

/// Per-face choices for [`generate_optimal`].
#[derive(Debug, Clone, Default)]
pub struct GenerateOptions {
    /// Missing middle chord for hexagonal faces; faces not listed use
    /// `default_missing_middle`.
    pub missing_middle: BTreeMap<FaceId, usize>,
    pub default_missing_middle: usize,
}

/// Fills every face of a pentagonal (k = 2) or hexagonal (k = 3) skeleton
/// with its chord pattern.
pub fn generate_optimal(
    class: OptimalClass,
    skeleton: PlaneMultigraph,
    opts: &GenerateOptions,
) -> Result<Drawing, GenerateError> {
    if !skeleton.is_connected() || (skeleton.num_vertices() > 1 && skeleton.num_edges() == 0) {
        return Err(GenerateError::Disconnected);
    }
    let expected = class.face_length();
    for (f, walk) in skeleton.faces().iter().enumerate() {
        if walk.len() != expected {
            return Err(GenerateError::BadFaceLength {
                face: FaceId(f),
                length: walk.len(),
                expected,
            });
        }
    }
    if !skeleton.homotopic_witnesses().is_empty() {
        return Err(GenerateError::HomotopicSkeleton);
    }
    let num_faces = skeleton.num_faces();
    let mut builder = PatternBuilder::new(skeleton);
    for f in (0..num_faces).map(FaceId) {
        match class {
            OptimalClass::TwoPlanar => {
                builder.insert_pentagram(f)?;
            }
            OptimalClass::ThreePlanar => {
                let missing = opts
                    .missing_middle
                    .get(&f)
                    .copied()
                    .unwrap_or(opts.default_missing_middle);
                builder.insert_hexagon_pattern(f, missing)?;
            }
        }
    }
    builder.build()
}

/// Generates the optimal drawing of a named skeleton family.
pub fn generate_family(class: OptimalClass, family: SkeletonFamily) -> Result<Drawing, GenerateError> {
    let skeleton = family.skeleton(class)?;
    generate_optimal(class, skeleton, &GenerateOptions::default())
}

/// Built-in skeleton families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkeletonFamily {
    /// Theta graph with `p` paths; pentagonal or hexagonal by class.
    Theta(usize),
    Dodecahedron,
}

impl SkeletonFamily {
    pub fn skeleton(self, class: OptimalClass) -> Result<PlaneMultigraph, GenerateError> {
        match (self, class) {
            (SkeletonFamily::Theta(p), OptimalClass::TwoPlanar) => theta_pentagulation(p),
            (SkeletonFamily::Theta(p), OptimalClass::ThreePlanar) => theta_hexangulation(p),
            (SkeletonFamily::Dodecahedron, _) => Ok(dodecahedron()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_counts() {
        let g = theta_pentagulation(2).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_faces()), (5, 5, 2));
        let g = theta_hexangulation(1).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_faces()), (4, 3, 1));
        assert_eq!(theta_pentagulation(3).unwrap_err(), GenerateError::OddP(3));
        assert_eq!(theta_pentagulation(0).unwrap_err(), GenerateError::OddP(0));
        assert_eq!(theta_hexangulation(0).unwrap_err(), GenerateError::NoPaths);
    }

    #[test]
    fn hexagon_chord_sets() {
        assert_eq!(hexagon_chords(0).unwrap().len(), 8);
        assert!(hexagon_chords(0).unwrap().contains(&(1, 4)));
        assert!(!hexagon_chords(0).unwrap().contains(&(0, 3)));
        assert_eq!(hexagon_chords(3), Err(GenerateError::BadMiddleIndex(3)));
    }

    #[test]
    fn pentagram_counts() {
        assert_eq!(interleaving_counts(5, &pentagram_chords()), vec![2; 5]);
    }

    #[test]
    fn refuses_bad_insertions() {
        let mut b = PatternBuilder::new(theta_hexangulation(2).unwrap());
        assert!(matches!(
            b.insert_pentagram(FaceId(0)),
            Err(GenerateError::WrongLength { length: 6, .. })
        ));
        b.insert_hexagon_pattern(FaceId(0), 1).unwrap();
        assert_eq!(
            b.insert_hexagon_pattern(FaceId(0), 0),
            Err(GenerateError::FaceNotEmpty(FaceId(0)))
        );
        let mut all: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 2) % 6)).collect();
        all.extend([(0, 3), (1, 4), (2, 5)]);
        assert!(matches!(
            b.insert_chords(FaceId(1), all, 3),
            Err(GenerateError::TooManyCrossings { count: 4, .. })
        ));
    }
}
