//! Bar visibility and bar 1-visibility representations.
//!
//! The skeleton of a simple optimal 2-planar drawing is a biconnected plane
//! graph with pentagonal faces. An st-numbering orients it; the classic
//! construction then places each vertex on a horizontal bar at height equal
//! to its number, and each edge on a vertical segment at an x-coordinate
//! given by longest dual paths. All x-coordinates are scaled by
//! [`CHANNEL_WIDTH`], so every face owns an empty vertical channel between
//! its left and right chains, strictly between the bars of its source and
//! target. Chords are placed inside that channel after extending chain bars
//! into it; each chord then crosses at most one bar.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characterize::{assign_crossed_edges_to_faces, check_optimal_2planar, Verdict};
use crate::drawing::Drawing;
use crate::plane::{DartId, EdgeId, FaceId, PlaneMultigraph, VertexId};

/// Horizontal scale factor; each face channel has `CHANNEL_WIDTH - 1` free
/// integer columns.
pub const CHANNEL_WIDTH: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VisibilityError {
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(VertexId, VertexId),
    #[error("graph has a self-loop")]
    SelfLoop,
    #[error("drawing is not a simple graph")]
    NotSimple,
    #[error("drawing does not certify an optimal 2-planar graph")]
    NotOptimal2Planar,
    #[error("no bar placement realizes the chords of face {0}")]
    NoPlacement(FaceId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bar {
    pub y: i64,
    /// Closed x-interval.
    pub x: (i64, i64),
}

impl Bar {
    fn covers(&self, x: i64) -> bool {
        self.x.0 <= x && x <= self.x.1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Visibility {
    pub endpoints: (VertexId, VertexId),
    pub x: i64,
    /// Closed y-interval, lower end first.
    pub y: (i64, i64),
    /// Bars met by the open interior of the segment.
    pub crossed_bars: Vec<VertexId>,
}

/// Channel of one skeleton face: its source and target bars see each other
/// through the open x-interval `strip`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceChannel {
    pub face: FaceId,
    pub source: VertexId,
    pub target: VertexId,
    /// Chain vertices whose bars reach the strip from the left, bottom up.
    pub left_chain: Vec<VertexId>,
    /// Chain vertices whose bars reach the strip from the right, bottom up.
    pub right_chain: Vec<VertexId>,
    pub strip: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BarVisibilityRep {
    pub bars: BTreeMap<VertexId, Bar>,
    pub visibilities: BTreeMap<EdgeId, Visibility>,
    pub channels: Vec<FaceChannel>,
}

impl BarVisibilityRep {
    /// `(x_min, x_max, y_min, y_max)` over all bars and visibilities.
    pub fn bounding_box(&self) -> (i64, i64, i64, i64) {
        let mut bb = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        for b in self.bars.values() {
            bb = (bb.0.min(b.x.0), bb.1.max(b.x.1), bb.2.min(b.y), bb.3.max(b.y));
        }
        for v in self.visibilities.values() {
            bb = (bb.0.min(v.x), bb.1.max(v.x), bb.2.min(v.y.0), bb.3.max(v.y.1));
        }
        bb
    }

    /// Largest number of bars crossed by one visibility.
    pub fn max_crossed_bars(&self) -> usize {
        self.visibilities.values().map(|v| v.crossed_bars.len()).max().unwrap_or(0)
    }

    fn crossed_by(&self, vis: &Visibility) -> Vec<VertexId> {
        self.bars
            .iter()
            .filter(|(w, b)| {
                **w != vis.endpoints.0
                    && **w != vis.endpoints.1
                    && vis.y.0 < b.y
                    && b.y < vis.y.1
                    && b.covers(vis.x)
            })
            .map(|(w, _)| *w)
            .collect()
    }

    fn visibility(&self, (u, v): (VertexId, VertexId), x: i64) -> Visibility {
        let (yu, yv) = (self.bars[&u].y, self.bars[&v].y);
        let (lo, hi) = if yu <= yv { (u, v) } else { (v, u) };
        let mut vis = Visibility {
            endpoints: (lo, hi),
            x,
            y: (yu.min(yv), yu.max(yv)),
            crossed_bars: Vec::new(),
        };
        vis.crossed_bars = self.crossed_by(&vis);
        vis
    }
}

/// Vertex count and edge list of a multigraph, for verification.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AbstractGraph {
    pub num_vertices: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl AbstractGraph {
    pub fn of_drawing(d: &Drawing) -> Self {
        AbstractGraph {
            num_vertices: d.num_vertices(),
            edges: d.edges().iter().map(|e| e.endpoints).collect(),
        }
    }

    pub fn of_plane(g: &PlaneMultigraph) -> Self {
        AbstractGraph {
            num_vertices: g.num_vertices(),
            edges: g.edges().map(|e| g.endpoints(e)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BarViolation {
    MissingBar(VertexId),
    MalformedBar(VertexId),
    BarsOverlap(VertexId, VertexId),
    MissingVisibility(EdgeId),
    ExtraVisibility(EdgeId),
    WrongEndpoints(EdgeId),
    DetachedEnd(EdgeId),
    CrossedBarsMismatch(EdgeId),
    TooManyCrossedBars { edge: EdgeId, crossed: usize },
    OverlappingVisibilities(EdgeId, EdgeId),
}

impl fmt::Display for BarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Checks a representation of `g` in which each visibility may cross at
/// most `limit` bars.
pub fn verify_bar_visibility(
    rep: &BarVisibilityRep,
    g: &AbstractGraph,
    limit: usize,
) -> Vec<BarViolation> {
    use BarViolation::*;
    let mut out = Vec::new();
    for v in (0..g.num_vertices).map(VertexId) {
        match rep.bars.get(&v) {
            None => out.push(MissingBar(v)),
            Some(b) if b.x.0 > b.x.1 => out.push(MalformedBar(v)),
            _ => {}
        }
    }
    let bars: Vec<(&VertexId, &Bar)> = rep.bars.iter().collect();
    for (i, (u, a)) in bars.iter().enumerate() {
        for (v, b) in &bars[i + 1..] {
            if a.y == b.y && a.x.0 <= b.x.1 && b.x.0 <= a.x.1 {
                out.push(BarsOverlap(**u, **v));
            }
        }
    }
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        let e = EdgeId(i);
        let Some(vis) = rep.visibilities.get(&e) else {
            out.push(MissingVisibility(e));
            continue;
        };
        let (a, b) = vis.endpoints;
        if !((a == u && b == v) || (a == v && b == u)) {
            out.push(WrongEndpoints(e));
            continue;
        }
        let (Some(ba), Some(bb)) = (rep.bars.get(&a), rep.bars.get(&b)) else {
            out.push(DetachedEnd(e));
            continue;
        };
        let ends = [ba.y, bb.y];
        if a == b
            || !ba.covers(vis.x)
            || !bb.covers(vis.x)
            || vis.y != (ends[0].min(ends[1]), ends[0].max(ends[1]))
        {
            out.push(DetachedEnd(e));
            continue;
        }
        let crossed = rep.crossed_by(vis);
        if crossed != vis.crossed_bars {
            out.push(CrossedBarsMismatch(e));
        }
        if crossed.len() > limit {
            out.push(TooManyCrossedBars {
                edge: e,
                crossed: crossed.len(),
            });
        }
    }
    for &e in rep.visibilities.keys() {
        if e.0 >= g.edges.len() {
            out.push(ExtraVisibility(e));
        }
    }
    let vis: Vec<(&EdgeId, &Visibility)> = rep.visibilities.iter().collect();
    for (i, (e, a)) in vis.iter().enumerate() {
        for (f, b) in &vis[i + 1..] {
            if a.x == b.x && a.y.0.max(b.y.0) < a.y.1.min(b.y.1) {
                out.push(OverlappingVisibilities(**e, **f));
            }
        }
    }
    out
}

/// Bar 1-visibility check: every visibility crosses at most one bar.
pub fn verify_bar1(rep: &BarVisibilityRep, g: &AbstractGraph) -> Vec<BarViolation> {
    verify_bar_visibility(rep, g, 1)
}

/// Biconnectivity of the underlying simple graph (self-loops ignored).
pub fn is_biconnected(g: &PlaneMultigraph) -> bool {
    let n = g.num_vertices();
    if n < 2 || !g.is_connected() {
        return false;
    }
    if n == 2 {
        return g.num_edges() > 0;
    }
    // iterative DFS computing lowpoints; an articulation point exists iff
    // some non-root child has low >= pre(parent) or the root has 2+ children
    let mut pre = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut counter = 0;
    let mut root_children = 0;
    pre[0] = 0;
    low[0] = 0;
    counter += 1;
    // (vertex, parent edge, next rotation index)
    let mut stack: Vec<(usize, Option<EdgeId>, usize)> = vec![(0, None, 0)];
    while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
        let rot = g.rotation(VertexId(v));
        if *idx < rot.len() {
            let d = rot[*idx];
            *idx += 1;
            let w = g.head(d).0;
            let e = g.edge_of(d);
            if Some(e) == pe || w == v {
                continue;
            }
            if pre[w] == usize::MAX {
                pre[w] = counter;
                low[w] = counter;
                counter += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, Some(e), 0));
            } else {
                low[v] = low[v].min(pre[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if p != 0 && low[v] >= pre[p] {
                    return false;
                }
            }
        }
    }
    root_children == 1
}

/// st-numbering: `s` gets 0, `t` gets `n - 1`, and every other vertex has
/// a lower- and a higher-numbered neighbour. Returns the number per vertex.
pub fn st_number(g: &PlaneMultigraph, s: VertexId, t: VertexId) -> Result<Vec<usize>, VisibilityError> {
    let n = g.num_vertices();
    if s.0 >= n || t.0 >= n || s == t || !g.rotation(s).iter().any(|&d| g.head(d) == t) {
        return Err(VisibilityError::NotAnEdge(s, t));
    }
    if !is_biconnected(g) {
        return Err(VisibilityError::NotBiconnected);
    }
    // DFS from s whose first tree edge is s-t
    let mut pre = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![s.0, t.0];
    pre[s.0] = 0;
    pre[t.0] = 1;
    parent[t.0] = s.0;
    let mut stack: Vec<(usize, usize)> = vec![(s.0, 0), (t.0, 0)];
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        let rot = g.rotation(VertexId(v));
        if *idx < rot.len() {
            let w = g.head(rot[*idx]).0;
            *idx += 1;
            if pre[w] == usize::MAX {
                pre[w] = order.len();
                parent[w] = v;
                order.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    // low[v]: the vertex of smallest preorder reachable from the subtree of
    // v by one back edge
    let mut low: Vec<usize> = (0..n).collect();
    for &v in order.iter().rev() {
        for &d in g.rotation(VertexId(v)) {
            let w = g.head(d).0;
            if pre[w] < pre[low[v]] {
                low[v] = w;
            }
        }
        let p = parent[v];
        if p != usize::MAX && pre[low[v]] < pre[low[p]] {
            low[p] = low[v];
        }
    }
    // Tarjan's list construction
    let mut next = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    next[s.0] = t.0;
    prev[t.0] = s.0;
    let mut minus = vec![false; n];
    minus[s.0] = true;
    for &v in &order[2..] {
        let p = parent[v];
        if minus[low[v]] {
            let before = prev[p];
            next[before] = v;
            prev[v] = before;
            next[v] = p;
            prev[p] = v;
            minus[p] = false;
        } else {
            let after = next[p];
            next[p] = v;
            prev[v] = p;
            next[v] = after;
            if after != usize::MAX {
                prev[after] = v;
            }
            minus[p] = true;
        }
    }
    let mut number = vec![usize::MAX; n];
    let mut cur = s.0;
    let mut k = 0;
    while cur != usize::MAX {
        number[cur] = k;
        k += 1;
        cur = next[cur];
    }
    debug_assert!(is_st_numbering(g, &number, s, t));
    Ok(number)
}

/// Post-hoc check of the st-numbering property.
pub fn is_st_numbering(g: &PlaneMultigraph, number: &[usize], s: VertexId, t: VertexId) -> bool {
    let n = g.num_vertices();
    let mut seen = BTreeSet::new();
    if number.len() != n || !number.iter().all(|&k| k < n && seen.insert(k)) {
        return false;
    }
    if number[s.0] != 0 || number[t.0] != n - 1 {
        return false;
    }
    g.vertices().filter(|&v| v != s && v != t).all(|v| {
        let nbrs = g.rotation(v).iter().map(|&d| number[g.head(d).0]);
        let (lo, hi) = nbrs.fold((false, false), |(lo, hi), k| {
            (lo || k < number[v.0], hi || k > number[v.0])
        });
        lo && hi
    })
}

/// Endpoints of the lexicographically smallest edge, smaller vertex first.
pub fn default_st_pair(g: &PlaneMultigraph) -> Option<(VertexId, VertexId)> {
    g.edges()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (u.min(v), u.max(v))
        })
        .filter(|(u, v)| u != v)
        .min()
}

/// Bar visibility representation of a biconnected plane graph, with the
/// default st pair.
pub fn bar_visibility(g: &PlaneMultigraph) -> Result<BarVisibilityRep, VisibilityError> {
    let (s, t) = default_st_pair(g).ok_or(VisibilityError::NotBiconnected)?;
    bar_visibility_with(g, s, t)
}

pub fn bar_visibility_with(
    g: &PlaneMultigraph,
    s: VertexId,
    t: VertexId,
) -> Result<BarVisibilityRep, VisibilityError> {
    if g.edges().any(|e| g.is_loop(e)) {
        return Err(VisibilityError::SelfLoop);
    }
    let number = st_number(g, s, t)?;
    let y = |v: VertexId| number[v.0] as i64;
    let upward = |d: DartId| y(g.origin(d)) < y(g.head(d));

    let st_dart = *g
        .rotation(s)
        .iter()
        .find(|&&d| g.head(d) == t)
        .expect("checked by st_number");
    let outer = g.face_of(st_dart);
    let nf = g.num_faces();
    let (src, snk) = (nf, nf + 1);
    let dual_left = |f: FaceId| if f == outer { src } else { f.0 };
    let dual_right = |f: FaceId| if f == outer { snk } else { f.0 };

    // dual arcs left(e) -> right(e) for upward edges
    let mut arcs = vec![Vec::new(); nf + 2];
    let mut indeg = vec![0; nf + 2];
    let mut edge_left = Vec::with_capacity(g.num_edges());
    for e in g.edges() {
        let (a, b) = g.edge_darts(e);
        let up = if upward(a) { a } else { b };
        let l = dual_left(g.face_of(up));
        let r = dual_right(g.face_of(g.twin(up)));
        arcs[l].push(r);
        indeg[r] += 1;
        edge_left.push(l);
    }
    let mut psi = vec![0i64; nf + 2];
    let mut queue: VecDeque<usize> = (0..nf + 2).filter(|&f| indeg[f] == 0).collect();
    while let Some(f) = queue.pop_front() {
        for &h in &arcs[f] {
            psi[h] = psi[h].max(psi[f] + 1);
            indeg[h] -= 1;
            if indeg[h] == 0 {
                queue.push_back(h);
            }
        }
    }
    let k = CHANNEL_WIDTH;
    let width = psi[snk];

    let mut rep = BarVisibilityRep::default();
    for v in g.vertices() {
        let (left, right) = if v == s || v == t {
            (src, snk)
        } else {
            let rot = g.rotation(v);
            let len = rot.len();
            let mut left = None;
            let mut right = None;
            for i in 0..len {
                let (prev, cur) = (rot[(i + len - 1) % len], rot[i]);
                if upward(cur) && !upward(prev) {
                    left = Some(dual_left(g.face_of(cur)));
                }
                if !upward(cur) && upward(prev) {
                    right = Some(dual_right(g.face_of(cur)));
                }
            }
            (left.expect("st-orientation"), right.expect("st-orientation"))
        };
        rep.bars.insert(
            v,
            Bar {
                y: y(v),
                x: (k * psi[left], k * (psi[right] - 1)),
            },
        );
    }
    for e in g.edges() {
        let vis = rep.visibility(g.endpoints(e), k * psi[edge_left[e.0]]);
        rep.visibilities.insert(e, vis);
    }

    for (f, walk) in g.faces().iter().enumerate() {
        let face = FaceId(f);
        let verts: Vec<VertexId> = walk.darts().iter().map(|&d| g.origin(d)).collect();
        let source = *verts.iter().min_by_key(|&&v| y(v)).unwrap();
        let target = *verts.iter().max_by_key(|&&v| y(v)).unwrap();
        let mut left_chain = Vec::new();
        let mut right_chain = Vec::new();
        let strip = if face == outer {
            // the outer channel lies right of everything; the outer path
            // from s to t reaches it from the left
            left_chain.extend(verts.iter().filter(|&&v| v != s && v != t));
            (k * (width - 1), k * width)
        } else {
            for &d in walk.darts() {
                let h = g.head(d);
                if h == source || h == target {
                    continue;
                }
                if upward(d) {
                    right_chain.push(h);
                } else {
                    left_chain.push(h);
                }
            }
            (k * (psi[f] - 1), k * psi[f])
        };
        left_chain.sort_by_key(|&v| y(v));
        left_chain.dedup();
        right_chain.sort_by_key(|&v| y(v));
        right_chain.dedup();
        rep.channels.push(FaceChannel {
            face,
            source,
            target,
            left_chain,
            right_chain,
            strip,
        });
    }
    Ok(rep)
}

/// Bar 1-visibility representation of a simple optimal 2-planar drawing.
pub fn extend_to_bar1(d: &Drawing) -> Result<BarVisibilityRep, VisibilityError> {
    if !d.is_simple() {
        return Err(VisibilityError::NotSimple);
    }
    if check_optimal_2planar(d).verdict != Verdict::Optimal2Planar {
        return Err(VisibilityError::NotOptimal2Planar);
    }
    let assignment =
        assign_crossed_edges_to_faces(d).map_err(|_| VisibilityError::NotOptimal2Planar)?;
    let skeleton = &assignment.skeleton;
    let sk_rep = bar_visibility(&skeleton.graph)?;

    let mut rep = BarVisibilityRep {
        bars: sk_rep.bars.clone(),
        visibilities: BTreeMap::new(),
        channels: sk_rep.channels.clone(),
    };
    for (se, vis) in &sk_rep.visibilities {
        rep.visibilities.insert(skeleton.base_edge[se.0], vis.clone());
    }

    let mut chord_columns: Vec<(EdgeId, i64)> = Vec::new();
    for channel in &sk_rep.channels {
        let chords: Vec<(EdgeId, (VertexId, VertexId))> = assignment
            .by_face
            .get(&channel.face)
            .map(|es| es.iter().map(|&e| (e, d.endpoints(e))).collect())
            .unwrap_or_default();
        if chords.is_empty() {
            continue;
        }
        let placement = place_chords(channel, &rep.bars, &chords)
            .ok_or(VisibilityError::NoPlacement(channel.face))?;
        let lo = channel.strip.0;
        for (v, reach) in placement.left_reach {
            let bar = rep.bars.get_mut(&v).unwrap();
            bar.x.1 = bar.x.1.max(lo + reach);
        }
        for (v, reach) in placement.right_reach {
            let bar = rep.bars.get_mut(&v).unwrap();
            bar.x.0 = bar.x.0.min(lo + reach);
        }
        for v in [channel.source, channel.target] {
            let bar = rep.bars.get_mut(&v).unwrap();
            bar.x.0 = bar.x.0.min(lo + 1);
            bar.x.1 = bar.x.1.max(channel.strip.1 - 1);
        }
        chord_columns.extend(placement.columns.into_iter().map(|(e, j)| (e, lo + j)));
    }
    for (e, x) in chord_columns {
        let vis = rep.visibility(d.endpoints(e), x);
        rep.visibilities.insert(e, vis);
    }
    // extensions change which bars skeleton visibilities meet only if
    // something went wrong; recompute so the record is exact
    let recomputed: Vec<(EdgeId, Vec<VertexId>)> = rep
        .visibilities
        .iter()
        .map(|(e, v)| (*e, rep.crossed_by(v)))
        .collect();
    for (e, crossed) in recomputed {
        rep.visibilities.get_mut(&e).unwrap().crossed_bars = crossed;
    }
    Ok(rep)
}

struct Placement {
    /// Left-chain vertex -> last strip column its bar covers.
    left_reach: Vec<(VertexId, i64)>,
    /// Right-chain vertex -> first strip column its bar covers.
    right_reach: Vec<(VertexId, i64)>,
    columns: Vec<(EdgeId, i64)>,
}

/// Exhaustive search over bar extensions into the channel (strip columns
/// `1..CHANNEL_WIDTH`) and distinct chord columns.
fn place_chords(
    channel: &FaceChannel,
    bars: &BTreeMap<VertexId, Bar>,
    chords: &[(EdgeId, (VertexId, VertexId))],
) -> Option<Placement> {
    let cols = CHANNEL_WIDTH - 1;
    let left = &channel.left_chain;
    let right = &channel.right_chain;
    let chain: Vec<VertexId> = left.iter().chain(right.iter()).copied().collect();
    let y = |v: VertexId| bars[&v].y;
    // reach[i]: for left vertices the last covered column (0 = none), for
    // right vertices the first covered column (cols + 1 = none)
    let mut reach: Vec<i64> = left.iter().map(|_| 0).chain(right.iter().map(|_| cols + 1)).collect();
    loop {
        let covers = |v: VertexId, j: i64| {
            if v == channel.source || v == channel.target {
                return true;
            }
            match chain.iter().position(|&c| c == v) {
                Some(i) if i < left.len() => j <= reach[i],
                Some(i) => j >= reach[i],
                None => false,
            }
        };
        let options: Vec<Vec<i64>> = chords
            .iter()
            .map(|&(_, (u, w))| {
                let (ylo, yhi) = (y(u).min(y(w)), y(u).max(y(w)));
                (1..=cols)
                    .filter(|&j| {
                        covers(u, j)
                            && covers(w, j)
                            && chain
                                .iter()
                                .filter(|&&z| z != u && z != w && ylo < y(z) && y(z) < yhi && covers(z, j))
                                .count()
                                <= 1
                    })
                    .collect()
            })
            .collect();
        let mut chosen = vec![0; chords.len()];
        if assign_columns(&options, 0, &mut chosen, &mut BTreeSet::new()) {
            return Some(Placement {
                left_reach: left.iter().zip(&reach).map(|(&v, &r)| (v, r)).collect(),
                right_reach: right
                    .iter()
                    .zip(&reach[left.len()..])
                    .filter(|(_, &r)| r <= cols)
                    .map(|(&v, &r)| (v, r))
                    .collect(),
                columns: chords.iter().zip(chosen).map(|(&(e, _), j)| (e, j)).collect(),
            });
        }
        // next extension vector, odometer style
        let mut i = 0;
        loop {
            if i == reach.len() {
                return None;
            }
            if i < left.len() {
                if reach[i] < cols {
                    reach[i] += 1;
                    break;
                }
                reach[i] = 0;
            } else {
                if reach[i] > 1 {
                    reach[i] -= 1;
                    break;
                }
                reach[i] = cols + 1;
            }
            i += 1;
        }
    }
}

fn assign_columns(
    options: &[Vec<i64>],
    i: usize,
    chosen: &mut [i64],
    used: &mut BTreeSet<i64>,
) -> bool {
    if i == options.len() {
        return true;
    }
    for &j in &options[i] {
        if used.insert(j) {
            chosen[i] = j;
            if assign_columns(options, i + 1, chosen, used) {
                return true;
            }
            used.remove(&j);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> PlaneMultigraph {
        let adj: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        PlaneMultigraph::from_neighbor_rotations(&adj).unwrap()
    }

    #[test]
    fn st_numbering_of_cycle() {
        let g = cycle(5);
        let num = st_number(&g, VertexId(0), VertexId(1)).unwrap();
        assert!(is_st_numbering(&g, &num, VertexId(0), VertexId(1)));
    }

    #[test]
    fn path_is_not_biconnected() {
        let g = PlaneMultigraph::from_neighbor_rotations(&[vec![1], vec![0, 2], vec![1, 3], vec![2]])
            .unwrap();
        assert_eq!(st_number(&g, VertexId(0), VertexId(1)), Err(VisibilityError::NotBiconnected));
        assert_eq!(st_number(&g, VertexId(0), VertexId(2)), Err(VisibilityError::NotAnEdge(VertexId(0), VertexId(2))));
    }

    #[test]
    fn cycle_bar_visibility() {
        let g = cycle(5);
        let rep = bar_visibility(&g).unwrap();
        assert_eq!(rep.bars.len(), 5);
        assert_eq!(rep.visibilities.len(), 5);
        assert!(verify_bar_visibility(&rep, &AbstractGraph::of_plane(&g), 0).is_empty());
    }

    #[test]
    fn rerouted_visibility_is_reported() {
        let g = cycle(5);
        let mut rep = bar_visibility(&g).unwrap();
        // stretch every bar across and push one visibility through two bars
        let wide = rep.bounding_box();
        for b in rep.bars.values_mut() {
            b.x = (wide.0 - 1, wide.1 + 1);
        }
        let (&e, _) = rep
            .visibilities
            .iter()
            .find(|(_, v)| v.y.1 - v.y.0 >= 3)
            .expect("some edge spans three levels");
        let violations = verify_bar1(&rep, &AbstractGraph::of_plane(&g));
        assert!(violations
            .iter()
            .any(|v| matches!(v, BarViolation::TooManyCrossedBars { edge, .. } if *edge == e)));
    }
}
