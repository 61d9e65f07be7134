use std::collections::BTreeMap;

use kplanar::characterize::{
    assign_crossed_edges_to_faces, check_optimal, check_optimal_2planar, check_optimal_3planar,
    density_audit, middle_chords, positions_interleave, FaceMode, OptimalClass, Verdict,
    CHECK_FACE_CHORDS, CHECK_MIDDLE,
};
use kplanar::generate::{
    dodecahedron, generate_optimal, theta_hexangulation, theta_pentagulation, GenerateError,
    GenerateOptions, PatternBuilder,
};
use kplanar::plane::{FaceId, VertexId};
use kplanar::Drawing;

fn opt(class: OptimalClass, p: usize) -> Drawing {
    let sk = match class {
        OptimalClass::TwoPlanar => theta_pentagulation(p).unwrap(),
        OptimalClass::ThreePlanar => theta_hexangulation(p).unwrap(),
    };
    generate_optimal(class, sk, &GenerateOptions::default()).unwrap()
}

/// Brute-force girth by BFS from every vertex.
fn girth(g: &kplanar::PlaneMultigraph) -> usize {
    let n = g.num_vertices();
    let mut best = usize::MAX;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent_edge = vec![None; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &d in g.rotation(VertexId(v)) {
                let w = g.head(d).0;
                let e = g.edge_of(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent_edge[w] = Some(e);
                    queue.push_back(w);
                } else if parent_edge[v] != Some(e) {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    best
}

#[test]
fn theta_pentagulation_sizes() {
    for (p, n, m, f) in [(2, 5, 5, 2), (4, 8, 10, 4), (6, 11, 15, 6)] {
        let g = theta_pentagulation(p).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_faces()), (n, m, f));
        assert_eq!(g.face_length_histogram(), BTreeMap::from([(5, f)]));
    }
}

#[test]
fn theta_hexangulation_sizes() {
    for (p, n, m, f) in [(1, 4, 3, 1), (2, 6, 6, 2), (3, 8, 9, 3)] {
        let g = theta_hexangulation(p).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_faces()), (n, m, f));
        assert_eq!(g.face_length_histogram(), BTreeMap::from([(6, f)]));
    }
}

#[test]
fn dodecahedron_structure() {
    let g = dodecahedron();
    assert_eq!((g.num_vertices(), g.num_edges(), g.num_faces()), (20, 30, 12));
    assert_eq!(g.face_length_histogram(), BTreeMap::from([(5, 12)]));
    assert_eq!(g.degree_histogram(), BTreeMap::from([(3, 20)]));
    assert!(g.is_simple());
    assert_eq!(girth(&g), 5);
}

#[test]
fn pentagram_in_c5() {
    let mut b = PatternBuilder::new(theta_pentagulation(2).unwrap());
    b.insert_pentagram(FaceId(0)).unwrap();
    let d = b.build().unwrap();
    assert_eq!(d.num_edges(), 10);
    assert_eq!(d.num_crossings(), 5);
    assert_eq!(d.crossing_histogram(), BTreeMap::from([(0, 5), (2, 5)]));
    let comps = d.crossing_components();
    assert_eq!(comps.iter().filter(|c| c.len() == 1).count(), 5);
    assert_eq!(comps.iter().filter(|c| c.len() == 5).count(), 1);
    assert!(d.is_fan_planar());
}

#[test]
fn c5_optimal_2planar() {
    let d = opt(OptimalClass::TwoPlanar, 2);
    assert_eq!((d.num_vertices(), d.num_edges()), (5, 15));
    let r = check_optimal_2planar(&d);
    assert_eq!(r.verdict, Verdict::Optimal2Planar, "{r}");
    let sk = d.true_planar_skeleton();
    assert_eq!(sk.graph.num_edges(), 5);
    assert_eq!(sk.graph.face_length_histogram(), BTreeMap::from([(5, 2)]));
    let a = assign_crossed_edges_to_faces(&d).unwrap();
    assert_eq!(a.by_face.len(), 2);
    assert!(a.by_face.values().all(|es| es.len() == 5));
    assert_eq!(density_audit(&d, 2, false).slack, 0.0);
}

#[test]
fn theta4_components() {
    let d = opt(OptimalClass::TwoPlanar, 4);
    let big: Vec<_> = d.crossing_components().into_iter().filter(|c| c.len() > 1).collect();
    assert_eq!(big.len(), 4);
    assert!(big.iter().all(|c| c.len() == 5));
}

#[test]
fn dodecahedron_optimal() {
    let d = generate_optimal(OptimalClass::TwoPlanar, dodecahedron(), &GenerateOptions::default())
        .unwrap();
    assert_eq!((d.num_vertices(), d.num_edges()), (20, 90));
    assert!(d.is_simple());
    assert_eq!(check_optimal_2planar(&d).verdict, Verdict::Optimal2Planar);
    assert_eq!(d.crossing_histogram(), BTreeMap::from([(0, 30), (2, 60)]));
    assert!(d.is_fan_planar());
}

#[test]
fn p4_optimal_3planar() {
    let d = opt(OptimalClass::ThreePlanar, 1);
    assert_eq!((d.num_vertices(), d.num_edges()), (4, 11));
    let r = check_optimal_3planar(&d, FaceMode::Strict);
    assert_eq!(r.verdict, Verdict::Optimal3Planar, "{r}");
    let sk = d.true_planar_skeleton();
    assert_eq!(sk.graph.num_edges(), 3);
    assert_eq!(sk.graph.face_length_histogram(), BTreeMap::from([(6, 1)]));
    assert_eq!(d.max_crossings_per_edge(), 3);
    assert!(d.homotopic_witnesses().is_empty());
    let loops = d.edge_ids().filter(|&e| d.endpoints(e).0 == d.endpoints(e).1).count();
    assert_eq!(loops, 2);
    assert!(!d.is_simple());
    let a = assign_crossed_edges_to_faces(&d).unwrap();
    assert_eq!(a.by_face[&FaceId(0)].len(), 8);
}

#[test]
fn p4_face_middle_positions_map_to_vertices() {
    let sk = theta_hexangulation(1).unwrap();
    let verts = sk.face_vertices(FaceId(0));
    let mids: Vec<(VertexId, VertexId)> = middle_chords(6)
        .unwrap()
        .into_iter()
        .map(|(i, j)| (verts[i], verts[j]))
        .collect();
    // walk visits both inner path vertices twice; middles pair the poles and
    // the two inner vertices in both orders
    let (u, v) = (VertexId(0), VertexId(1));
    assert!(mids.contains(&(u, v)) || mids.contains(&(v, u)));
    let inner: Vec<_> = mids.iter().filter(|(a, b)| *a != u && *a != v && *b != u && *b != v).collect();
    assert_eq!(inner.len(), 2);
    assert_eq!(inner[0].0, inner[1].1);
}

#[test]
fn c6_optimal_3planar() {
    let d = opt(OptimalClass::ThreePlanar, 2);
    assert_eq!((d.num_vertices(), d.num_edges()), (6, 22));
    assert_eq!(check_optimal_3planar(&d, FaceMode::Strict).verdict, Verdict::Optimal3Planar);
    assert_eq!(d.max_crossings_per_edge(), 3);
}

#[test]
fn all_three_middle_chords_refused() {
    let mut b = PatternBuilder::new(theta_hexangulation(2).unwrap());
    let mut all: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 2) % 6)).collect();
    all.extend([(0, 3), (1, 4), (2, 5)]);
    assert!(matches!(
        b.insert_chords(FaceId(0), all.clone(), 3),
        Err(GenerateError::TooManyCrossings { .. })
    ));
    // built anyway, the strict characterization rejects it
    b.insert_chords(FaceId(0), all, 4).unwrap();
    b.insert_hexagon_pattern(FaceId(1), 0).unwrap();
    let d = b.build().unwrap();
    let r = check_optimal_3planar(&d, FaceMode::Strict);
    assert_eq!(r.verdict, Verdict::Neither);
    assert!(!d.is_k_planar(3));
    assert!(!r.check(CHECK_MIDDLE).unwrap().passed);
    assert!(!d.is_quasi_planar());
}

#[test]
fn deleting_a_chord_is_detected() {
    let d = generate_optimal(OptimalClass::TwoPlanar, dodecahedron(), &GenerateOptions::default())
        .unwrap();
    let last = d.edge_ids().last().unwrap();
    let mutated = d.without_edge(last).unwrap();
    assert_eq!(mutated.num_edges(), 89);
    let r = check_optimal_2planar(&mutated);
    assert_eq!(r.verdict, Verdict::Neither);
    let c = r.check(CHECK_FACE_CHORDS).unwrap();
    assert!(!c.passed);
    assert!(c.witness.as_ref().unwrap().contains("holds 4"));
}

#[test]
fn class_mismatch_fails_face_lengths() {
    let d = opt(OptimalClass::TwoPlanar, 2);
    let r = check_optimal(&d, OptimalClass::ThreePlanar, FaceMode::Count);
    assert_eq!(r.verdict, Verdict::Neither);
}

#[test]
fn chord_crossings_match_interleaving() {
    for d in [opt(OptimalClass::ThreePlanar, 3), opt(OptimalClass::TwoPlanar, 6)] {
        let a = assign_crossed_edges_to_faces(&d).unwrap();
        for (f, edges) in &a.by_face {
            let len = a.skeleton.graph.face(*f).len();
            for &e in edges {
                let brute = edges
                    .iter()
                    .filter(|&&o| positions_interleave(len, a.positions[&e], a.positions[&o]))
                    .count();
                assert_eq!(d.crossing_count(e), brute);
            }
        }
    }
}

#[test]
fn generator_rejects_wrong_skeletons() {
    let err = generate_optimal(
        OptimalClass::ThreePlanar,
        theta_pentagulation(2).unwrap(),
        &GenerateOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, GenerateError::BadFaceLength { length: 5, .. }));
}
