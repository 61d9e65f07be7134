use kplanar::characterize::OptimalClass;
use kplanar::generate::{
    dodecahedron, generate_optimal, theta_hexangulation, theta_pentagulation, GenerateOptions,
};
use kplanar::plane::VertexId;
use kplanar::visibility::{
    bar_visibility, extend_to_bar1, is_st_numbering, st_number, verify_bar1,
    verify_bar_visibility, AbstractGraph, BarViolation, VisibilityError,
};
use kplanar::PlaneMultigraph;

fn k4() -> PlaneMultigraph {
    PlaneMultigraph::from_neighbor_rotations(&[
        vec![1, 2, 3],
        vec![0, 3, 2],
        vec![0, 1, 3],
        vec![0, 2, 1],
    ])
    .unwrap()
}

#[test]
fn st_numbering_on_every_edge_of_the_dodecahedron() {
    let g = dodecahedron();
    for e in g.edges() {
        let (s, t) = g.endpoints(e);
        for (a, b) in [(s, t), (t, s)] {
            let num = st_number(&g, a, b).unwrap();
            assert!(is_st_numbering(&g, &num, a, b));
        }
    }
}

#[test]
fn k4_bar_visibility() {
    let g = k4();
    let rep = bar_visibility(&g).unwrap();
    assert!(verify_bar_visibility(&rep, &AbstractGraph::of_plane(&g), 0).is_empty());
}

#[test]
fn skeleton_bar_visibility_has_no_crossed_bars() {
    for g in [dodecahedron(), theta_pentagulation(6).unwrap(), theta_hexangulation(3).unwrap()] {
        let rep = bar_visibility(&g).unwrap();
        assert_eq!(rep.max_crossed_bars(), 0);
        assert!(verify_bar_visibility(&rep, &AbstractGraph::of_plane(&g), 0).is_empty());
    }
}

#[test]
fn dodecahedron_bar1() {
    let d = generate_optimal(OptimalClass::TwoPlanar, dodecahedron(), &GenerateOptions::default())
        .unwrap();
    let rep = extend_to_bar1(&d).unwrap();
    assert_eq!(rep.visibilities.len(), 90);
    assert_eq!(verify_bar1(&rep, &AbstractGraph::of_drawing(&d)), vec![]);
    assert!(rep.max_crossed_bars() <= 1);
}

#[test]
fn theta_family_bar1() {
    for p in [2, 4, 6, 8] {
        let d = generate_optimal(
            OptimalClass::TwoPlanar,
            theta_pentagulation(p).unwrap(),
            &GenerateOptions::default(),
        )
        .unwrap();
        if !d.is_simple() {
            assert_eq!(extend_to_bar1(&d), Err(VisibilityError::NotSimple));
            continue;
        }
        let rep = extend_to_bar1(&d).unwrap();
        assert_eq!(verify_bar1(&rep, &AbstractGraph::of_drawing(&d)), vec![], "p = {p}");
    }
}

#[test]
fn bar1_rejects_non_optimal_and_non_simple() {
    let d = generate_optimal(OptimalClass::ThreePlanar, theta_hexangulation(1).unwrap(), &GenerateOptions::default())
        .unwrap();
    assert_eq!(extend_to_bar1(&d), Err(VisibilityError::NotSimple));
    let d = generate_optimal(OptimalClass::TwoPlanar, dodecahedron(), &GenerateOptions::default())
        .unwrap();
    let last = d.edge_ids().last().unwrap();
    let mutated = d.without_edge(last).unwrap();
    assert_eq!(extend_to_bar1(&mutated), Err(VisibilityError::NotOptimal2Planar));
}

#[test]
fn stretched_bar_is_caught() {
    let d = generate_optimal(OptimalClass::TwoPlanar, dodecahedron(), &GenerateOptions::default())
        .unwrap();
    let mut rep = extend_to_bar1(&d).unwrap();
    let (x0, x1, _, _) = rep.bounding_box();
    // widen every bar: long visibilities now cross several bars
    for b in rep.bars.values_mut() {
        b.x = (x0, x1);
    }
    let v = verify_bar1(&rep, &AbstractGraph::of_drawing(&d));
    assert!(v.iter().any(|x| matches!(x, BarViolation::TooManyCrossedBars { .. })));
}

#[test]
fn path_is_rejected() {
    let g = PlaneMultigraph::from_neighbor_rotations(&[vec![1], vec![0, 2], vec![1, 3], vec![2]])
        .unwrap();
    assert_eq!(bar_visibility(&g), Err(VisibilityError::NotBiconnected));
    assert_eq!(st_number(&g, VertexId(0), VertexId(1)), Err(VisibilityError::NotBiconnected));
}

#[test]
fn chain_splits_are_one_two_or_zero_three() {
    let g = dodecahedron();
    let rep = bar_visibility(&g).unwrap();
    assert_eq!(rep.channels.len(), 12);
    for c in &rep.channels {
        let split = (c.left_chain.len().min(c.right_chain.len()), c.left_chain.len().max(c.right_chain.len()));
        assert!(split == (1, 2) || split == (0, 3), "{split:?}");
        assert!(c.strip.0 < c.strip.1);
    }
}

#[test]
fn each_face_contributes_five_chord_visibilities() {
    let d = generate_optimal(OptimalClass::TwoPlanar, dodecahedron(), &GenerateOptions::default())
        .unwrap();
    let rep = extend_to_bar1(&d).unwrap();
    let sk = d.true_planar_skeleton();
    for c in &rep.channels {
        let inside = rep
            .visibilities
            .iter()
            .filter(|(e, v)| !sk.base_edge.contains(e) && c.strip.0 < v.x && v.x < c.strip.1)
            .filter(|(_, v)| {
                let ys = (rep.bars[&c.source].y, rep.bars[&c.target].y);
                ys.0 <= v.y.0 && v.y.1 <= ys.1
            })
            .count();
        assert_eq!(inside, 5, "face {}", c.face);
    }
    let crossing_chords = rep.visibilities.values().filter(|v| v.crossed_bars.len() == 1).count();
    assert!(crossing_chords > 0);
    for (e, v) in &rep.visibilities {
        if sk.base_edge.contains(e) {
            assert!(v.crossed_bars.is_empty());
        }
    }
}
