use std::process::{Command, Stdio};
use std::io::Write;

use kplanar::characterize::OptimalClass;
use kplanar::drawing::{DiagnosticCode, VertexKind};
use kplanar::generate::{
    dodecahedron, generate_optimal, theta_hexangulation, theta_pentagulation, GenerateOptions,
};
use kplanar::io::{self, tutte_layout, DrawingDocument, IoError, LayoutError};
use kplanar::plane::DartId;
use kplanar::{Drawing, PlaneMultigraph};

fn opt2(p: usize) -> Drawing {
    generate_optimal(OptimalClass::TwoPlanar, theta_pentagulation(p).unwrap(), &GenerateOptions::default()).unwrap()
}

fn opt3(p: usize) -> Drawing {
    generate_optimal(OptimalClass::ThreePlanar, theta_hexangulation(p).unwrap(), &GenerateOptions::default()).unwrap()
}

type Pt = (f64, f64);

fn orient(a: Pt, b: Pt, c: Pt) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Proper intersection of two segments, or overlap of distinct points.
fn segments_cross(p: (Pt, Pt), q: (Pt, Pt)) -> bool {
    let eps = 1e-9;
    let d1 = orient(p.0, p.1, q.0);
    let d2 = orient(p.0, p.1, q.1);
    let d3 = orient(q.0, q.1, p.0);
    let d4 = orient(q.0, q.1, p.1);
    ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
}

/// Checks that the layout draws the planarization without crossings.
fn assert_layout_planar(g: &PlaneMultigraph) {
    let layout = tutte_layout(g).unwrap();
    let mut pieces: Vec<(usize, Pt, Pt)> = Vec::new();
    for e in g.edges() {
        let (d, _) = g.edge_darts(e);
        let mut pts = vec![layout.position[g.origin(d).0]];
        pts.extend(layout.bends.get(&e.0).cloned().unwrap_or_default());
        pts.push(layout.position[g.head(d).0]);
        for w in pts.windows(2) {
            pieces.push((e.0, w[0], w[1]));
        }
    }
    for (i, a) in pieces.iter().enumerate() {
        assert!((a.1 .0 - a.2 .0).abs() + (a.1 .1 - a.2 .1).abs() > 1e-9, "degenerate piece of segment {}", a.0);
        for b in &pieces[i + 1..] {
            assert!(!segments_cross((a.1, a.2), (b.1, b.2)), "segments {} and {} cross", a.0, b.0);
        }
    }
}

#[test]
fn round_trip_is_identity_on_canonical_documents() {
    for d in [opt2(2), opt2(6), opt3(1), opt3(3)] {
        let doc = DrawingDocument::from_drawing(&d);
        let text = doc.to_json();
        let back = io::parse_drawing(&text).unwrap();
        assert_eq!(DrawingDocument::from_drawing(&back).to_json(), text);
    }
}

#[test]
fn save_and_load_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.json");
    let d = opt2(2);
    io::save(&d, &path).unwrap();
    let back = io::load(&path).unwrap();
    assert_eq!(DrawingDocument::from_drawing(&back), DrawingDocument::from_drawing(&d));
    assert!(matches!(io::load(dir.path().join("missing.json")), Err(IoError::Io { .. })));
}

#[test]
fn truncated_file_is_a_parse_error() {
    let text = DrawingDocument::from_drawing(&opt2(2)).to_json();
    let cut = &text[..text.len() / 2];
    match io::parse_drawing(cut) {
        Err(IoError::Parse { line, .. }) => assert!(line > 1),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn degree_three_crossing_is_rejected() {
    // every vertex of the dodecahedron has degree 3
    let d = Drawing::from_plane(dodecahedron()).unwrap();
    let mut doc = DrawingDocument::from_drawing(&d);
    doc.vertices[0].kind = VertexKind::Crossing;
    let err = doc.to_drawing().unwrap_err();
    assert!(err.has_code(DiagnosticCode::BadCrossingDegree), "{err}");
}

#[test]
fn inconsistent_dart_origin_is_malformed() {
    let mut doc = DrawingDocument::from_drawing(&opt2(2));
    doc.darts.get_mut(&0).unwrap().origin += 1;
    assert!(matches!(doc.to_drawing(), Err(IoError::Malformed(_))));
}

#[test]
fn layouts_are_planar() {
    for d in [opt2(2), opt2(4), opt3(1), opt3(2)] {
        assert_layout_planar(d.planarization());
    }
    let dd = generate_optimal(OptimalClass::TwoPlanar, dodecahedron(), &GenerateOptions::default()).unwrap();
    assert_layout_planar(dd.planarization());
    assert_layout_planar(&dodecahedron());
}

#[test]
fn svg_counts_for_c5() {
    let svg = io::to_svg(&opt2(2)).unwrap();
    assert_eq!(svg.matches("<line class=\"skeleton\"").count(), 5);
    assert_eq!(svg.matches("<polyline class=\"chord\"").count(), 10);
    assert_eq!(svg, io::to_svg(&opt2(2)).unwrap());
}

#[test]
fn crossing_free_svg_has_no_polylines() {
    let svg = io::to_svg(&Drawing::from_plane(dodecahedron()).unwrap()).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 0);
    assert_eq!(svg.matches("<line").count(), 30);
}

#[test]
fn disconnected_layout_fails() {
    let g = PlaneMultigraph::build(
        vec![vec![DartId(0)], vec![DartId(1)], vec![DartId(2)], vec![DartId(3)]],
        vec![DartId(1), DartId(0), DartId(3), DartId(2)],
    )
    .unwrap();
    let d = Drawing::from_plane(g).unwrap();
    assert_eq!(io::to_svg(&d), Err(LayoutError::Disconnected));
}

#[test]
fn dot_for_p4_optimal() {
    let dot = io::to_dot(&opt3(1));
    assert_eq!(dot.matches(" -- ").count(), 11);
    assert_eq!(dot.matches("crossed=true").count(), 8);
}

fn kplanar() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kplanar"))
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> (i32, String, String) {
    let mut child = kplanar()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn generate_pipes_into_verify() {
    let gen = kplanar().args(["generate", "--class", "2opt", "--skeleton", "theta:2"]).output().unwrap();
    assert_eq!(gen.status.code(), Some(0));
    let (code, out, _) = run_with_stdin(&["verify", "--class", "2opt", "-"], &gen.stdout);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run_with_stdin(&["verify", "--class", "3opt", "-"], &gen.stdout);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] skeleton face lengths"));
}

#[test]
fn generation_is_byte_identical() {
    let a = kplanar().args(["generate", "--class", "3opt", "--skeleton", "theta:3"]).output().unwrap();
    let b = kplanar().args(["generate", "--class", "3opt", "--skeleton", "theta:3"]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_dodecahedron() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let p = path.to_str().unwrap();
    assert_eq!(kplanar::cli::run(["kplanar", "generate", "--class", "2opt", "--skeleton", "dodecahedron", "-o", p]), 0);
    let out = kplanar().args(["analyze", p]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    for want in ["m: 90", "slack k=2: 0", "quasi-planar: true", "fan-planar: true"] {
        assert!(text.lines().any(|l| l == want), "missing {want:?} in\n{text}");
    }
}

#[test]
fn exit_codes() {
    let run = |args: &[&str]| kplanar::cli::run(std::iter::once("kplanar").chain(args.iter().copied()));
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["generate", "--class", "2opt", "--skeleton", "cube"]), 2);
    assert_eq!(run(&["generate", "--class", "4opt", "--skeleton", "theta:2"]), 2);
    assert_eq!(run(&["verify", "--class", "2opt", "/nonexistent/x.json"]), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format_version\": 1,").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]), 3);

    let doc = dir.path().join("p4.json");
    let svg = dir.path().join("p4.svg");
    assert_eq!(run(&["generate", "--class", "3opt", "--skeleton", "theta:1", "-o", doc.to_str().unwrap()]), 0);
    assert_eq!(run(&["export", doc.to_str().unwrap(), "--format", "svg", "-o", svg.to_str().unwrap()]), 0);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    // not simple, so no bar 1-visibility
    assert_eq!(run(&["barvis", doc.to_str().unwrap(), "-o", svg.to_str().unwrap()]), 3);
}
