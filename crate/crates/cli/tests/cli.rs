use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cospan::collars::{Collar, PreCollared};
use cospan::cubemodel::Cube;
use cospan::finspace::{cylinder, FinSpace, SpaceMap};
use cospan::io;
use serde_json::Value;
use tempfile::TempDir;

fn cospan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cospan")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, v: &impl serde::Serialize) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn chain() -> FinSpace {
    FinSpace::new(&["a", "b", "c"], &[("a", "b")]).unwrap()
}

fn square() -> Cube {
    Cube::from_space(&chain()).degeneracy(1).unwrap().degeneracy(2).unwrap()
}

#[test]
fn validate_degree_two_cube() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sq.json", &io::cube_doc(&square()));
    let o = cospan(&["validate", s(&f)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("degree 2"));
}

#[test]
fn invalid_cube_exits_one() {
    let dir = TempDir::new().unwrap();
    let mut doc = io::cube_doc(&square());
    // an arrow into the wrong element breaks commutativity or monotonicity
    let arrow = doc.maps.iter_mut().find(|a| a.assign.contains_key("a")).unwrap();
    arrow.assign.insert("a".into(), "c".into());
    let f = write(&dir, "bad.json", &doc);
    assert_eq!(code(&cospan(&["validate", s(&f)])), 1);
}

#[test]
fn quasi_degeneracy_suite_confirms_expected_failure() {
    let o = cospan(&["suite", "quasi-degeneracy", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("expected-fail-confirmed"));
    let o = cospan(&["suite", "quasi-degeneracy", "--seed", "7", "--count", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["laws"][0]["status"], "expected-fail-confirmed");
}

#[test]
fn suite_output_is_deterministic() {
    let args = ["suite", "lax-units", "--seed", "3", "--count", "4", "--format", "json"];
    assert_eq!(stdout(&cospan(&args)), stdout(&cospan(&args)));
}

#[test]
fn concat_mismatch_reports_first_position() {
    let dir = TempDir::new().unwrap();
    let u = Cube::from_space(&chain()).degeneracy(1).unwrap();
    let v = Cube::from_space(&FinSpace::point("p")).degeneracy(1).unwrap();
    let (fu, fv) = (write(&dir, "u.json", &io::cube_doc(&u)), write(&dir, "v.json", &io::cube_doc(&v)));
    let o = cospan(&["concat", s(&fu), s(&fv), "--dir", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("faces do not match at ()"), "{}", stderr(&o));
    let w: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["right_minus_face"]["spaces"][""]["elements"][0], "p");
}

#[test]
fn concat_and_faces_match_the_library() {
    let dir = TempDir::new().unwrap();
    let u = square();
    let f = write(&dir, "sq.json", &io::cube_doc(&u));
    let out = dir.path().join("w.json");
    let o = cospan(&["concat", s(&f), s(&f), "--dir", "2", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let doc: io::CubeDoc = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(io::cube_from_doc(&doc).unwrap(), u.concat(&u, 2).unwrap());
    let o = cospan(&["face", s(&f), "--dir", "1", "--sign", "-"]);
    let doc: io::CubeDoc = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(io::cube_from_doc(&doc).unwrap(), u.face(1, cospan::cubemodel::Sign::Minus).unwrap());
}

#[test]
fn collared_degeneracy_passes_collar_check() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", &io::space_doc(&chain()));
    let e = dir.path().join("e.json");
    assert_eq!(code(&cospan(&["degen", s(&x), "--dir", "1", "--collared", "--out", s(&e)])), 0);
    let o = cospan(&["collar-check", s(&e)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = cospan(&["concat", s(&e), s(&e), "--dir", "1", "--format", "text"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn overlapping_collars_fail_the_check() {
    let dir = TempDir::new().unwrap();
    let x = FinSpace::point("*");
    let cyl = cylinder(&x, 1).unwrap();
    let flip = SpaceMap::from_fn(&cyl.space, &cyl.space, |e| cyl.at(0, 2 - cyl.level(e)));
    let cube = Cube::cospan(&cyl.d_minus, &cyl.d_plus).unwrap();
    let collars = vec![vec![Some(Collar { k: 1, map: SpaceMap::identity(&cyl.space) }), None, Some(Collar { k: 1, map: flip })]];
    let u = PreCollared::new(cube, collars).unwrap();
    let f = write(&dir, "u.json", &io::precollared_doc(&u));
    let o = cospan(&["collar-check", s(&f)]);
    assert_eq!(code(&o), 1);
    let w: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["diagnosis"], "disjointness");
}

#[test]
fn export_then_import_round_trips() {
    let dir = TempDir::new().unwrap();
    let files = [
        write(&dir, "x.json", &io::space_doc(&chain())),
        write(&dir, "sq.json", &io::cube_doc(&square())),
        write(&dir, "f.json", &io::map_doc(&SpaceMap::identity(&chain()))),
    ];
    for f in &files {
        let back = dir.path().join("back.json");
        assert_eq!(code(&cospan(&["export-dot", s(f), "--format", "json", "--out", s(&back)])), 0);
        let o = cospan(&["compare", s(f), s(&back)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let dot = stdout(&cospan(&["export-dot", s(f)]));
        assert!(dot.starts_with("digraph"), "{dot}");
        assert!(dot.trim_end().ends_with('}'));
    }
}

#[test]
fn compare_spaces_up_to_homeomorphism() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &io::space_doc(&chain()));
    let b = write(&dir, "b.json", &io::space_doc(&FinSpace::new(&["x", "y", "z"], &[("z", "y")]).unwrap()));
    let c = write(&dir, "c.json", &io::space_doc(&FinSpace::point("p")));
    assert_eq!(code(&cospan(&["compare", s(&a), s(&b)])), 0);
    assert_eq!(code(&cospan(&["compare", s(&a), s(&c)])), 1);
}

#[test]
fn core_removes_beat_points() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &io::space_doc(&chain()));
    let o = cospan(&["core", s(&a)]);
    let doc: io::SpaceDoc = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.elements.len(), 2);
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{").unwrap();
    assert_eq!(code(&cospan(&["validate", s(&bad)])), 2);
    assert_eq!(code(&cospan(&["suite", "no-such-suite"])), 2);
    assert_eq!(code(&cospan(&["face", s(&bad)])), 2);
    assert_eq!(code(&cospan(&["frobnicate"])), 2);
    let x = write(&dir, "x.json", &io::space_doc(&chain()));
    assert_eq!(code(&cospan(&["transpose", s(&x), "--dir", "1"])), 2);
    assert_eq!(code(&cospan(&["collar-check", s(&x), "--k", "0"])), 2);
}
