use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flatlie_core::catalog::{classify4, FourDimClass};
use flatlie_core::format;
use flatlie_core::metric::Signature;

fn flatlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatlie")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reports_flat_l64() {
    let dir = tempfile::tempdir().unwrap();
    let shown = flatlie(&["catalog", "show", "L6_4"]);
    assert_eq!(shown.status.code(), Some(0));
    let path = write(dir.path(), "l64.txt", &stdout(&shown));
    let o = flatlie(&["check", s(&path)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("flat: yes; signature: (2,4)"), "{out}");
    assert!(out.contains("class: 2"));
    assert!(out.contains("RESULT: PASS"));
}

#[test]
fn check_rejects_euclidean_heisenberg() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "h3.txt", "dim 3\nbracket 1 2 = 3:1\ng 1 1 = 1\ng 2 2 = 1\ng 3 3 = 1\n");
    let o = flatlie(&["check", s(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("flat: no"));
}

#[test]
fn malformed_files_exit_2_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.txt", "dim 3\nbracket 1 x = 3:1\n");
    let o = flatlie(&["check", s(&path)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let jacobi = write(dir.path(), "jacobi.txt", "dim 3\nbracket 1 2 = 3:1\nbracket 1 3 = 1:1\ng 1 1 = 1\ng 2 2 = 1\ng 3 3 = 1\n");
    assert_eq!(flatlie(&["check", s(&jacobi)]).status.code(), Some(2));
    assert_eq!(flatlie(&["check", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn extend_abelian_by_zero_quadruple_is_neutral() {
    let dir = tempfile::tempdir().unwrap();
    let base = write(dir.path(), "base.txt", "dim 2\ng 1 1 = -1\ng 2 2 = 1\nmu = 0\nb0 = 0,0\n");
    let o = flatlie(&["extend", s(&base)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let inst = format::parse(&stdout(&o)).unwrap();
    assert_eq!(inst.metric.signature(), Signature::new(2, 0, 2));
    assert!(inst.metric.algebra().is_abelian());
}

#[test]
fn extend_lorentzian_plane_gives_filiform() {
    let dir = tempfile::tempdir().unwrap();
    let base = write(dir.path(), "base.txt", "dim 2\ng 1 2 = 1\n");
    let quad = write(dir.path(), "quad.txt", "mu = 0\nb0 = 0,1\nxi 1 2 = 1\nD 1 2 = 1\n");
    let o = flatlie(&["extend", s(&base), s(&quad)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let inst = format::parse(&text).unwrap();
    assert_eq!(classify4(inst.metric.algebra()), Some(FourDimClass::Filiform));
    assert_eq!(format::print(&inst), text);

    let checked = write(dir.path(), "ext.txt", &text);
    assert_eq!(flatlie(&["check", s(&checked)]).status.code(), Some(0));
}

#[test]
fn extend_rejects_inadmissible_quadruple() {
    let dir = tempfile::tempdir().unwrap();
    let base = write(dir.path(), "base.txt", "dim 2\ng 1 2 = 1\n");
    let quad = write(dir.path(), "quad.txt", "D 1 2 = 1\n");
    let o = flatlie(&["extend", s(&base), s(&quad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("skew"), "{}", stderr(&o));

    let missing = flatlie(&["extend", s(&base)]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn extract_then_extend_is_canonical_identity() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["L6_4", "L6_3", "filiform4", "L6_5(-1)"] {
        let input = write(dir.path(), "in.txt", &stdout(&flatlie(&["catalog", "show", name])));
        let adapted = dir.path().join("adapted.txt");
        let o = flatlie(&["extract", s(&input), "--adapted-out", s(&adapted)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let base = write(dir.path(), "base.txt", &stdout(&o));
        let ext = flatlie(&["extend", s(&base)]);
        assert_eq!(ext.status.code(), Some(0), "{name}: {}", stderr(&ext));
        assert_eq!(stdout(&ext), fs::read_to_string(&adapted).unwrap(), "{name}");
    }
}

#[test]
fn extract_l64_gives_lorentzian_base() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.txt", &stdout(&flatlie(&["catalog", "show", "L6_4"])));
    let o = flatlie(&["extract", s(&input), "--e", "0,0,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let base = format::parse(&stdout(&o)).unwrap();
    assert_eq!(base.metric.dim(), 4);
    assert_eq!(base.metric.signature(), Signature::new(1, 0, 3));

    let wrong = flatlie(&["extract", s(&input), "--e", "1,0,0,0,0,0"]);
    assert_eq!(wrong.status.code(), Some(1));
    let short = flatlie(&["extract", s(&input), "--e", "1,0"]);
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn extract_fails_without_isotropic_center() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "e2.txt", "dim 2\ng 1 1 = 1\ng 2 2 = 1\n");
    let o = flatlie(&["extract", s(&input)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn catalog_lists_and_shows_entries() {
    let list = stdout(&flatlie(&["catalog", "list"]));
    for name in ["H3", "H5", "L6_4", "L6_5(-1)", "filiform4"] {
        assert!(list.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let shown = stdout(&flatlie(&["catalog", "show", "L6_5(-1)"]));
    assert!(shown.starts_with("field sqrt 15\n"), "{shown}");
    assert!(format::parse(&shown).is_ok());
    assert_eq!(flatlie(&["catalog", "show", "nope"]).status.code(), Some(2));
}

#[test]
fn audit_json_summary() {
    let o = flatlie(&["audit", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["warn"], 2);
    assert_eq!(v["fail"], 0);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"07g_L5_4+L1_candidates"));

    let text = stdout(&flatlie(&["audit"]));
    assert_eq!(text.lines().filter(|l| l.contains(": WARN")).count(), 2);
    assert!(text.ends_with("RESULT: PASS\n"));
}
