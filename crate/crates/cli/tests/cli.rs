use std::path::PathBuf;
use std::process::{Command, Output};

fn rlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlab"))
        .args(args)
        .env_remove("RLAB_OEIS_PATH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture() -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "data", "oeis-fixture.txt"]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn series_catalan() {
    let o = rlab(&["series", "catalan", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "series: 6; 1, 1, 2, 5, 14, 42, 132");
}

#[test]
fn series_needs_second_operand() {
    let o = rlab(&["series", "mul", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn recur_iterate_matches_closed_form() {
    let o = rlab(&["--format", "records", "recur", "catalan-schroeder", "1,1,1", "--terms", "8"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("iterate=1,1,1,2,4,9,21,51"), "{s}");
    assert!(s.contains("agree=true"), "{s}");
}

#[test]
fn unknown_family_is_usage_error() {
    let o = rlab(&["recur", "no-such-family", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hankel_with_somos() {
    // Large Schroeder numbers: Hankel transform 2^C(n+1,2).
    let o = rlab(&["hankel", "1,2,6,22,90,394,1806,8558,41586,206098,1037718,5293446", "--somos"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("hankel: 1, 2, 8, 64, 1024, 32768"), "{s}");
    assert!(s.contains("somos:"), "{s}");
}

#[test]
fn jfrac_of_catalan() {
    let o = rlab(&["--format", "records", "jfrac", "1,1,2,5,14,42,132,429"]);
    let s = stdout(&o);
    assert!(s.contains("alpha=1,2,2"), "{s}");
    assert!(s.contains("beta=1,1,1"), "{s}");
}

#[test]
fn somos_law_pass_and_fail() {
    let ok = rlab(&["somos", "1,1,1,1,2,3,7,23,59,314", "--law", "1,1"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = rlab(&["somos", "1,1,1,1,2,3,7,23,59,314", "--law", "1,2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn conjecture_run_and_sweep() {
    let o = rlab(&["conjecture", "run", "schroeder-somos", "1,2,1", "--depth", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = rlab(&["--format", "records", "conjecture", "sweep", "schroeder-hankel", "--grid", "1,1,1;2,-1,3", "--depth", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("failing_points=0"));
}

#[test]
fn unknown_conjecture_is_usage_error() {
    assert_eq!(rlab(&["conjecture", "run", "nope", "1"]).status.code(), Some(2));
}

#[test]
fn repro_single_case() {
    let list = stdout(&rlab(&["repro", "--list"]));
    let first = list.lines().next().unwrap().split(':').next().unwrap().to_string();
    let o = rlab(&["repro", "--case", &first]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1/1 cases pass"));
    assert_eq!(rlab(&["repro", "--case", "missing-case"]).status.code(), Some(2));
}

#[test]
fn oeis_identifies_fixture_entry() {
    let path = fixture();
    let o = rlab(&["oeis", "1,2,6,22,90,394", "--oeis", &path]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("A006318 offset 0"));
    let o = Command::new(env!("CARGO_BIN_EXE_rlab"))
        .args(["--format", "records", "oeis", "1,1,2,4,8,17,37,82"])
        .env("RLAB_OEIS_PATH", &path)
        .output()
        .unwrap();
    assert!(stdout(&o).contains("match=A004148 offset=0"), "{}", stdout(&o));
}

#[test]
fn oeis_without_database_fails() {
    assert_eq!(rlab(&["oeis", "1,2,3"]).status.code(), Some(2));
    assert_eq!(rlab(&["oeis", "1,2,3", "--oeis", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn curve_pipeline_records() {
    let o = rlab(&["--format", "records", "curve", "--curve", "0,0,1,-1,0", "--order", "8"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("n=2 x=1 y=0"), "{s}");
    assert!(s.contains("tail=8; 1, 1, 3, 8, 23, 68, 207, 644, 2040"), "{s}");
}

#[test]
fn bad_flag_exits_two() {
    assert_eq!(rlab(&["hankel"]).status.code(), Some(2));
    assert_eq!(rlab(&["series", "show", "1,x"]).status.code(), Some(2));
}
