use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn subquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subquad"))
        .args(args)
        .env_remove("SUBQUAD_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_prints_the_first_disjoint_pair() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.sf", "# {a} {b} {a,b}\nsf 3 3\n1 0\n1 1\n2 0 1\n");
    let o = subquad(&["solve", "two-disjoint-sets", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true witness 0 1\n");

    let o = subquad(&["solve", "two-disjoint-sets", &f, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"]["answer"], true);
    assert_eq!(v["verdict"]["witness"], serde_json::json!([0, 1]));
}

#[test]
fn verify_suite_passes() {
    let o = subquad(&["verify", "ksat-star", "big-two-disjoint-sets", "--count", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));

    let o = subquad(&["verify", "sperner-family", "maximal-elements", "--count", "30", "--planted", "no", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], 30);
    assert_eq!(v["yes_instances"], 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(subquad(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(subquad(&["solve", "no-such-problem", "x"]).status.code(), Some(2));
    assert_eq!(subquad(&["verify", "two-disjoint-sets", "local-string-align"]).status.code(), Some(2));
    assert_eq!(subquad(&["closure"]).status.code(), Some(2));
}

#[test]
fn data_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.sf", "sf 2 2\n1 0\n");
    let o = subquad(&["solve", "two-disjoint-sets", &bad]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
    let missing = dir.path().join("nope.dg");
    assert_eq!(subquad(&["check-transitive", missing.to_str().unwrap()]).status.code(), Some(3));
    let range = write(dir.path(), "r.dg", "dg 2 1\n0 7\n");
    assert_eq!(subquad(&["closure", &range]).status.code(), Some(3));
}

#[test]
fn closure_emits_graph_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p.dg", "dg 4 3\n2 3\n0 1\n1 2\n");
    for method in ["gk", "matrix", "hybrid"] {
        let o = subquad(&["closure", &g, "--method", method]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert!(out.starts_with("dg 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"), "{out}");
        assert!(out.contains("# edges_in=3 edges_out=6 method="));
    }
    let o = subquad(&["closure", &g, "--method", "hybrid", "--omega", "3.5"]);
    assert_eq!(o.status.code(), Some(2));

    // The closure of a cycle is a clique with loops.
    let c = write(dir.path(), "c.dg", "dg 2 2\n0 1\n1 0\n");
    let out = stdout(&subquad(&["closure", &c]));
    assert!(out.starts_with("dg 2 4\n0 0\n0 1\n1 0\n1 1\n"), "{out}");
}

#[test]
fn transitivity_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let yes = write(dir.path(), "t.dg", "dg 3 3\n0 1\n1 2\n0 2\n");
    let no = write(dir.path(), "n.dg", "dg 3 2\n0 1\n1 2\n");
    assert_eq!(subquad(&["check-transitive", &yes]).status.code(), Some(0));
    let o = subquad(&["check-transitive", &no]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not transitive witness 0 1 2\n");
}

#[test]
fn comparability_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.ug", "ug 4 4\n0 1\n1 2\n2 3\n3 0\n");
    let o = subquad(&["check-comparability", &c4]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let orient = out.strip_prefix("comparability\n").unwrap();
    let d = write(dir.path(), "o.dg", orient);
    assert_eq!(subquad(&["check-transitive", &d]).status.code(), Some(0));

    let c5 = write(dir.path(), "c5.ug", "ug 5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let o = subquad(&["check-comparability", &c5, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["comparability"], false);
}

#[test]
fn generation_is_byte_identical_under_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.sf");
    let b = dir.path().join("b.sf");
    for p in [&a, &b] {
        let o = subquad(&["gen", "two-covering", "--plant", "no", "--seed", "41", "-o", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let o = subquad(&["solve", "two-covering", a.to_str().unwrap()]);
    assert_eq!(stdout(&o), "false\n");
    assert_eq!(subquad(&["gen", "local-string-align", "--plant", "yes"]).status.code(), Some(3));
}

#[test]
fn reduce_writes_a_solvable_target() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("s.sf");
    let out = dir.path().join("t.sf");
    subquad(&["gen", "sperner-family", "--plant", "yes", "--seed", "5", "-o", src.to_str().unwrap()]);
    let o = subquad(&["reduce", "sperner-family", "maximal-elements", src.to_str().unwrap(), out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("size_in="));
    let o = subquad(&["solve", "maximal-elements", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = subquad(&["reduce", "two-disjoint-sets", "sperner-family", src.to_str().unwrap(), out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_text_and_json_agree() {
    let args = ["bench", "--family", "constant", "--min-exp", "6", "--max-exp", "9", "--repeats", "1", "--seed", "1"];
    let text = stdout(&subquad(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&subquad(&json_args).stdout).unwrap();
    let works: Vec<u64> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    let json_works: Vec<u64> = v["series"].as_array().unwrap().iter().map(|p| p["work_counter"].as_u64().unwrap()).collect();
    assert_eq!(works, json_works);
    assert_eq!(works, vec![21, 42, 85, 170]);
    assert!(text.contains("# work_fit exponent="));
}
