//! End-to-end checks of the command-line interface: exit codes, the verdict
//! JSON envelope, determinism under a fixed seed, and the shipped sample
//! inputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rigicheck"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn octahedron_not_globally_rigid_planar() {
    let out = run(&[
        "global-rigidity",
        "--complex",
        fixture("octahedron.fct").to_str().unwrap(),
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "rigicheck/1");
    assert_eq!(v["verdict"], serde_json::json!(false));
    assert_eq!(v["witnesses"]["planar"], serde_json::json!(true));
}

#[test]
fn k66_alg81_inconclusive() {
    let out = run(&[
        "alg81",
        "--graph",
        fixture("k66.edg").to_str().unwrap(),
        "--k",
        "2",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], serde_json::json!("inconclusive"));
    assert_eq!(v["witnesses"]["reason"], serde_json::json!("clique set empty"));
}

#[test]
fn k66_globally_rigid_by_stress_test() {
    let out = run(&[
        "global-rigidity",
        "--graph",
        fixture("k66.edg").to_str().unwrap(),
        "--dim",
        "3",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn lbt_icosahedron_extremal_planar() {
    let out = run(&["lbt", "--complex", fixture("icosahedron.fct").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        v["witnesses"]["classification"],
        serde_json::json!("plane-triangulation")
    );
}

#[test]
fn torus_globally_rigid_with_audit() {
    let out = run(&[
        "global-rigidity",
        "--complex",
        fixture("k7torus.fct").to_str().unwrap(),
        "--seed",
        "11",
        "--audit",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["witnesses"]["ght_agrees"], serde_json::json!(true));
    assert_eq!(v["audit"]["all_match"], serde_json::json!(true));
}

#[test]
fn identical_seed_identical_bytes() {
    let oct = fixture("octahedron.fct");
    let args = [
        "rigidity",
        "--complex",
        oct.to_str().unwrap(),
        "--seed",
        "20240817",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "stdout differs between identical runs");
}

#[test]
fn parse_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fct");
    std::fs::write(&bad, "1 2 x\n").unwrap();
    let out = run(&["circuit-check", "--complex", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // precondition violation: lbt on a non-circuit
    let single = dir.path().join("single.fct");
    std::fs::write(&single, "1 2 3\n").unwrap();
    let out = run(&["lbt", "--complex", single.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn decompose_emits_parts() {
    let out = run(&[
        "decompose",
        "--complex",
        fixture("octahedron.fct").to_str().unwrap(),
        "--edge",
        "1,2",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["witnesses"]["edge"], serde_json::json!([1, 2]));
    assert!(v["witnesses"]["parts"].as_array().unwrap().len() >= 1);
    assert_eq!(
        v["witnesses"]["verification"]["failures"],
        serde_json::json!([])
    );
}

#[test]
fn blocks_of_hexahedron() {
    let out = run(&[
        "blocks",
        "--complex",
        fixture("hexahedron.fct").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let blocks = v["witnesses"]["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
}

#[test]
fn enumerate_writes_atlas() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("atlas");
    let out = run(&[
        "enumerate",
        "--k",
        "2",
        "--max-vertices",
        "5",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let index: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("index.json")).unwrap())
            .unwrap();
    assert_eq!(index["count"], serde_json::json!(2));
    assert!(out_dir.join("circuit_0000.fct").exists());
    // every listed circuit parses back
    for entry in index["circuits"].as_array().unwrap() {
        let f = out_dir.join(entry["file"].as_str().unwrap());
        let text = std::fs::read_to_string(f).unwrap();
        assert!(rigicheck::io::parse_facet_file(&text).unwrap().is_circuit());
    }
}

#[test]
fn reconstruct_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let k7 = dir.path().join("k7.edg");
    let mut edges = String::new();
    for a in 1..=7u32 {
        for b in (a + 1)..=7 {
            edges.push_str(&format!("{a} {b}\n"));
        }
    }
    std::fs::write(&k7, edges).unwrap();
    let p = dir.path().join("p.json");
    let q = dir.path().join("q.json");
    let out = run(&[
        "sample-framework", "--graph", k7.to_str().unwrap(),
        "--dim", "4", "--seed", "11", "--to", p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "sample-framework", "--graph", k7.to_str().unwrap(),
        "--dim", "4", "--seed", "12",
        "--affine-of", p.to_str().unwrap(), "--to", q.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "reconstruct", "--graph", k7.to_str().unwrap(), "--dim", "4",
        "--p", p.to_str().unwrap(), "--q", q.to_str().unwrap(), "--seed", "13",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    // unrelated generic q is rejected via stress-space inequality
    let q2 = dir.path().join("q2.json");
    let out = run(&[
        "sample-framework", "--graph", k7.to_str().unwrap(),
        "--dim", "4", "--seed", "99", "--to", q2.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "reconstruct", "--graph", k7.to_str().unwrap(), "--dim", "4",
        "--p", p.to_str().unwrap(), "--q", q2.to_str().unwrap(), "--seed", "13",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn shipped_fixtures_match_library() {
    for (file, expect) in [
        ("octahedron.fct", rigicheck::fixtures::octahedron()),
        ("icosahedron.fct", rigicheck::fixtures::icosahedron()),
        ("k7torus.fct", rigicheck::fixtures::k7_torus()),
        ("hexahedron.fct", rigicheck::fixtures::hexahedron()),
    ] {
        let text = std::fs::read_to_string(fixture(file)).unwrap();
        let parsed = rigicheck::io::parse_facet_file(&text).unwrap();
        assert!(
            rigicheck::simplicial::iso::is_isomorphic(&parsed, &expect),
            "{file} differs from the library fixture"
        );
    }
    let text = std::fs::read_to_string(fixture("k66.edg")).unwrap();
    assert_eq!(
        rigicheck::io::parse_edge_file(&text).unwrap(),
        rigicheck::fixtures::k66()
    );
}
