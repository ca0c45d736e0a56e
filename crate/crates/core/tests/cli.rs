//! The `ulrich` binary end to end.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ulrich(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ulrich"))
        .args(args)
        .env("ULRICH_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(cache: &Path, args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = ulrich(cache, &a);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap_or(-1))
}

#[test]
fn cached_and_fresh_output_match() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--ring", "t^6,t^13,t^28", "--field", "2", "analyze"];
    let fresh = ulrich(dir.path(), &args);
    assert!(fresh.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let cached = ulrich(dir.path(), &args);
    assert_eq!(fresh.stdout, cached.stdout);
    let mut bypass = args.to_vec();
    bypass.push("--no-cache");
    assert_eq!(ulrich(dir.path(), &bypass).stdout, fresh.stdout);
}

#[test]
fn analyze_reports_a_closed_inclusion_relation() {
    let dir = tempfile::tempdir().unwrap();
    let (v, code) = json(
        dir.path(),
        &[
            "--ring",
            "t^6,t^13,t^28",
            "--field",
            "2",
            "--no-cache",
            "analyze",
        ],
    );
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    let set = v["result"]["ulrich_set"].as_array().unwrap();
    assert_eq!(set.len(), 9);
    let rel: Vec<(u64, u64)> = v["result"]["hasse"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_u64().unwrap(), p[1].as_u64().unwrap()))
        .collect();
    for &(a, b) in &rel {
        assert!(!rel.contains(&(b, a)), "antisymmetric");
        for &(c, d) in &rel {
            if b == c {
                assert!(rel.contains(&(a, d)), "transitive");
            }
        }
    }
    assert!(v["result"]["chains"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c.as_array().unwrap().len() == 4));
}

#[test]
fn emitted_generators_are_ulrich_again() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["--ring", "t^3,t^7", "--field", "5", "--no-cache"];
    let (v, _) = json(dir.path(), &[&base[..], &["ulrich", "list"]].concat());
    let set = v["result"]["ulrich_set"].as_array().unwrap();
    assert_eq!(set.len(), 4);
    for entry in set {
        let gens: Vec<&str> = entry["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| g.as_str().unwrap())
            .collect();
        let joined = gens.join(",");
        let (w, code) = json(
            dir.path(),
            &[&base[..], &["ulrich", "check", "--ideal", &joined]].concat(),
        );
        assert_eq!(code, 0);
        assert_eq!(w["result"]["ulrich"], true);
        assert_eq!(w["result"]["lattice"], entry["lattice"]);
    }
}

#[test]
fn spec_file_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("ring.json");
    std::fs::write(
        &spec,
        r#"{"field": 2, "generators": ["t^4", "t^9", "t^15"]}"#,
    )
    .unwrap();
    let s = spec.to_str().unwrap();
    let (v, _) = json(dir.path(), &["--spec", s, "--no-cache", "ggl"]);
    assert_eq!(v["ring"]["field"], 2);
    assert_eq!(v["result"]["c_ulrich"], true);
    let (w, _) = json(
        dir.path(),
        &["--spec", s, "--field", "5", "--no-cache", "ggl"],
    );
    assert_eq!(w["ring"]["field"], 5);
    assert_ne!(
        v["provenance"]["spec_sha256"],
        w["provenance"]["spec_sha256"]
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let code = |args: &[&str]| ulrich(p, args).status.code();
    assert_eq!(
        code(&["--ring", "t^3,t^7", "--field", "4", "analyze"]),
        Some(2)
    );
    assert_eq!(
        code(&["--ring", "t^3,t^7", "--field", "2", "chain", "--ideal", "t^6,t^10"]),
        Some(2)
    );
    assert_eq!(code(&["--ring", "t^0", "--field", "2", "analyze"]), Some(2));
    assert_eq!(
        code(&[
            "--ring",
            "t^4,t^6+t^7",
            "--field",
            "2",
            "--budget",
            "2",
            "ulrich",
            "list"
        ]),
        Some(3)
    );
    assert_eq!(code(&["analyze"]), Some(2));
    let (v, c) = json(p, &["--ring", "t^3,t^7 +", "--field", "2", "analyze"]);
    assert_eq!(c, 2);
    assert_eq!(v["error"]["reason"], "parse");
}

#[test]
fn transport_between_adjacent_ideals() {
    let dir = tempfile::tempdir().unwrap();
    let (v, code) = json(
        dir.path(),
        &[
            "--ring",
            "t^3,t^7,t^8",
            "--field",
            "3",
            "--no-cache",
            "transport",
            "--inner",
            "t^6,t^7,t^8",
            "--outer",
            "t^3,t^7,t^8",
        ],
    );
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["b"], "t^3");
    assert_eq!(v["result"]["pairs"].as_array().unwrap().len(), 1);
}

#[test]
fn selftest_passes_on_a_ggl_ring() {
    let dir = tempfile::tempdir().unwrap();
    let (v, code) = json(
        dir.path(),
        &[
            "--ring",
            "t^4,t^9,t^15",
            "--field",
            "2",
            "--no-cache",
            "selftest",
        ],
    );
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], true);
}
