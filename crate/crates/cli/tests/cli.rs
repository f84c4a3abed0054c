use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn scat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scat")).args(args).output().expect("binary runs")
}

fn scat_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_scat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not a report ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn cycle(n: usize) -> Value {
    let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let facets: Vec<Vec<String>> = (0..n).map(|i| vec![vs[i].clone(), vs[(i + 1) % n].clone()]).collect();
    json!({ "vertices": vs, "facets": facets })
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn circle_has_category_one_and_its_certificate_checks() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.json", &cycle(4));
    let cert = dir.path().join("cert.json");
    let out = scat(&["scat", "--complex", s(&c4), "--certificate", s(&cert)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["value"], 1);
    assert!(r["witnesses"]["cover"].is_object());

    let certs: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let cover = write(dir.path(), "cover.json", &certs["cover"]);
    let out = scat(&["verify-certificate", "--file", s(&cover)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["ok"], true);
}

#[test]
fn cover_missing_a_facet_is_rejected_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.json", &cycle(4));
    let cert = dir.path().join("cert.json");
    assert_eq!(scat(&["scat", "--complex", s(&c4), "--certificate", s(&cert)]).status.code(), Some(0));
    let certs: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let mut cover = certs["cover"].clone();
    let dropped: Vec<u64> =
        cover["cover"]["parts"][0].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    let kept: Vec<u64> = cover["cover"]["parts"][1].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    let lost = *dropped.iter().find(|f| !kept.contains(f)).expect("the first part has a facet of its own");
    cover["cover"]["parts"].as_array_mut().unwrap().remove(0);
    cover["cover"]["chains"].as_array_mut().unwrap().remove(0);
    cover["value"] = json!(0);
    let bad = write(dir.path(), "bad.json", &cover);

    let out = scat(&["verify-certificate", "--file", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["results"]["ok"], false);
    let facet = &cover["map"]["domain"]["facets"][lost as usize];
    let name = format!("[{}]", facet.as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect::<Vec<_>>().join(","));
    let detail = r["results"]["detail"].as_str().unwrap();
    assert!(detail.contains(&name), "{detail} should name {name}");
}

#[test]
fn cone_pipes_into_scat() {
    let cone = scat_stdin(&["cone"], cycle(5).to_string().as_bytes());
    assert_eq!(cone.status.code(), Some(0));
    let out = scat_stdin(&["scat"], &cone.stdout);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["value"], 0);
}

#[test]
fn exit_codes_follow_the_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.json", &cycle(4));
    let missing = dir.path().join("missing.json");
    assert_eq!(scat(&["scat", "--complex", s(&missing)]).status.code(), Some(1));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let out = scat(&["scat", "--complex", s(&garbage)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not JSON"));

    let disconnected = write(dir.path(), "two.json", &json!({ "vertices": ["a", "b"], "facets": [["a"], ["b"]] }));
    assert_eq!(scat(&["scat", "--complex", s(&disconnected)]).status.code(), Some(1));

    assert_eq!(scat(&["scat", "--no-such-flag"]).status.code(), Some(1));

    let out = scat(&["scat", "--complex", s(&c4), "--max-states", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["results"]["value"], "unknown");
    assert!(!r["limit_hits"].as_array().unwrap().is_empty());
}

#[test]
fn non_simplicial_map_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let edge = json!({ "vertices": ["a", "b"], "facets": [["a", "b"]] });
    let two = json!({ "vertices": ["x", "y", "z"], "facets": [["x", "y"], ["y", "z"]] });
    let map = write(dir.path(), "m.json", &json!({ "domain": edge, "codomain": two, "map": { "a": "x", "b": "z" } }));
    let out = scat(&["scat-map", "--map", s(&map)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_is_deterministic_and_counts_match() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(scat(&["generate", "--max-vertices", "4", "--out", s(&a)]).status.code(), Some(0));
    assert_eq!(scat(&["generate", "--max-vertices", "4", "--out", s(&b)]).status.code(), Some(0));
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let corpus: Value = serde_json::from_slice(&x).unwrap();
    let counts = corpus["counts"].as_object().unwrap();
    let total: u64 = counts.values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total as usize, corpus["complexes"].as_array().unwrap().len());
    // connected complexes on 1..=4 vertices up to isomorphism
    assert_eq!(counts["1"], 1);
    assert_eq!(counts["2"], 1);
    assert_eq!(counts["3"], 3);
}

#[test]
fn quick_verify_passes_and_is_reproducible() {
    let one = scat(&["verify", "--quick"]);
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    let two = scat(&["verify", "--quick"]);
    let (r1, r2) = (report(&one), report(&two));
    assert_eq!(r1["results"]["all_pass"], true);
    assert_eq!(r1["results"]["suite_digest"], r2["results"]["suite_digest"]);
    assert_eq!(r1["digest"], r2["digest"]);
}

#[test]
fn injected_fault_fails_verify_with_counterexample_files() {
    let dir = tempfile::tempdir().unwrap();
    let cx = dir.path().join("cx");
    let out = scat(&["verify", "--quick", "--sections", "contiguity,category", "--fault", "vertexwise-contiguity", "--counterexamples", s(&cx)]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["results"]["all_pass"], false);
    let failed: Vec<&str> = r["results"]["failed"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(failed.contains(&"contiguity/class_decision_matches_naive"), "{failed:?}");
    let files: Vec<_> = std::fs::read_dir(&cx).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert!(files.iter().any(|f| f == "contiguity__class_decision_matches_naive.json"), "{files:?}");
    let body: Value =
        serde_json::from_slice(&std::fs::read(cx.join("contiguity__class_decision_matches_naive.json")).unwrap()).unwrap();
    assert!(!body.is_null());
}

#[test]
fn verify_on_a_generated_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.json");
    assert_eq!(scat(&["generate", "--max-vertices", "3", "--out", s(&corpus)]).status.code(), Some(0));
    let out = scat(&["verify", "--quick", "--universe", s(&corpus), "--sections", "complexes,category"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn finite_space_commands() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.json", &cycle(4));
    let chi = scat(&["chi", "--complex", s(&c4)]);
    assert_eq!(chi.status.code(), Some(0));
    let out = scat_stdin(&["cat-space"], &chi.stdout);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["value"], 1);

    let k = scat_stdin(&["order-complex"], &chi.stdout);
    assert_eq!(k.status.code(), Some(0));
    let out = scat_stdin(&["scat"], &k.stdout);
    assert_eq!(report(&out)["results"]["value"], 1);
}

#[test]
fn projection_is_a_fibration_with_equivalent_fibers() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "l.json", &cycle(3));
    let k = write(dir.path(), "k.json", &json!({ "vertices": ["a", "b"], "facets": [["a", "b"]] }));
    let prod = scat(&["product", "--left", s(&k), "--right", s(&l)]);
    assert_eq!(prod.status.code(), Some(0));
    let r = report(&prod);
    let p1 = &r["results"]["p1"];
    assert!(p1.is_object(), "{r}");
    let map = write(dir.path(), "p1.json", p1);
    let out = scat(&["fibration-check", "--map", s(&map), "--universe-vertices", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["results"]["verdict"]["status"], "verified_over_universe");
}
