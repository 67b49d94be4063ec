use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pizza-lab")).args(args).output().expect("spawn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn pizza() -> Value {
    json!({
        "p": 3,
        "q": ["3", "3", "4", "3/2"],
        "beta": ["1", "3", "3/2"],
        "mu": [
            {"kind": "point"},
            {"kind": "affine", "a": "1/2", "b": "3/2"},
            {"kind": "affine", "a": "1", "b": "0"}
        ]
    })
}

fn realize_input(sign: [&str; 2]) -> Value {
    json!({"pizza": pizza(), "triple": {"sigma": [1, 2], "upsilon": [1, 2], "sign": sign}})
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn realized(dir: &TempDir) -> PathBuf {
    let input = write(dir.path(), "in.json", &realize_input(["+", "-"]));
    let out = dir.path().join("out");
    fs::create_dir(&out).unwrap();
    let o = run(&["realize", s(&input), "--out-dir", s(&out), "--dot"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    out
}

fn read(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn realize_writes_bundle_and_embedding() {
    let dir = TempDir::new().unwrap();
    let out = realized(&dir);
    let bundle = read(&out.join("bundle.json"));
    assert_eq!(bundle["varpi"], json!([0, 1, 3, 2, 4]));
    assert!(out.join("embedding.json").is_file());
    assert!(fs::read_to_string(out.join("tord.dot")).unwrap().starts_with("graph tord"));
}

#[test]
fn reduce_leaves_a_minimal_pizza_alone() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "p.json", &pizza());
    let out = dir.path().join("r.json");
    let o = run(&["reduce", s(&input), "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(read(&out), pizza());
    assert_eq!(code(&run(&["validate", s(&input)])), 0);
}

#[test]
fn reduce_merges_a_reducible_pizza() {
    let dir = TempDir::new().unwrap();
    let p = json!({
        "p": 2,
        "q": ["2", "2", "2"],
        "beta": ["2", "2"],
        "mu": [{"kind": "point"}, {"kind": "point"}]
    });
    let input = write(dir.path(), "p.json", &p);
    let out = dir.path().join("r.json");
    let o = run(&["reduce", s(&input), "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("merge slices"), "{}", stdout(&o));
    assert_eq!(read(&out)["p"], json!(1));
}

#[test]
fn zero_denominator_is_a_parse_error_naming_the_field() {
    let dir = TempDir::new().unwrap();
    let mut p = pizza();
    p["q"][3] = json!("3/0");
    let input = write(dir.path(), "bad.json", &p);
    let o = run(&["validate", s(&input)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("q[3]"), "{}", stderr(&o));
}

#[test]
fn missing_input_and_missing_out_dir_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(&["validate", s(&dir.path().join("nope.json"))])), 2);
    let input = write(dir.path(), "in.json", &realize_input(["+", "-"]));
    let o = run(&["realize", s(&input), "--out-dir", s(&dir.path().join("absent"))]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn inadmissible_triple_exits_3() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "in.json", &realize_input(["-", "-"]));
    let o = run(&["realize", s(&input), "--out-dir", s(dir.path())]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(!dir.path().join("bundle.json").exists());
}

#[test]
fn invalid_pizza_exits_1() {
    let dir = TempDir::new().unwrap();
    let mut p = pizza();
    p["beta"][1] = json!("5");
    let input = write(dir.path(), "bad.json", &p);
    assert_eq!(code(&run(&["validate", s(&input)])), 1);
}

#[test]
fn equiv_detects_a_flipped_sign() {
    let dir = TempDir::new().unwrap();
    let out = realized(&dir);
    let a = out.join("bundle.json");
    let o = run(&["equiv", s(&a), s(&a)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "equivalent");

    let mut b = read(&a);
    b["sign"][1] = json!("+");
    let derived = b.as_object_mut().unwrap();
    derived.remove("omega");
    derived.remove("varpi");
    let b = write(dir.path(), "flipped.json", &b);
    let o = run(&["equiv", s(&a), s(&b)]);
    assert_eq!(code(&o), 1);
    assert!(format!("{}{}", stdout(&o), stderr(&o)).contains("sign[2]"), "{}", stdout(&o));
}

#[test]
fn equiv_rejects_stale_derived_fields() {
    let dir = TempDir::new().unwrap();
    let out = realized(&dir);
    let a = out.join("bundle.json");
    let mut b = read(&a);
    b["sign"][1] = json!("+");
    let b = write(dir.path(), "stale.json", &b);
    let o = run(&["equiv", s(&a), s(&b)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("omega"), "{}", stderr(&o));
}

#[test]
fn verify_accepts_a_fresh_realization() {
    let dir = TempDir::new().unwrap();
    let out = realized(&dir);
    let report = dir.path().join("report.json");
    let o = run(&["verify", s(&out.join("embedding.json")), "-o", s(&report)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = read(&report);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passes"] == json!(true)));
}

#[test]
fn verify_rejects_a_perturbed_theta_exponent() {
    let dir = TempDir::new().unwrap();
    let out = realized(&dir);
    let mut e = read(&out.join("embedding.json"));
    let arc = e["arcs_t_prime"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|a| a["name"].as_str().unwrap().starts_with("theta"))
        .expect("a theta arc");
    let term = arc["coords"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .skip(1)
        .find_map(|c| c.as_array_mut().unwrap().first_mut())
        .expect("a non-leading term");
    term["exponent"] = json!("7/5");
    let bad = write(dir.path(), "bad.json", &e);
    let o = run(&["verify", s(&bad)]);
    assert_eq!(code(&o), 4, "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn verify_rejects_an_empty_arc_list() {
    let dir = TempDir::new().unwrap();
    let out = realized(&dir);
    let mut e = read(&out.join("embedding.json"));
    e["arcs_t"] = json!([]);
    let bad = write(dir.path(), "bad.json", &e);
    assert_eq!(code(&run(&["verify", s(&bad)])), 2);
}

#[test]
fn outputs_are_deterministic() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let (oa, ob) = (realized(&a), realized(&b));
    for f in ["bundle.json", "embedding.json", "tord.dot"] {
        assert_eq!(fs::read(oa.join(f)).unwrap(), fs::read(ob.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn invariant_reads_back_a_model() {
    let dir = TempDir::new().unwrap();
    let out = realized(&dir);
    let report = read(&{
        let r = dir.path().join("report.json");
        assert_eq!(code(&run(&["verify", s(&out.join("embedding.json")), "-o", s(&r)])), 0);
        r
    });
    let model = write(dir.path(), "model.json", &report["recovery"]["model"]);
    let o = run(&["invariant", s(&model)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let got: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(got["varpi"], json!([0, 1, 3, 2, 4]));
}

#[test]
fn small_sweeps_pass() {
    let dir = TempDir::new().unwrap();
    for (kind, extra) in [("transverse", vec!["--max-n", "2"]), ("confluence", vec!["--max-n", "2"]), ("general", vec!["--count", "5"])] {
        let out = dir.path().join(format!("{kind}.json"));
        let mut args = vec!["sweep", kind, "--sequential", "-o", s(&out)];
        args.extend(extra);
        let o = run(&args);
        assert_eq!(code(&o), 0, "{kind}: {}", stderr(&o));
        assert_eq!(read(&out)["passes"], json!(true), "{kind}");
    }
}
