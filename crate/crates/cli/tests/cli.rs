use std::path::PathBuf;
use std::process::{Command, Output};

use raydiag::catalog::{build_family, enumerate};
use raydiag::classifier::classify;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raydiag")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = vec!["--json"];
    a.extend(args);
    let text = stdout(&a);
    assert!(text.ends_with('\n'));
    serde_json::from_str(&text).expect("valid JSON")
}

fn line<'a>(out: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    out.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap_or_else(|| panic!("no `{key}` in\n{out}"))
}

#[test]
fn classify_outputs() {
    let out = stdout(&["classify", &fixture("a2.rayset")]);
    assert_eq!(line(&out, "class"), "elliptic");
    assert_eq!(line(&out, "witness"), "1 1");
    assert_eq!(line(&out, "signs"), "<0 <0");

    let v = json(&["classify", &fixture("affine_a1_2_2.rayset")]);
    assert_eq!(v["result"]["class"], "connected-parabolic");
    assert_eq!(v["result"]["kernel"], serde_json::json!(["1", "1"]));

    let out = stdout(&["classify", &fixture("lanner2_1_5.rayset")]);
    assert_eq!(line(&out, "class"), "lanner");
}

#[test]
fn oracle_flag_agrees() {
    for f in ["a2.rayset", "affine_a1_2_2.rayset", "lanner2_1_5.rayset"] {
        let a = stdout(&["classify", &fixture(f)]);
        let b = stdout(&["--oracle", "classify", &fixture(f)]);
        assert_eq!(line(&a, "class"), line(&b, "class"), "{f}");
    }
}

#[test]
fn exit_codes() {
    let o = run(&["classify", &fixture("bad_syntax.rayset")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(run(&["classify", &fixture("dotted.rayset")]).status.code(), Some(3));
    assert_eq!(run(&["classify", "/nonexistent/x.rayset"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "NoSuchFamily"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "An", "--n", "0"]).status.code(), Some(2));
    assert_ne!(run(&["frobnicate"]).status.code(), Some(0));
}

#[test]
fn distance_and_shape() {
    let out = stdout(&["distance", &fixture("a2.rayset")]);
    assert_eq!(line(&out, "rho"), "0 1; 1 0");
    assert_eq!(line(&out, "diameter"), "1");
    let out = stdout(&["shape", &fixture("a2.rayset")]);
    assert_eq!(line(&out, "shape"), "A");
    let out = stdout(&["decompose", &fixture("affine_a1_2_2.rayset")]);
    assert_eq!(line(&out, "semi_elliptic"), "true");
    assert_eq!(line(&out, "parabolic_parts"), "[0, 1]");
}

#[test]
fn catalog_entries() {
    let out = stdout(&["catalog", "Lanner2", "--t12", "1", "--t21", "5"]);
    assert_eq!(line(&out, "predicted"), "lanner");
    assert_eq!(line(&out, "agree"), "true");
    let out = stdout(&["catalog", "An", "n=3"]);
    assert_eq!(line(&out, "matrix"), "-2 1 0; 1 -2 1; 0 1 -2");
    let out = stdout(&["catalog", "TypeB", "--chains", "A2w1,B2w2"]);
    assert_eq!(line(&out, "actual"), "elliptic");
    assert!(stdout(&["catalog", "list"]).lines().count() > 40);
}

#[test]
fn catalog_round_trip() {
    // text built by the catalog, classified by the binary and in process
    let dir = std::env::temp_dir().join(format!("raydiag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (i, e) in enumerate(4, 3).iter().step_by(7).enumerate() {
        let path = dir.join(format!("{i}.rayset"));
        std::fs::write(&path, e.rs.to_text()).unwrap();
        let out = stdout(&["classify", path.to_str().unwrap()]);
        let want = classify(&build_family(&e.spec).unwrap()).unwrap().class;
        assert_eq!(line(&out, "class"), want.name(), "{}", e.spec);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn small_sweep() {
    let out = stdout(&["catalog", "--sweep", "5", "3"]);
    assert_eq!(line(&out, "disagreements"), "0");
    let v = json(&["catalog", "--sweep", "4", "2"]);
    assert_eq!(v["result"]["disagreements"], 0);
}

#[test]
fn bounds_presets() {
    let out = stdout(&["bounds", "--preset", "cy"]);
    assert_eq!(line(&out, "basic"), "88 2/3 (headline 88 OK)");
    assert_eq!(line(&out, "refined"), "56 (headline 56 OK)");
    assert_eq!(line(&out, "strengthened"), "39|40 (<= 40 OK)");
    assert!(line(&out, "strengthened_note").contains("29 and 30"));

    let v = json(&["bounds", "--preset", "verygood"]);
    assert_eq!(v["result"]["basic"]["value"], "490/3");
    assert_eq!(v["result"]["basic"]["headline_ok"], true);

    let out = stdout(&["bounds", "--c1", "0", "--c2", "0"]);
    assert_eq!(line(&out, "basic"), "6");
}

#[test]
fn constants_small() {
    let v = json(&["constants", "--max-n", "5", "--max-weight", "2"]);
    assert_eq!(v["result"]["q"], 2);
    assert!(v["result"]["witness.d"]["spec"].is_string());
}

#[test]
fn vinberg_fixtures() {
    let out = stdout(&["vinberg", &fixture("cube_half.polytope"), "--C", "1", "--D", "0"]);
    assert_eq!(line(&out, "condition1"), "PASS");
    assert_eq!(line(&out, "condition2"), "PASS");
    assert_eq!(line(&out, "bound"), "n < 14");
    let out = stdout(&["vinberg", &fixture("cube_zero.polytope"), "--C", "1", "--D", "0"]);
    assert!(line(&out, "condition2").starts_with("FAIL"));
    let out = stdout(&["vinberg", &fixture("simplex_zero.polytope"), "--C", "1", "--D", "0"]);
    assert!(line(&out, "condition2").starts_with("FAIL"));
}
