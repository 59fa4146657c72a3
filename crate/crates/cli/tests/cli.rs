use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn painleve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_painleve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

/// Top-level keys in the order they appear in pretty-printed output.
fn top_level_keys(text: &str) -> Vec<String> {
    text.lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim_start().split('"').nth(1).unwrap().to_string())
        .collect()
}

const ANALYSIS_KEYS: [&str; 12] = [
    "input",
    "bureau",
    "f",
    "q0",
    "h",
    "resonances",
    "complete",
    "constant",
    "compatibility",
    "class",
    "conditions",
    "monodromy",
];

#[test]
fn analyze_first_transcendent() {
    let o = painleve(&["analyze", "--json", "w'' = 6*w^2 + z"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["bureau"], 2);
    assert_eq!(v["h"], "12");
    assert_eq!(v["resonances"], serde_json::json!([-1, 6]));
    assert_eq!(v["compatibility"][0]["index"], 6);
    assert_eq!(v["compatibility"][0]["passed"], true);
    assert_eq!(v["class"], "C2_Ia");
    assert_eq!(v["conditions"]["verdict"], "ClassIdentified");
    assert_eq!(top_level_keys(&stdout(&o)), ANALYSIS_KEYS.to_vec());
}

#[test]
fn analyze_reports_failed_compatibility() {
    let o = painleve(&["analyze", "w'' = 6*w^2 + z^2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("compatibility: fail"), "{text}");
    assert!(text.contains("j = 6: Q = 1"), "{text}");
}

#[test]
fn rationals_render_as_fractions() {
    let v = json(&painleve(&["analyze", "--json", "w'' = 12*w^2"]));
    assert_eq!(v["q0"], "1/2");
    assert_eq!(v["f"], "2");
}

#[test]
fn cubic_input_is_a_parse_error() {
    let o = painleve(&["analyze", "w'' = w^3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("offset 6"), "{err}");
    assert!(err.lines().any(|l| l == format!("  {}^", " ".repeat(6))), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(painleve(&[]).status.code(), Some(2));
    assert_eq!(painleve(&["analyze"]).status.code(), Some(2));
    let o = painleve(&["monodromy", "w'' = w^2", "--center", "1", "--radius", "0.5", "--seed-state", "24"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn linearize_examples() {
    let o = painleve(&["linearize", "w''' = 2*w*w'' + 2*w'^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("u'' = 0"));

    let v = json(&painleve(&["linearize", "--json", "w''' = 2*w*w'' + 2*w'^2 + w'' + w' - w^2 - w"]));
    assert_eq!(v["status"], "Linearized");
    assert_eq!(v["b"], "1");
    assert_eq!(v["equation"], "u'' = u");

    let v = json(&painleve(&["linearize", "--json", "w''' = 2*w*w'' + 2*w'^2 + w^2"]));
    assert_eq!(v["status"], "NotLinearizable");
    assert_eq!(v["residual"], "w^2");

    let v = json(&painleve(&["linearize", "--json", "w'' = 6*w^2"]));
    assert_eq!(v["status"], "ShapeMismatch");
}

#[test]
fn classify_lists_evidence() {
    let v = json(&painleve(&["classify", "--json", "w''' = w*w'"]));
    assert_eq!(v["class"], "C3_ChazyXIII");
    assert!(v["evidence"].as_array().unwrap().iter().all(|e| e["passed"] == true));
}

#[test]
fn monodromy_logarithm() {
    let o = painleve(&[
        "monodromy", "--json", "w'' = w'^2", "--center", "1", "--radius", "0.5",
        "--seed-state=0.6931471805599453,-2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "multi-valued");
    let im = v["delta_w"]["im"].as_f64().unwrap();
    assert!((im + 2.0 * std::f64::consts::PI).abs() < 1e-4, "{im}");
}

#[test]
fn monodromy_rational_solution() {
    let o = painleve(&[
        "monodromy", "w'' = w^2", "--center", "1", "--radius", "0.5", "--seed-state", "24,96",
        "--start-angle", "3.141592653589793", "--tol", "1e-12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict:        single-valued"));
}

#[test]
fn json_is_deterministic() {
    for args in [
        ["analyze", "--json", "w'''' = w*w'' + w'^2"],
        ["classify", "--json", "w^(5) = -12*w'*w''' - 12*w''^2"],
        ["linearize", "--json", "w^(4) = 2*w*w''' + 6*w'*w''"],
    ] {
        let a = painleve(&args);
        let b = painleve(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

fn corpus_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

#[test]
fn shipped_corpus_passes() {
    let o = painleve(&["corpus", corpus_dir().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn wrong_expectation_fails_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("ok.ode"), "# expect: h=12\nw'' = 6*w^2 + z\n").unwrap();
    fs::write(dir.path().join("wrong.ode"), "# expect: class=C3_ChazyXIII\nw'' = 6*w^2 + z\n").unwrap();
    let o = painleve(&["corpus", "--json", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v[0]["passed"], true);
    assert_eq!(v[1]["passed"], false);
    assert_eq!(v[1]["mismatches"][0]["actual"], "C2_Ia");
}

#[test]
fn empty_and_missing_directories() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(painleve(&["corpus", dir.path().to_str().unwrap()]).status.code(), Some(0));
    let missing = dir.path().join("nope");
    assert_eq!(painleve(&["corpus", missing.to_str().unwrap()]).status.code(), Some(2));
}
