use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conedetect")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn finer_on_running_example() {
    let out = run(&["finer", "--backend", "exact", "--pair", &fixture("pair.json"), "--w1", &fixture("w1.json"), "--w2", &fixture("w2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["finer"], true);
    assert_eq!(v["lambda"], "2");
    assert_eq!(v["k_certificate"], serde_json::json!(["1", "0"]));
    assert_eq!(v["backend"], "exact");
    assert_eq!(v["seed"], 0);
}

#[test]
fn witness_classify_swap() {
    let out = run(&["witness-classify", "--matrix", &fixture("swap.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classification"], "witness");
    assert!((v["min_eigenvalue"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    assert_eq!(v["backend"], "quantum");
    assert_eq!(v["tolerance"], 1e-9);
}

#[test]
fn minus_identity_has_certificate() {
    let v = json(&run(&["witness-classify", "--matrix", &fixture("minus_identity4.json")]));
    assert_eq!(v["classification"], "not_in_W1");
    assert_eq!(v["confidence"], "exact");
    assert_eq!(v["certificate"]["phi"], serde_json::json!([[1.0, 0.0], [0.0, 0.0]]));
}

#[test]
fn invalid_inputs_exit_one() {
    let cases: Vec<Vec<String>> = vec![
        vec!["cone-member".into(), "--cone".into(), fixture("orthant2.json"), "--point".into(), fixture("point3.json")],
        vec!["witness-classify".into(), "--matrix".into(), fixture("not_hermitian.json")],
        vec!["witness-classify".into(), "--matrix".into(), fixture("missing.json")],
        vec!["finer".into(), "--w1".into(), fixture("w1.json"), "--w2".into(), fixture("w2.json")],
        vec!["theorem-audit".into(), "--trials".into(), "0".into()],
        vec!["nd-check".into(), "--matrix".into(), fixture("identity_plus_swap.json")],
        vec!["ppt".into(), "--matrix".into(), fixture("swap.json")],
        vec!["detect".into(), "--backend".into(), "quantum".into(), "--w".into(), fixture("swap.json"), "--rho".into(), fixture("choi.json")],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn error_names_the_file() {
    let bad = fixture("point3.json");
    let out = run(&["cone-member", "--cone", &fixture("orthant2.json"), "--point", &bad]);
    assert!(String::from_utf8_lossy(&out.stderr).contains(&bad));
}

#[test]
fn quantum_reports_are_byte_identical() {
    let args = ["optimal", "--backend", "quantum", "--w", &fixture("swap.json"), "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["span_rank"], 4);
    assert_eq!(v["verdicts_agree"], true);
}

#[test]
fn text_format_renders_fields() {
    let out = run(&["--format", "text", "cone-dual", "--cone", &fixture("running_l.json")]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("generators: [[\"1\",\"1/2\"],[\"1\",\"2\"]]"), "{s}");
    assert!(s.lines().any(|l| l == "backend: \"exact\""));
}

#[test]
fn cone_commands() {
    let v = json(&run(&["cone-check", "--cone", &fixture("orthant3_h.json")]));
    assert_eq!(v["is_proper"], true);
    let v = json(&run(&["cone-faces", "--cone", &fixture("orthant3_h.json")]));
    assert_eq!(v["count"], 8);
    let v = json(&run(&["cone-face-of", "--cone", &fixture("orthant3_h.json"), "--point", &fixture("face_point3.json")]));
    assert_eq!(v["dim"], 2);
    let v = json(&run(&["cone-member", "--cone", &fixture("running_l.json"), "--point", &fixture("w2.json")]));
    assert_eq!(v["member"], true);
}

#[test]
fn detect_zero_set_and_lambda_star() {
    let pair = fixture("pair.json");
    let v = json(&run(&["detect", "--pair", &pair, "--w", &fixture("w2.json"), "--rho", &fixture("rho.json")]));
    assert_eq!(v["detected"], true);
    assert_eq!(v["value"], "-1");
    let v = json(&run(&["zero-set", "--pair", &pair, "--w", &fixture("w1.json")]));
    assert_eq!(v["zero_set"], serde_json::json!([["1", "2"]]));
    let v = json(&run(&["lambda-star", "--pair", &pair, "--w1", &fixture("w1.json"), "--w2", &fixture("w2.json")]));
    assert_eq!(v["lambda_star"], "1/2");
    let v = json(&run(&["detect", "--backend", "quantum", "--w", &fixture("swap.json"), "--rho", &fixture("singlet.json")]));
    assert_eq!(v["detected"], true);
}

#[test]
fn ppt_reports_separability_only_where_decidable() {
    let v = json(&run(&["ppt", "--matrix", &fixture("pplus.json")]));
    assert_eq!(v["ppt"], false);
    assert_eq!(v["separable"], false);
    let v = json(&run(&["ppt", "--matrix", &fixture("identity9.json")]));
    assert_eq!(v["ppt"], true);
    assert_eq!(v["separable"], Value::Null);
}

#[test]
fn improved_point_round_trips() {
    let dir = std::env::temp_dir().join(format!("conedetect-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pair = fixture("pair.json");
    let v = json(&run(&["improve", "--pair", &pair, "--w", &fixture("w2.json"), "--k", &fixture("k.json")]));
    assert_eq!(v["lambda_max"], "1");
    let w_prime = dir.join("w_prime.json");
    std::fs::write(&w_prime, v["w_prime"].to_string()).unwrap();
    let again = json(&run(&["improve", "--pair", &pair, "--w", w_prime.to_str().unwrap(), "--k", &fixture("k.json")]));
    assert_eq!(again["lambda_max"], "0");
    let fin = json(&run(&["finer", "--pair", &pair, "--w1", w_prime.to_str().unwrap(), "--w2", &fixture("w2.json")]));
    assert_eq!(fin["finer"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}
