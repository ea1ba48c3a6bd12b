use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const EXAMPLE: &str = r#"{"x":{"a":[0,1,1,2],"b":[0,1,1,2],"z":[[0,0],[1,0],[1,0],[0,0]]},"label":"example"}"#;
const GHZ: &str = r#"{"x":{"a":[1,0,0,0],"b":[1,0,0,0],"z":[[1,0],[0,0],[0,0],[0,0]]},"label":"ghz"}"#;

fn xcone(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_xcone"));
    cmd.args(args).env_remove("XCONE_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn run(args: &[&str], stdin: &str) -> Output {
    xcone(args, stdin, &[])
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn matrix_doc(m: [[f64; 8]; 8]) -> String {
    let rows: Vec<Vec<[f64; 2]>> = m.iter().map(|r| r.iter().map(|&v| [v, 0.0]).collect()).collect();
    json!({ "matrix": rows }).to_string()
}

#[test]
fn classify_example_and_ghz() {
    let o = run(
        &["classify", "--json-out", "-", "--certify"],
        &format!("{EXAMPLE}\n{GHZ}\n"),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = lines(&o);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0]["label"], "example");
    assert_eq!(r[0]["class"], "C^{2,6,1}");
    assert_eq!(r[0]["signature"], "1001111");
    assert_eq!(r[0]["pivot"], "A");
    let s14 = r[0]["inequalities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|q| q["kind"] == json!({"S1": [1, 4]}))
        .unwrap();
    assert_eq!(s14["slack"], 0.0);

    assert_eq!(r[1]["class"], "genuinely entangled");
    let certs = r[1]["certificates"].as_array().unwrap();
    let abc = certs
        .iter()
        .find(|c| c["certificate"]["cone"] == json!({"Dual": "AbcJoin"}))
        .unwrap();
    assert_eq!(abc["verified"], true);
    assert!((abc["certificate"]["pairing"].as_f64().unwrap() + 2.0).abs() < 1e-12);
}

#[test]
fn classify_table_output() {
    let o = run(&["classify"], EXAMPLE);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("C^{2,6,1}"));
    assert!(text.contains("A+B+C"));
}

#[test]
fn classify_order_and_arrays() {
    let docs = format!("[{GHZ}, {EXAMPLE}]");
    let r = lines(&run(&["classify", "--json-out", "-"], &docs));
    assert_eq!(r[0]["label"], "ghz");
    assert_eq!(r[1]["label"], "example");
    assert_eq!(r[1]["document"], "stdin#2");
}

#[test]
fn json_out_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("classify_out.ndjson");
    let o = run(&["classify", "--json-out", path.to_str().unwrap()], EXAMPLE);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["class"], "C^{2,6,1}");
}

#[test]
fn invalid_inputs_exit_2() {
    let mut m = [[0.0; 8]; 8];
    m[1][4] = 1.0;
    let o = run(&["classify"], &matrix_doc(m));
    assert_eq!(code(&o), 2);
    let e = stderr(&o);
    assert!(e.contains("(2, 5)") && e.contains("(5, 2)"), "{e}");

    assert_eq!(code(&run(&["classify"], "{not json")), 2);
    assert_eq!(
        code(&run(
            &["classify"],
            r#"{"x":{"a":[1,2],"b":[0,0,0,0],"z":[[0,0],[0,0],[0,0],[0,0]]}}"#
        )),
        2
    );
    let both = r#"{"x":{"a":[0,0,0,0],"b":[0,0,0,0],"z":[[0,0],[0,0],[0,0],[0,0]]},"matrix":[]}"#;
    assert_eq!(code(&run(&["classify"], both)), 2);
    assert_eq!(code(&run(&["witness", "--cone", "D"], EXAMPLE)), 2);
    assert_eq!(code(&run(&["classify", "--tol", "-1"], EXAMPLE)), 2);
    assert_eq!(code(&run(&["classify", "/nonexistent/input.json"], "")), 2);
}

#[test]
fn general_matrices() {
    let mut w = [[0.0; 8]; 8];
    for i in [1, 2, 4] {
        for j in [1, 2, 4] {
            w[i][j] = 1.0 / 3.0;
        }
    }
    let r = lines(&run(&["classify", "--json-out", "-"], &matrix_doc(w)));
    assert_eq!(r[0]["x_shaped"], false);
    assert_eq!(r[0]["conclusive"], false);

    // X-part PSD, full matrix not
    let mut m = [[0.0; 8]; 8];
    m[1][1] = 1.0;
    m[2][2] = 1.0;
    m[1][2] = 2.0;
    m[2][1] = 2.0;
    let r = lines(&run(&["classify", "--json-out", "-"], &matrix_doc(m)));
    assert_eq!(r[0]["class"], "not a state");
    assert_eq!(r[0]["conclusive"], true);

    let r = lines(&run(&["classify", "--json-out", "-"], &matrix_doc(*XCONE_GHZ)));
    assert_eq!(r[0]["x_shaped"], true);
    assert_eq!(r[0]["class"], "genuinely entangled");
}

static XCONE_GHZ: std::sync::LazyLock<[[f64; 8]; 8]> = std::sync::LazyLock::new(|| {
    let mut m = [[0.0; 8]; 8];
    for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
        m[i][j] = 1.0;
    }
    m
});

#[test]
fn witness_mode() {
    let delta = r#"{"x":{"a":[1,0,0,0],"b":[0,0,0,0],"z":[[0,0],[0,0],[0,0],[0,0]]}}"#;
    let r = lines(&run(&["classify", "--as", "witness", "--json-out", "-"], delta));
    assert!(r[0]["cones"].as_array().unwrap().iter().all(|c| c["member"] == true));
    let bad = r#"{"x":{"a":[0,0,0,0],"b":[0,0,0,0],"z":[[1,0],[1,0],[1,0],[1,0]]}}"#;
    let r = lines(&run(
        &["classify", "--as", "witness", "--certify", "--json-out", "-"],
        bad,
    ));
    assert!(r[0]["cones"].as_array().unwrap().iter().all(|c| c["member"] == false));
    assert!(r[0]["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["verified"] == true));
}

#[test]
fn witness_command() {
    let o = run(&["witness", "--cone", "B", "--json-out", "-"], EXAMPLE);
    assert_eq!(code(&o), 0);
    let r = lines(&o);
    assert_eq!(r[0]["status"], "certificate");
    assert_eq!(r[0]["verified"], true);
    assert!((r[0]["certificate"]["pairing"].as_f64().unwrap() + 2.0).abs() < 1e-12);

    let o = run(&["witness", "--cone", "A"], EXAMPLE);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("is a member"));

    let w = r#"{"x":{"a":[0,0,0,0],"b":[0,0,0,0],"z":[[1,0],[0,0],[0,0],[0,0]]}}"#;
    let o = run(&["witness", "--cone", "dual:A+B+C", "--json-out", "-"], w);
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o)[0]["certificate"]["kind"], "counterstate");
}

#[test]
fn decompose_command() {
    let o = run(&["decompose", "--cone", "A", "--json-out", "-"], EXAMPLE);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = lines(&o);
    assert_eq!(r[0]["verified"], true);
    assert!(r[0]["decomposition"]["residual"].as_f64().unwrap() <= 1e-9);

    let o = run(
        &[
            "decompose",
            "--cone",
            "B+C",
            "--method",
            "dictionary",
            "--json-out",
            "-",
        ],
        EXAMPLE,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o)[0]["verified"], true);

    let o = run(&["decompose", "--cone", "B", "--json-out", "-"], EXAMPLE);
    assert_eq!(code(&o), 1);
    assert_eq!(lines(&o)[0]["status"], "not-member");

    assert_eq!(code(&run(&["decompose", "--cone", "A+B"], EXAMPLE)), 2);
}

#[test]
fn sample_is_deterministic_and_classifiable() {
    let a = run(&["sample", "--cone", "A", "--count", "2", "--seed", "1"], "");
    let b = run(&["sample", "--cone", "A", "--count", "2", "--seed", "1"], "");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["sample", "--cone", "A", "--count", "2", "--seed", "2"], "");
    assert_ne!(a.stdout, c.stdout);
    let docs = lines(&a);
    assert_eq!(docs.len(), 2);
    assert!(docs.iter().all(|d| !d["recipe"].as_array().unwrap().is_empty()));

    let samples =
        String::from_utf8(run(&["sample", "--cone", "A^B", "--count", "20", "--seed", "3"], "").stdout).unwrap();
    let r = lines(&run(&["classify", "--json-out", "-"], &samples));
    assert_eq!(r.len(), 20);
    for rep in r {
        let cones = rep["cones"].as_array().unwrap();
        for name in ["A", "B", "A^B"] {
            assert_eq!(cones.iter().find(|c| c["cone"] == name).unwrap()["member"], true);
        }
    }
    let again = run(&["classify", "--json-out", "-"], &samples);
    assert_eq!(again.stdout, run(&["classify", "--json-out", "-"], &samples).stdout);
}

#[test]
fn tolerance_precedence() {
    // S1[1,4] fails by 1e-6
    let doc = r#"{"x":{"a":[1,0,0,1],"b":[1,0,0,1],"z":[[0,0],[0,0],[0,0],[1.000001,0]]}}"#;
    let member_a = |o: &Output| lines(o)[0]["cones"][0]["member"].as_bool().unwrap();
    assert!(!member_a(&xcone(&["classify", "--json-out", "-"], doc, &[])));
    assert!(member_a(&xcone(
        &["classify", "--json-out", "-"],
        doc,
        &[("XCONE_TOL", "1e-3")]
    )));
    assert!(!member_a(&xcone(
        &["classify", "--json-out", "-", "--tol", "1e-9"],
        doc,
        &[("XCONE_TOL", "1e-3")]
    )));
}

#[test]
fn verify_suites() {
    for (suite, needle) in [
        ("ppt", "disagreements 0"),
        ("duality", ">= -1e-9"),
        ("lattice", "violations 0"),
        ("roundtrip", "failures 0"),
    ] {
        let o = run(&["verify", "--suite", suite, "--trials", "500", "--seed", "7"], "");
        let text = String::from_utf8(o.stdout.clone()).unwrap();
        assert_eq!(code(&o), 0, "{suite}: {text}");
        assert!(text.contains(needle), "{suite}: {text}");
        assert!(text.trim_end().ends_with("PASS"));
    }
    assert_eq!(code(&run(&["verify", "--suite", "nope"], "")), 2);
}
