use std::path::PathBuf;
use std::process::{Command, Output};

fn charvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charvar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn verify_lemmas_passes_on_a_range() {
    let out = charvar(&["verify-lemmas", "--n", "2..6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for lemma in [
        "symmetric-power-homomorphism",
        "lie-images",
        "unipotent-exponentials",
        "diagonal-scaling",
        "trace-form",
        "parabolic-invariants",
        "trace-pairing",
        "cusp-cohomology-basis",
    ] {
        assert_eq!(text.matches(lemma).count(), 5, "{lemma}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn dimension_one_is_a_usage_error() {
    let out = charvar(&["verify-lemmas", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at least 2"));
}

#[test]
fn certify_figure_eight_n3() {
    let out = charvar(&["certify", "--builtin", "fig8", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], "charvar-certificate/1");
    let record = &doc["records"][0];
    assert_eq!(record["verdict"], "certified");
    let certs = record["cusps"][0]["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 2);
    assert_eq!(certs[0]["det_j_display"], "16");
    assert_eq!(certs[0]["valuations"], serde_json::json!([1, 0]));
    for c in certs {
        assert_eq!(c["verdict"], "certified");
        assert_eq!(c["const_rows_zero"], true);
    }
}

#[test]
fn certify_n2_records_q1_and_unit_determinant() {
    let out = charvar(&["certify", "--n", "2", "--tau", "specialize", "--class", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cert = &doc["records"][0]["cusps"][0]["certificates"][0];
    assert_eq!(cert["word"], "x");
    assert_eq!(cert["q_polynomials"][0]["display"], "-λ");
    assert_eq!(cert["q_polynomials"][0]["coefficients"], serde_json::json!([[], [["-1"]]]));
    assert_eq!(cert["det_j_display"], "-1");
}

#[test]
fn certify_writes_the_document_to_a_file() {
    let path = scratch("fig8_n2.json");
    let out = charvar(&["certify", "--n", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("certified"));
    let written = std::fs::read_to_string(&path).unwrap();
    let direct = stdout(&charvar(&["certify", "--n", "2"]));
    assert_eq!(written, direct);
}

#[test]
fn malformed_manifold_reports_the_line() {
    let path = scratch("bad.txt");
    std::fs::write(&path, "gens: x y\nrel: xyXY\nmat x: 1 1 0\nmat y: 1 0 1 1\n").unwrap();
    let out = charvar(&["certify", "--manifold", path.to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn manifold_file_matches_builtin() {
    let path = scratch("fig8_copy.txt");
    std::fs::write(
        &path,
        "field: 1,-1,1\ngens: x y\nrel: XyxYxyXYxY\ncusp: x yXYxxYXy\nmat x: 1 1 0 1\nmat y: 1 0 0,1 1\n",
    )
    .unwrap();
    let from_file = charvar(&["certify", "--manifold", path.to_str().unwrap(), "--n", "2..3"]);
    let builtin = charvar(&["certify", "--builtin", "fig8", "--n", "2..3"]);
    assert_eq!(from_file.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&builtin)).unwrap();
    assert_eq!(a["records"][0]["cusps"], b["records"][0]["cusps"]);
}

#[test]
fn continue_is_deterministic_for_a_seed() {
    let args = ["continue", "--n", "2", "--trials", "20", "--seed", "5"];
    let first = charvar(&args);
    let second = charvar(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains("20/20"));
}

#[test]
fn continue_respects_the_dimension_cap() {
    let out = charvar(&["continue", "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cap"));
}
