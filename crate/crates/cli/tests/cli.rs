use std::path::PathBuf;
use std::process::{Command, Output};

use modext_cli::format::AlgebraFile;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn modext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modext"))
        .args(args)
        .env_remove("MODEXT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_associativity_counts() {
    let o = modext(&["validate", &data("m2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("associativity: 64/64 identities hold"), "{out}");
    assert!(out.contains("input sha256: "));
    assert!(out.ends_with("status: ok\n"));
}

#[test]
fn non_associative_input_exits_with_one() {
    let o = modext(&["validate", &data("nonassociative.json")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("associativity: 4/8 identities hold"), "{out}");
    assert!(out.contains("status: failure (associativity)"));
}

#[test]
fn malformed_input_exits_with_two() {
    let o = modext(&["validate", &data("bad_rational.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("$.mul[0][0][0]"), "{err}");

    let o = modext(&["validate", &data("missing.json")]);
    assert_eq!(o.status.code(), Some(2));

    let o = modext(&["decompose", &data("ut_decompose.json"), "--map", "nope"]);
    assert_eq!(o.status.code(), Some(2));

    let o = modext(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn derivation_dimensions() {
    for (file, line) in [
        ("dual_numbers.json", "dim Der = 1, dim Inn = 0, H1 = 1"),
        ("m2.json", "dim Der = 3, dim Inn = 3, H1 = 0"),
        ("zero2.json", "dim Der = 4, dim Inn = 0, H1 = 4"),
        ("upper_triangular.json", "dim Der = 2, dim Inn = 2, H1 = 0"),
    ] {
        let o = modext(&["der", &data(file)]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(line), "{file}: {}", stdout(&o));
    }
}

#[test]
fn extension_derivations_split_into_blocks() {
    let o = modext(&["der", &data("dual_numbers.json"), "--module", "extension"]);
    assert!(stdout(&o).contains("dim Der = 4, dim Inn = 0, H1 = 4"));
}

#[test]
fn decompose_finds_witnesses() {
    let o = modext(&["decompose", &data("ut_decompose.json"), "--map", "inner"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("derivation on T(A,U): yes"));
    assert!(out.contains("inner: D(y) = y·(b,v) − (b,v)·y"));

    let o = modext(&["decompose", &data("ut_decompose.json"), "--map", "identity"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status: failure (not a derivation)"));
}

#[test]
fn analyze_dual_numbers() {
    let o = modext(&["analyze", &data("dual_numbers.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("radical = span{ε}, semisimple: no"), "{out}");
    assert!(out.contains("simple: no, prime: no"));
    assert!(out.contains("surjective left A-module map: found"));
}

#[test]
fn analyze_m2_is_simple() {
    let o = modext(&["analyze", &data("m2.json"), "--simple", "--radical"]);
    let out = stdout(&o);
    assert!(out.contains("simple: yes, prime: yes"), "{out}");
    assert!(out.contains("radical = 0, semisimple: yes"));
}

#[test]
fn corner_construction_writes_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("t.json");
    let out_str = out_path.display().to_string();
    let o = modext(&[
        "construct",
        "corner",
        &data("m2_corner.json"),
        "--output",
        &out_str,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("T(A,U): dim 6 = 4 + 2"));

    let text = std::fs::read_to_string(&out_path).unwrap();
    let file = AlgebraFile::parse(&text).unwrap();
    assert_eq!(file.space_dim(modext_cli::format::Space::T), Some(6));
    assert_eq!(file.to_canonical_string(), text);

    let o = modext(&["decompose", &out_str, "--map", "D"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("derivation on T(A,U): yes"));
}

#[test]
fn lift_on_dual_numbers_is_outer() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("lift.json").display().to_string();
    let o = modext(&["construct", "lift", &data("dual_numbers.json"), "--output", &out_path]);
    assert_eq!(o.status.code(), Some(0));
    let o = modext(&["decompose", &out_path, "--map", "D"]);
    assert!(stdout(&o).contains("\nnot inner\n"));
}

#[test]
fn every_recipe_runs_on_its_data_file() {
    for (recipe, file) in [
        ("lift", "dual_numbers.json"),
        ("transport", "m2xm2_transport.json"),
        ("quotient", "ut_quotient.json"),
        ("corner", "m2_corner.json"),
    ] {
        let o = modext(&["construct", recipe, &data(file)]);
        assert_eq!(o.status.code(), Some(0), "{recipe}: {}", stdout(&o));
        assert!(stdout(&o).contains("derivation-on-T [D(ab) = aD(b) + D(a)b]"));
    }
}

#[test]
fn construction_hypothesis_failure_exits_with_one() {
    let q = data("ut_quotient.json");
    let o = modext(&["construct", "quotient", &q, "--ideal", "J"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status: failure (hypothesis `ideal`)"));

    let o = modext(&["construct", "quotient", &q, "--delta", "identity"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("hypothesis failed: δ is a derivation of A"));
}

#[test]
fn map_with_wrong_shape_is_an_input_error() {
    // psi goes U → A, the transport δ must be A → A
    let o = modext(&["construct", "transport", &data("m2xm2_transport.json"), "--delta", "psi"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn shipped_files_are_canonical() {
    for name in [
        "dual_numbers.json",
        "m2.json",
        "zero2.json",
        "upper_triangular.json",
        "m2_corner.json",
        "ut_quotient.json",
        "m2xm2_transport.json",
        "ut_decompose.json",
    ] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let file = AlgebraFile::parse(&text).unwrap();
        assert_eq!(file.to_canonical_string(), text, "{name}");
    }
}

#[test]
fn json_output_matches_text() {
    let text = stdout(&modext(&["der", &data("m2.json")]));
    let json = stdout(&modext(&["--json", "der", &data("m2.json")]));
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["status"], "ok");
    for item in v["results"].as_array().unwrap() {
        for line in item["summary"].as_array().unwrap() {
            assert!(text.contains(line.as_str().unwrap()));
        }
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["analyze", "m2.json"],
        vec!["der", "upper_triangular.json", "--inner", "--h1"],
        vec!["construct", "quotient", "ut_quotient.json"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".json") { data(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = modext(&args);
        let second = modext(&args);
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn seed_changes_nothing_in_the_verdict() {
    let a = stdout(&modext(&["--seed", "1", "analyze", &data("m2.json"), "--simple"]));
    let b = stdout(&modext(&["--seed", "2", "analyze", &data("m2.json"), "--simple"]));
    assert!(a.contains("simple: yes, prime: yes"));
    assert!(b.contains("simple: yes, prime: yes"));
}
