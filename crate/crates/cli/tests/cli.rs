use std::path::{Path, PathBuf};
use std::process::{Command, Output as Run};

use gerstenhaber_cli::{Output, ReportBody};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn gerstenhaber(args: &[&str]) -> Run {
    Command::new(env!("CARGO_BIN_EXE_gerstenhaber"))
        .args(args)
        .env_remove("GERSTENHABER_SEED")
        .output()
        .expect("binary runs")
}

fn json_run(args: &[&str]) -> (i32, Output) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let run = gerstenhaber(&all);
    let out: Output = serde_json::from_slice(&run.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&run.stderr))
    });
    (run.status.code().unwrap(), out)
}

fn tmp(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn check_qlb_on_the_so3_double() {
    let f = data("double-so3.json");
    let (code, out) = json_run(&["check-qlb", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let ReportBody::Symbolic(r) = &out.report else { panic!("symbolic report expected") };
    assert!(r.checks.iter().flat_map(|c| &c.residuals).all(|x| x.zero && x.value == "0"));
}

#[test]
fn double_then_extract_reproduces_the_fixture() {
    let triple = tmp("triple.json");
    let qlb = tmp("qlb.json");
    let run = gerstenhaber(&["double", data("so3.json").to_str().unwrap(), "-o", triple.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let run = gerstenhaber(&["manin-extract", triple.to_str().unwrap(), "--output", qlb.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let got: Value = serde_json::from_str(&std::fs::read_to_string(&qlb).unwrap()).unwrap();
    let want: Value = serde_json::from_str(&std::fs::read_to_string(data("double-so3.json")).unwrap()).unwrap();
    assert_eq!(got, want);
    // F ≡ 0 and Ω = ¼ e1∧e2∧e3
    assert!(got["delta_e"].as_array().unwrap().iter().all(|m| m["terms"].as_array().unwrap().is_empty()));
    assert_eq!(got["omega"]["terms"][0]["coef"], "1/4");
}

#[test]
fn twist_then_negate_is_the_identity() {
    let back = tmp("back.json");
    let run = gerstenhaber(&[
        "twist",
        data("double-so3.json").to_str().unwrap(),
        "--t",
        data("t-so3.json").to_str().unwrap(),
        "--then-negate",
        "-o",
        back.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stdout));
    // canonical form: the emitted document of the input itself
    let canonical = tmp("canonical.json");
    let run = gerstenhaber(&[
        "twist",
        data("double-so3.json").to_str().unwrap(),
        "--t",
        data("zero-bivector.json").to_str().unwrap(),
        "-o",
        canonical.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(std::fs::read(&back).unwrap(), std::fs::read(&canonical).unwrap());
}

#[test]
fn groupoid_sample_twenty_pairs() {
    let f = data("gxg-so3.json");
    let (code, out) = json_run(&["groupoid-sample", f.to_str().unwrap(), "--count", "20"]);
    assert_eq!(code, 0);
    let ReportBody::Groupoid(r) = &out.report else { panic!("groupoid report expected") };
    assert_eq!(r.samples.len(), 20);
    assert!(r.max_multiplicativity < 1e-6);
}

#[test]
fn seed_flag_and_environment() {
    let f = data("gxg-so3.json");
    let f = f.to_str().unwrap();
    let (_, out) = json_run(&["groupoid-sample", f, "--count", "1"]);
    let ReportBody::Groupoid(r) = &out.report else { panic!() };
    assert_eq!(r.settings.seed, 0);
    let (_, out) = json_run(&["--seed", "9", "groupoid-sample", f, "--count", "1"]);
    let ReportBody::Groupoid(r) = &out.report else { panic!() };
    assert_eq!(r.settings.seed, 9);
    let run = Command::new(env!("CARGO_BIN_EXE_gerstenhaber"))
        .args(["--json", "groupoid-sample", f, "--count", "1"])
        .env("GERSTENHABER_SEED", "4")
        .output()
        .unwrap();
    let out: Output = serde_json::from_slice(&run.stdout).unwrap();
    let ReportBody::Groupoid(r) = &out.report else { panic!() };
    assert_eq!(r.settings.seed, 4);
}

/// Every fixture pipeline: exit status agrees with `passed`, and the report
/// JSON is a fixed point of parse-then-emit.
#[test]
fn exit_codes_match_reports_and_json_round_trips() {
    let cases: &[(&[&str], i32)] = &[
        (&["validate-algebroid", "so3-action.json"], 0),
        (&["validate-algebroid", "so3-action-bad.json"], 1),
        (&["check-differential", "lie-poisson-so3.json"], 0),
        (&["check-qlb", "lie-poisson-so3.json"], 0),
        (&["base-field", "lie-poisson-so3.json"], 0),
        (&["lift", "linear", "lie-poisson-so3.json"], 0),
        (&["lift", "complete", "section-so3.json"], 0),
        (&["lift", "vertical", "section-so3.json"], 0),
        (&["lift", "gauge", "section-so3.json", "--param", "t"], 0),
        (&["manin-extract", "double-so3-triple.json"], 0),
        (&["double", "so3.json"], 0),
        (&["transformation-qlb", "quaternion.json"], 0),
        (&["transformation-qlb", "adjoint-r6.json"], 1),
        (&["twisted-poisson", "twisted-r3.json"], 0),
        (&["twisted-poisson", "twisted-r3-perturbed.json"], 1),
        (&["check-hamiltonian", "hamiltonian-quaternion.json"], 0),
        (&["coisotropy", "coisotropic-line.json"], 0),
        (&["coisotropy", "non-coisotropic-line.json"], 1),
        (&["groupoid-sample", "gxg-so3.json", "--count", "2"], 0),
    ];
    for (args, want) in cases {
        let mut args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let i = args.iter().position(|a| a.ends_with(".json")).unwrap();
        args[i] = data(&args[i]).to_string_lossy().into_owned();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out) = json_run(&refs);
        assert_eq!(code, *want, "{args:?}");
        assert_eq!(out.passed, code == 0, "{args:?}");
        assert_eq!(out.report.passed(), out.passed);
        let emitted = out.to_json();
        let again: Output = serde_json::from_str(&emitted).unwrap();
        assert_eq!(again.to_json(), emitted, "{args:?}");
    }
}

#[test]
fn perturbed_twisted_poisson_prints_its_defect() {
    let run = gerstenhaber(&["twisted-poisson", data("twisted-r3-perturbed.json").to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(1));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("FAIL twisted-jacobi"), "{text}");
    assert!(text.contains("∂x1∧∂x2∧∂x3"), "{text}");
}

#[test]
fn input_errors_exit_2_with_a_position() {
    let missing = gerstenhaber(&["check-qlb", "no-such-file.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad = tmp("bad-coef.json");
    let text = std::fs::read_to_string(data("section-so3.json")).unwrap().replace("x1^2", "x1^^2");
    std::fs::write(&bad, text).unwrap();
    let run = gerstenhaber(&["lift", "vertical", bad.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    let err = String::from_utf8(run.stderr).unwrap();
    assert!(err.contains("position 3"), "{err}");
    let truncated = tmp("truncated.json");
    std::fs::write(&truncated, "{\"dim\": 3,").unwrap();
    let run = gerstenhaber(&["coisotropy", truncated.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    assert!(String::from_utf8(run.stderr).unwrap().contains("line"));
    let run = gerstenhaber(&["lift", "gauge", data("section-so3.json").to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn adjoint_r6_reports_the_symmetric_defect() {
    let (code, out) = json_run(&["transformation-qlb", data("adjoint-r6.json").to_str().unwrap()]);
    assert_eq!(code, 1);
    let ReportBody::Symbolic(r) = &out.report else { panic!() };
    let xx = r.checks.iter().find(|c| c.name == "compatibility(x,x)").unwrap();
    assert!(!xx.passed);
    let sym = r.checks.iter().find(|c| c.name == "pi_s-symmetric-part").unwrap();
    let x11 = sym.residuals.iter().find(|x| x.label == "x1,x1").unwrap();
    assert_eq!(x11.value, "-1/2*x2^2 - 1/2*x3^2");
}
