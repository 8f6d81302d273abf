//! End-to-end runs of the `cohops` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cohops"))
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/corpus")
        .join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn report(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("report is JSON")
    }

    fn task(&self, i: usize) -> Value {
        self.report()["tasks"][i].clone()
    }
}

fn run(args: &[&str]) -> Run {
    let out = bin().args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write_doc(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn run_doc(body: &str, extra: &[&str]) -> Run {
    let f = write_doc(body);
    let path = f.path().to_str().unwrap().to_string();
    let mut args = vec!["run", path.as_str()];
    args.extend_from_slice(extra);
    run(&args)
}

fn summary(r: &Run, i: usize) -> String {
    r.task(i)["summary"]
        .as_str()
        .unwrap_or_default()
        .to_string()
}

#[test]
fn corpus_documents_pass_every_task() {
    for name in ["kx2.json", "kx3_hochschild.json", "two_vars_ci.json"] {
        let path = corpus(name);
        let r = run(&["run", path.to_str().unwrap()]);
        assert_eq!(r.code, 0, "{name}: {}", r.stdout);
        let report = r.report();
        for t in report["tasks"].as_array().unwrap() {
            assert_eq!(t["status"], "ok", "{name}: {t}");
        }
    }
}

#[test]
fn reports_are_byte_stable_across_runs_and_jobs() {
    let path = corpus("kx3_hochschild.json");
    let p = path.to_str().unwrap();
    let a = run(&["run", p]);
    let b = run(&["run", p]);
    let c = run(&["run", p, "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert!(!a.stdout.contains("wall_ms"));
    let t = run(&["run", p, "--timings"]);
    assert!(t.task(0)["wall_ms"].is_number());
}

#[test]
fn ext_task_on_the_dual_numbers_is_periodic() {
    let r = run_doc(
        r#"{ "algebras": { "kx2": "k[x]/(x^2)" },
             "modules": { "k": { "kind": "residue-field", "algebra": "kx2" } },
             "tasks": [ { "op": "ext", "module": "k", "coefficients": "k", "degrees": "0..6" } ] }"#,
        &[],
    );
    assert_eq!(r.code, 0);
    assert_eq!(summary(&r, 0), "dims 1 1 1 1 1 1 1");
}

#[test]
fn phi_eq_psi_alpha_holds_on_the_sextic_truncation() {
    let r = run_doc(
        r#"{ "algebras": { "R": "k[x]/(x^6)", "B": "k[x]/(x^3)" },
             "maps": { "p": { "source": "R", "target": "B", "images": ["x"] } },
             "modules": { "k": { "kind": "residue-field", "algebra": "B" } },
             "extensions": { "xhat": { "kind": "ideal-map", "map": "p", "generator": "x^3", "image": "1" } },
             "tasks": [ { "op": "verify", "suite": "phi_eq_psi_alpha", "extension": "xhat", "module": "k" } ] }"#,
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.task(0)["status"], "ok");
}

#[test]
fn malformed_polynomial_exits_three_with_position() {
    let r = run_doc(
        r#"{ "algebras": { "B": "k[x]/(x^+1)" }, "tasks": [ { "op": "build-algebra", "algebra": "B" } ] }"#,
        &[],
    );
    assert_eq!(r.code, 3);
    let err = r.report()["error"].as_str().unwrap().to_string();
    assert!(err.contains("position 8"), "{err}");
    assert!(r.stderr.contains("position 8"));
    let r = run(&["build-algebra", "k[x,y]/(x^2,xy)"]);
    assert_eq!(r.code, 3);
    assert!(r.report()["error"].as_str().unwrap().contains("xy"));
}

#[test]
fn subcommand_examples() {
    let r = run(&["h1", "--field", "q", "k[x]/(x^2)"]);
    assert_eq!((r.code, summary(&r, 0)), (0, "dim 1".to_string()));
    assert_eq!(r.report()["field"], "q");
    let r = run(&["fingen", "k[x]/(x^2)", "--max-degree", "8"]);
    assert_eq!(summary(&r, 0), "generated in degree ≤ 1");
    let r = run(&["gamma", "k[x]/(x^2)", "--extension", "split"]);
    assert_eq!(summary(&r, 0), "class 0");
    let r = run(&["ext", "k[x]/(x^3)", "--degrees", "0..4"]);
    assert_eq!(summary(&r, 0), "dims 1 1 1 1 1");
    let r = run(&["tor", "k[x,y]/(x^2,x*y,y^2)", "--degrees", "0..3"]);
    assert_eq!(summary(&r, 0), "dims 1 2 4 8");
}

#[test]
fn operator_subcommands_agree() {
    let b = "k[x]/(x^3)";
    let psi = run(&["psi", b, "--extension", "truncation"]);
    let s = run(&["s", b, "--extension", "truncation"]);
    let phi = run(&["phi", b, "--ring", "k[x]/(x^6)", "--generator", "x^3"]);
    let via_ring = run(&["psi", b, "--ring", "k[x]/(x^6)", "--generator", "x^3"]);
    for r in [&psi, &s, &phi, &via_ring] {
        assert_eq!(r.code, 0, "{}", r.stdout);
        assert_eq!(summary(r, 0), "class (100)");
    }
    let d = run(&["alpha", b, "--extension", "derivation:x^2"]);
    assert_eq!(summary(&d, 0), "class 0");
    let a = run(&[
        "act",
        b,
        "--extension",
        "truncation",
        "--degree",
        "1",
        "--coords",
        "1",
    ]);
    assert_eq!(summary(&a, 0), "class (100)");
    assert_eq!(a.task(0)["degree"], 3);
    let e = run(&["psi", "k[x]/(x^2)", "--extension", "surjection:k[x]/(x^4)"]);
    assert_eq!((e.code, summary(&e, 0)), (0, "class (100)".to_string()));
}

#[test]
fn every_report_embeds_the_conventions() {
    for args in [
        vec!["build-algebra", "k[x]/(x^2)"],
        vec!["h1", "k[x]/(x^2)"],
        vec!["verify", "resolution_oracle"],
        vec!["build-algebra", "k[x]/(x^"],
    ] {
        let r = run(&args);
        let c = &r.report()["conventions"];
        assert_eq!(c["monomial_order"], "grevlex", "{args:?}");
        assert!(c["connecting_map_sign"].is_string());
        assert!(c["section_rule"]
            .as_str()
            .unwrap()
            .starts_with("pivot section"));
    }
}

#[test]
fn failed_expectation_exits_two_and_later_tasks_still_run() {
    let r = run_doc(
        r#"{ "algebras": { "B": "k[x]/(x^2)" },
             "tasks": [ { "op": "h1", "algebra": "B", "expect": "dim 2" },
                        { "op": "h1", "algebra": "B", "expect": "dim 1" } ] }"#,
        &[],
    );
    assert_eq!(r.code, 2);
    assert_eq!(r.task(0)["status"], "fail");
    assert_eq!(r.task(0)["expected"], "dim 2");
    assert_eq!(r.task(1)["status"], "ok");
    assert_eq!(r.report()["status"], "fail");
}

#[test]
fn budget_errors_exit_one_and_invalid_input_takes_precedence() {
    let body = r#"{ "algebras": { "B": "k[x]/(x^3)" },
                    "extensions": { "t": { "kind": "truncation", "algebra": "B" } },
                    "tasks": [ { "op": "gamma", "extension": "t" },
                               { "op": "h1", "algebra": "B", "expect": "dim 5" }TAIL ] }"#;
    let r = run_doc(&body.replace("TAIL", ""), &["--budget", "10"]);
    assert_eq!(r.code, 1, "{}", r.stdout);
    assert!(r.task(0)["error"].as_str().unwrap().contains("budget"));
    let r = run_doc(
        &body.replace(
            "TAIL",
            r#", { "op": "psi", "extension": "nope", "module": "k" }"#,
        ),
        &["--budget", "10"],
    );
    assert_eq!(r.code, 3);
    assert!(r.task(2)["error"]
        .as_str()
        .unwrap()
        .contains("unknown extension `nope`"));
    let r = run_doc(&body.replace("TAIL", ""), &[]);
    assert_eq!(r.code, 2);
}

#[test]
fn invalid_documents_exit_three() {
    let r = run_doc("{ not json", &[]);
    assert_eq!(r.code, 3);
    let r = run_doc(r#"{ "tasks": [ { "op": "frobnicate" } ] }"#, &[]);
    assert_eq!(r.code, 3);
    let r = run_doc(r#"{ "tasks": [], "colour": 1 }"#, &[]);
    assert_eq!(r.code, 3);
    let r = run_doc(r#"{ "field": "fp:100", "tasks": [] }"#, &[]);
    assert_eq!(r.code, 3);
    let r = run(&["run", "/nonexistent/doc.json"]);
    assert_eq!(r.code, 3);
    let r = run(&["verify", "no_such_suite"]);
    assert_eq!(r.code, 3);
}

#[test]
fn field_flag_overrides_the_document() {
    let body = r#"{ "field": "fp:5", "algebras": { "B": "k[x]/(x^5)" },
                    "tasks": [ { "op": "h1", "algebra": "B" } ] }"#;
    let r = run_doc(body, &[]);
    assert_eq!(
        (r.report()["field"].clone(), summary(&r, 0)),
        ("fp:5".into(), "dim 5".to_string())
    );
    let r = run_doc(body, &["--field", "q"]);
    assert_eq!(summary(&r, 0), "dim 4");
}

#[test]
fn explicit_modules_and_cocycles_round_trip() {
    // k[x]/(x^2) acting on k with x -> 0, and the cocycle f(x, x) = 1 on k
    let r = run_doc(
        r#"{ "algebras": { "B": "k[x]/(x^2)" },
             "modules": { "K": { "kind": "action", "algebra": "B", "matrices": [[[1]], [[0]]] },
                          "k": { "kind": "residue-field", "algebra": "B" } },
             "extensions": { "c": { "kind": "cocycle", "algebra": "B", "module": "K",
                                    "values": [["0"], ["0"], ["0"], ["1"]] } },
             "tasks": [ { "op": "ext", "module": "K", "coefficients": "k", "degrees": 2 },
                        { "op": "alpha", "extension": "c" },
                        { "op": "psi", "extension": "c", "module": "k" } ] }"#,
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(summary(&r, 0), "dims 1");
    assert_ne!(summary(&r, 1), "class 0");
    assert_ne!(summary(&r, 2), "class 0");
}

#[test]
fn verify_all_reports_each_criterion() {
    let r = run(&["verify", "all", "--jobs", "4"]);
    let report = r.report();
    let tasks = report["tasks"].as_array().unwrap();
    assert_eq!(tasks.len(), 10);
    for (i, t) in tasks.iter().enumerate() {
        assert_eq!(t["criterion"], i + 1);
        assert!(t["detail"]
            .as_str()
            .unwrap()
            .starts_with("tolerance: exact"));
    }
    let failing: Vec<i32> = tasks
        .iter()
        .filter(|t| t["status"] != "ok")
        .map(|t| t["criterion"].as_i64().unwrap() as i32)
        .collect();
    assert_eq!(r.code, if failing.is_empty() { 0 } else { 2 });
}
