mod common;

use common::model_path;
use inqdef::cli::{run, ClosureReport, Outcome};
use inqdef::verify::{EnumerationReport, UndefinabilityReport};

fn inqdef(args: &[&str]) -> Outcome {
    run(std::iter::once("inqdef").chain(args.iter().copied()))
}

#[test]
fn eval_examples() {
    let (imp, dep) = (model_path("m_impl.json"), model_path("m_dep.json"));
    let out = inqdef(&["eval", &imp, "w2,w3", "?p", "--sig", "inq-"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "true\n"));
    let out = inqdef(&["eval", &imp, "", "bot"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "true\n"));
    let out = inqdef(&["eval", &dep, "w1,w2,w3", "=(p;q)", "--sig", "d"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "false\n"));
}

#[test]
fn prop_examples() {
    let (imp, dep) = (model_path("m_impl.json"), model_path("m_dep.json"));
    assert_eq!(inqdef(&["prop", &imp, "?p -> ?q"]).stdout, "{w1,w2},{w1,w3} ↓\n");
    assert_eq!(inqdef(&["prop", &imp, "bot"]).stdout, "{} ↓\n");
    assert_eq!(inqdef(&["prop", &dep, r"=(p) \/ =(q)"]).stdout, "{w1,w2},{w2,w3} ↓\n");
}

#[test]
fn verify_exit_codes() {
    let out = inqdef(&["verify", "implication"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("UNDEFINABLE\n"));

    let out = inqdef(&["verify", "globalor-dplus"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("UNDEFINABLE\n"));
    assert!(out.stdout.contains("closure size: 6\n"));

    let out = inqdef(&["verify", "implication", "--sig", "inq+"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("DEFINABLE, witness #1 -> #2\n"));
}

#[test]
fn verify_json_round_trips() {
    let out = inqdef(&["verify", "globalor-d", "--json"]);
    assert_eq!(out.code, 0);
    let report: UndefinabilityReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(!report.defined && report.witness.is_none());
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, out.stdout);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in ["theorem", "model", "signature", "defined", "closure_size", "forbidden_hits"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn closure_listing() {
    let (imp, dep) = (model_path("m_impl.json"), model_path("m_dep.json"));
    let out = inqdef(&["closure", &dep, "--sig", "d", "--left", "=(p)", "--right", "=(q)"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("6 members"));
    assert_eq!(out.stdout.lines().count(), 7);

    let out = inqdef(&["closure", &imp, "--sig", "inq-", "--left", "?p", "--right", "?q", "--json"]);
    let report: ClosureReport = serde_json::from_str(&out.stdout).unwrap();
    let rendered: Vec<&str> = report.members.iter().map(|m| m.rendered.as_str()).collect();
    for forbidden in ["{w1,w2},{w1,w3} ↓", "{w1,w2},{w2,w3} ↓", "{w1,w2},{w3} ↓"] {
        assert!(!rendered.contains(&forbidden));
    }
    assert!(rendered.contains(&"{w1,w3},{w2,w3} ↓"));

    let out = inqdef(&["closure", &imp, "--sig", "inq-"]);
    assert!(out.stdout.starts_with("2 members"));
    assert!(out.stdout.contains("{} ↓    bot\n") && out.stdout.contains("{w1,w2,w3} ↓    top\n"));
}

#[test]
fn crosscheck_exit_codes() {
    let imp = model_path("m_impl.json");
    let out = inqdef(&["crosscheck", &imp, "--sig", "inq-", "--left", "?p", "--right", "?q", "--max-size", "1", "--json"]);
    assert_eq!(out.code, 0);
    let report: EnumerationReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report.templates_checked, 5);
    assert!(report.all_in_closure);

    let dep = model_path("m_dep.json");
    let out = inqdef(&["crosscheck", &dep, "--sig", "d", "--left", "=(p)", "--right", "=(q)", "--max-size", "3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.starts_with("PASS"));
}

#[test]
fn errors_exit_with_two() {
    let imp = model_path("m_impl.json");
    for args in [
        &["eval", &imp, "w9", "p"][..],
        &["eval", &imp, "w1", "p /\\"],
        &["prop", "/nonexistent/model.json", "p"],
        &["prop", &imp, "p \\/ q", "--sig", "d"],
        &["verify", "nothing"],
        &["closure", &imp, "--sig", "inq-", "--left", "?r"],
        &["frobnicate"],
    ] {
        let out = inqdef(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(inqdef(&["--help"]).code, 0);
}
