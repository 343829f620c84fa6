use std::path::Path;

use serde_json::Value;
use teamsem_workbench::{run, EXIT_FAILS, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn teamsem(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("teamsem").chain(args.iter().copied()), &mut out, &mut err);
    Output { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn json(args: &[&str]) -> (i32, Value) {
    let o = teamsem(&[&["--json"], args].concat());
    (o.code, serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout)))
}

fn team_file(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

const EX1: [&str; 6] = [
    "entail",
    "--context",
    "p,q",
    "--premise",
    "nabla p /\\ (p \\/ q)",
    "--conclusion",
];

#[test]
fn eval_bottom_on_the_empty_team() {
    let dir = tempfile::tempdir().unwrap();
    let empty = team_file(dir.path(), "empty.json", r#"{"variables": ["p","q"], "rows": []}"#);
    let o = teamsem(&["eval", "--context", "p,q", "--team", &empty, "bot"]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "true\n"));
    let (code, v) = json(&["eval", "--context", "p,q", "--team", &empty, "bot"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["format"], 1);
    assert_eq!(v["result"], true);
}

#[test]
fn eval_false_still_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let t = team_file(dir.path(), "t.json", r#"{"variables": ["p","q"], "rows": [[0,1]]}"#);
    let o = teamsem(&["eval", "--context", "p,q", "--team", &t, "p"]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "false\n"));
}

#[test]
fn entailment_failure_prints_the_counterexample() {
    let o = teamsem(&[&EX1[..], &["(nabla p /\\ p) \\/ (nabla p /\\ q)"]].concat());
    assert_eq!(o.code, EXIT_FAILS);
    assert_eq!(o.stdout, "fails\ncounterexample: {(p0,q1), (p1,q0)}\n");
    let (code, v) = json(&[&EX1[..], &["(nabla p /\\ p) \\/ (nabla p /\\ q)"]].concat());
    assert_eq!(code, EXIT_FAILS);
    assert_eq!(v["holds"], false);
    assert_eq!(v["counterexample"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn valid_entailment_exits_zero() {
    let o = teamsem(&["entail", "--context", "p,q", "--premise", "p /\\ q", "--conclusion", "q"]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "holds\n"));
}

#[test]
fn witness_bundle_is_reverified() {
    let (code, v) = json(&["witness", "thm3-intersection"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["format"], 1);
    assert_eq!(v["id"], "thm3-intersection");
    assert_eq!(v["holds"], false);
    assert_eq!(v["verified"], true);
    assert_eq!(v["witness"], serde_json::json!([[1, 1]]));
    for case in ["example1", "example2-convex", "ne-union"] {
        assert_eq!(teamsem(&["witness", case]).code, EXIT_OK, "{case}");
    }
    let o = teamsem(&["witness", "nope"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("thm3-intersection"));
}

#[test]
fn closure_profile_reports_witnesses() {
    let (code, v) = json(&["closure", "--context", "p,q", "NE"]);
    assert_eq!(code, EXIT_OK);
    let props = v["properties"].as_array().unwrap();
    assert_eq!(props.len(), 7);
    let find = |name: &str| props.iter().find(|p| p["property"] == name).unwrap();
    assert_eq!(find("empty-team")["holds"], false);
    assert_eq!(find("upward")["holds"], true);
    assert_eq!(find("union")["holds"], true);
    assert_eq!(find("downward")["witness"]["kind"], "missing");
    let text = teamsem(&["closure", "--context", "p,q", "p"]).stdout;
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().all(|l| l.ends_with("yes") || l.contains(" no ")), "{text}");
}

#[test]
fn denote_lists_teams() {
    let o = teamsem(&["denote", "--context", "p", "p"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "2 teams\n{}\n{(p1)}\n");
    let (_, v) = json(&["denote", "--context", "p,q", "top"]);
    assert_eq!(v["count"], 16);
}

#[test]
fn pool_listing() {
    let (code, v) = json(&["pool", "--vars", "2", "--depth", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["size"], 98);
    let (_, v) = json(&["pool", "--vars", "2", "--depth", "3", "--connectives", "~,/\\,\\/,nabla"]);
    assert_eq!(v["size"], 31);
    assert_eq!(teamsem(&["pool", "--connectives", "xor"]).code, EXIT_USAGE);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    for args in [
        &["eval", "--context", "p,q"][..],
        &["bogus"],
        &["denote", "--context", "p,q", "p /\\"],
        &["denote", "--context", "p,q", "r"],
        &["denote", "--context", "p,p", "p"],
    ] {
        let o = teamsem(args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}: {}", o.stderr);
        assert!(!o.stderr.is_empty());
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn bad_team_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let dup = team_file(dir.path(), "dup.json", r#"{"variables": ["p","q"], "rows": [[1,0],[1,0]]}"#);
    let missing = dir.path().join("missing.json");
    for path in [dup.as_str(), missing.to_str().unwrap()] {
        let o = teamsem(&["eval", "--context", "p,q", "--team", path, "p"]);
        assert_eq!(o.code, EXIT_USAGE, "{}", o.stderr);
    }
}

#[test]
fn context_cap_exits_three() {
    let o = teamsem(&["denote", "--context", "p,q,r,s,t", "p"]);
    assert_eq!(o.code, EXIT_RESOURCE, "{}", o.stderr);
    assert_eq!(teamsem(&["pool", "--vars", "5"]).code, EXIT_RESOURCE);
    assert_eq!(teamsem(&["tables", "--vars", "5"]).code, EXIT_RESOURCE);
}

#[test]
fn help_goes_to_stdout() {
    let o = teamsem(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("entail"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "closure", "--context", "p,q", "p ovv bdia ~p"][..],
        &["--json", "pool", "--vars", "2", "--depth", "2"],
        &["--json", "witness", "example2-convex"],
        &["denote", "--context", "p,q", "nabla p"],
    ] {
        assert_eq!(teamsem(args).stdout, teamsem(args).stdout, "{args:?}");
    }
}

#[test]
fn tables_report_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let run_to = |p: &Path| teamsem(&["tables", "--vars", "2", "--depth", "2", "--out", p.to_str().unwrap()]);
    let (ra, rb) = (run_to(&a), run_to(&b));
    assert_eq!(ra.code, rb.code);
    assert_eq!(ra.stdout, rb.stdout);
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["summary"]["cells"], 105);
    assert_eq!(v["summary"]["skipped"], 1);
}
