//! The `engine` binary and the document runner behind it.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use toda_core::io::{parse_algebra, run_documents, AlgebraDoc, Command as Cmd, Params};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn engine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_engine"))
        .args(args)
        .env_remove("ENGINE_BUDGET")
        .output()
        .unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn massey_document() {
    let out = engine(&["massey", "--algebra", &path("q_m.json"), "--sequence", &path("abc.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["command"], "massey");
    assert_eq!(doc["engine"]["name"], "toda-core");
    assert_eq!(doc["status"], "defined");
    assert_eq!(doc["indeterminacy"]["cardinality"], "1");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ay + xc"), "{text}");
    assert!(text.ends_with("}\n"));
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("oracle.json");
    let args = ["oracle", "--algebra", &path("q_m.json"), "--sequence", &path("abc.json")];
    let stdout = engine(&args).stdout;
    let mut with_out = args.to_vec();
    let t = target.to_string_lossy().into_owned();
    with_out.extend(["--out", &t]);
    let out = engine(&with_out);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), stdout);
}

#[test]
fn user_errors_exit_with_one() {
    let missing = engine(&["homology", "--algebra", "/nonexistent/algebra.json"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());

    let invalid = engine(&["validate", "--algebra", &path("broken_d_squared.json")]);
    assert_eq!(invalid.status.code(), Some(1));
    let doc = json(&invalid);
    let text = doc.to_string();
    assert!(text.contains("d_squared"), "{text}");

    let tight = engine(&["oracle", "--algebra", &path("q_m.json"), "--sequence", &path("abc.json"), "--budget", "1"]);
    assert_eq!(tight.status.code(), Some(1));

    let no_sequence = engine(&["massey", "--algebra", &path("q_m.json")]);
    assert_eq!(no_sequence.status.code(), Some(1));

    let bad_flag = engine(&["massey", "--bogus"]);
    assert_eq!(bad_flag.status.code(), Some(1));
}

#[test]
fn chain_complex_and_adams() {
    let failed = json(&engine(&["chain-complex", "--algebra", &path("q_m.json"), "--sequence", &path("abc.json")]));
    assert_eq!(failed["status"], "failed");
    let adams = engine(&["adams-d", "--algebra", &path("q_m.json"), "--sequence", &path("ab_beta_c.json")]);
    assert_eq!(adams.status.code(), Some(0));
    assert_eq!(json(&adams)["status"], "nonzero");
}

#[test]
fn binary_matches_runner() {
    let algebra = std::fs::read(fixture("q_m.json")).unwrap();
    let sequence = std::fs::read(fixture("abc.json")).unwrap();
    for command in Cmd::ALL {
        let params = Params {
            command,
            n: None,
            k: None,
            budget: None,
        };
        let seq = matches!(command, Cmd::Massey | Cmd::Toda | Cmd::ChainComplex | Cmd::Oracle).then_some(sequence.as_slice());
        if command == Cmd::AdamsD {
            continue;
        }
        let doc = run_documents(&params, &algebra, seq).unwrap_or_else(|e| e.document);
        let mut args = vec![command.name().to_string(), "--algebra".into(), path("q_m.json")];
        if seq.is_some() {
            args.extend(["--sequence".into(), path("abc.json")]);
        }
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(json(&engine(&refs)), doc, "{command}");
    }
}

#[test]
fn truncation_round_trips_through_the_document_format() {
    let text = std::fs::read_to_string(fixture("q_m.json")).unwrap();
    let q = parse_algebra(&text).unwrap();
    let doc = AlgebraDoc::from_algebra(&q);
    let again = AlgebraDoc::from_algebra(&doc.build().unwrap());
    assert_eq!(doc, again);

    let out = engine(&["truncate", "--algebra", &path("q_m.json"), "--k", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let truncated: AlgebraDoc = serde_json::from_value(json(&out)["algebra"].clone()).unwrap();
    assert_eq!(truncated.truncation, 0);
    assert!(truncated.basis.iter().all(|b| b.s == 0));
}
