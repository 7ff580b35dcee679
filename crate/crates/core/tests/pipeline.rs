//! Integration tests for the per-case pipeline: file manifests, edge cases,
//! failure isolation, the parser adapter, and evidence traceability.


use std::path::Path;

use casekb::config::PipelineConfig;
use casekb::fixtures::generate_fixture_corpus;
use casekb::ontology::import_turtle;
use casekb::pipeline::{discover_bundles, run_case, run_corpus, CaseStatus};
use serde_json::Value;

fn write(path: &Path, content: &str) {
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    std::fs::write(path, content).unwrap();
}

fn make_case(dir: &Path, case_id: &str, narrative: &str, metadata: &str, amr: Option<&str>) {
    let case = dir.join(case_id);
    write(&case.join("narrative.txt"), narrative);
    write(&case.join("metadata.json"), metadata);
    if let Some(amr) = amr {
        write(&case.join("amr").join(format!("{case_id}.amr.txt")), amr);
    }
}

#[test]
fn run_case_writes_full_manifest() {
    let corpus = tempfile::tempdir().unwrap();
    generate_fixture_corpus(42, 1, corpus.path()).unwrap();
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    let run = run_case(&bundles[0], &cfg, out.path());
    assert!(matches!(run.status, CaseStatus::Ok), "{:?}", run.status);
    let case_id = &run.case_id;
    for name in [
        "redacted.txt".to_string(),
        "redacted.json".to_string(),
        "events.json".to_string(),
        "frames.json".to_string(),
        format!("{case_id}.audit.json"),
        format!("{case_id}.facts.json"),
        format!("{case_id}.ttl"),
        format!("{case_id}.temporal.dot"),
        format!("{case_id}.temporal.json"),
    ] {
        assert!(
            out.path().join(case_id).join(&name).exists(),
            "missing {name}"
        );
    }
}

#[test]
fn empty_narrative_yields_zero_events_and_consistent_kb() {
    let corpus = tempfile::tempdir().unwrap();
    make_case(
        corpus.path(),
        "EMPTY-1",
        "",
        r#"{"case_number": "C-0", "offense": "Larceny"}"#,
        Some("# no sentences\n"),
    );
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    let run = run_case(&bundles[0], &cfg, out.path());
    assert!(matches!(run.status, CaseStatus::Ok), "{:?}", run.status);
    let events: Value = serde_json::from_str(
        &std::fs::read_to_string(out.path().join("EMPTY-1/events.json")).unwrap(),
    )
    .unwrap();
    assert!(events.as_array().unwrap().is_empty());
    let facts: Value = serde_json::from_str(
        &std::fs::read_to_string(out.path().join("EMPTY-1/EMPTY-1.facts.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(facts["validation_final"]["consistent"], Value::Bool(true));
}

#[test]
fn malformed_penman_fails_one_case_not_the_batch() {
    let corpus = tempfile::tempdir().unwrap();
    generate_fixture_corpus(42, 3, corpus.path()).unwrap();
    make_case(
        corpus.path(),
        "BAD-1",
        "Something happened.",
        "{}",
        Some("(x / broken-01 :ARG0 (y / person)\n"),
    );
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    assert_eq!(bundles.len(), 4);
    let (metrics, summary) = run_corpus(&bundles, &cfg, out.path()).unwrap();
    assert_eq!(summary.cases_failed, 1);
    assert_eq!(summary.cases_ok, 3);
    assert_eq!(metrics.total_cases, 3);
    // the three good cases still wrote their outputs
    assert!(out.path().join("CASE-001/events.json").exists());
    assert!(out.path().join("CASE-003/events.json").exists());
    assert!(!out.path().join("BAD-1/events.json").exists());
}

#[test]
fn failed_case_leaves_no_partial_outputs() {
    let corpus = tempfile::tempdir().unwrap();
    make_case(
        corpus.path(),
        "BAD-2",
        "Something happened.",
        "{}",
        Some("(x / broken-01 :ARG0 (y / person)\n"),
    );
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    let run = run_case(&bundles[0], &cfg, out.path());
    assert!(matches!(run.status, CaseStatus::Failed { .. }));
    // the failure happened after redaction, but nothing was finalized
    assert!(!out.path().join("BAD-2").exists());
    assert!(!out.path().join(".tmp-BAD-2").exists());
}

#[test]
fn sentence_graph_mismatch_rejected() {
    let corpus = tempfile::tempdir().unwrap();
    make_case(
        corpus.path(),
        "MIS-1",
        "One sentence here. And a second one.",
        "{}",
        Some("(x / call-01)\n"),
    );
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    let run = run_case(&bundles[0], &cfg, out.path());
    match run.status {
        CaseStatus::Failed { reason } => assert!(reason.contains("2 sentences"), "{reason}"),
        other => panic!("expected failure, got {other:?}"),
    }
}

#[test]
fn missing_amr_without_adapter_is_skipped_with_reason() {
    let corpus = tempfile::tempdir().unwrap();
    make_case(corpus.path(), "NOAMR-1", "Something happened.", "{}", None);
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    let run = run_case(&bundles[0], &cfg, out.path());
    match run.status {
        CaseStatus::Skipped { reason } => assert!(reason.contains("parser adapter"), "{reason}"),
        other => panic!("expected skip, got {other:?}"),
    }
}

#[test]
fn parser_adapter_supplies_penman() {
    let corpus = tempfile::tempdir().unwrap();
    make_case(corpus.path(), "ADAPT-1", "S1 kicked the door.", "{}", None);
    let out = tempfile::tempdir().unwrap();
    let mut cfg = PipelineConfig::default_config().unwrap();
    // a stand-in external parser: any command that emits PENMAN on stdout
    cfg.parser_command = Some(
        "echo '(k / kick-01 :ARG0 (p / person :name \"S1\") :ARG1 (d / door))'".to_string(),
    );
    let bundles = discover_bundles(corpus.path()).unwrap();
    let run = run_case(&bundles[0], &cfg, out.path());
    assert!(matches!(run.status, CaseStatus::Ok), "{:?}", run.status);
    let events: Value = serde_json::from_str(
        &std::fs::read_to_string(out.path().join("ADAPT-1/events.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(events.as_array().unwrap().len(), 1);
    assert_eq!(events[0]["event_class"], "ForcedEntryEvent");
}

#[test]
fn failing_parser_adapter_fails_the_case() {
    let corpus = tempfile::tempdir().unwrap();
    make_case(corpus.path(), "ADAPT-2", "Something happened.", "{}", None);
    let out = tempfile::tempdir().unwrap();
    let mut cfg = PipelineConfig::default_config().unwrap();
    cfg.parser_command = Some("exit 3".to_string());
    let bundles = discover_bundles(corpus.path()).unwrap();
    let run = run_case(&bundles[0], &cfg, out.path());
    assert!(matches!(run.status, CaseStatus::Failed { .. }));
}

/// Every narrative-provenance assertion dereferences to an existing sentence
/// span of the redacted narrative.
#[test]
fn narrative_assertions_are_traceable_to_sentences() {
    let corpus = tempfile::tempdir().unwrap();
    generate_fixture_corpus(42, 10, corpus.path()).unwrap();
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    let (_, summary) = run_corpus(&bundles, &cfg, out.path()).unwrap();
    assert_eq!(summary.cases_failed, 0);
    let mut checked = 0usize;
    for bundle in &bundles {
        let case_id = &bundle.case_id;
        let dir = out.path().join(case_id);
        let narrative: Value =
            serde_json::from_str(&std::fs::read_to_string(dir.join("redacted.json")).unwrap())
                .unwrap();
        let n_sentences = narrative["sentences"].as_array().unwrap().len();
        let facts: Value = serde_json::from_str(
            &std::fs::read_to_string(dir.join(format!("{case_id}.facts.json"))).unwrap(),
        )
        .unwrap();
        for assertion in facts["assertions"].as_array().unwrap() {
            if assertion["provenance"] == "narrative" {
                let si = assertion["sentence_index"].as_u64().unwrap() as usize;
                assert!(si < n_sentences, "{case_id}: sentence {si} out of range");
                checked += 1;
            }
        }
        // every event mention's sentence also resolves
        let events: Value =
            serde_json::from_str(&std::fs::read_to_string(dir.join("events.json")).unwrap())
                .unwrap();
        for e in events.as_array().unwrap() {
            let si = e["sentence_index"].as_u64().unwrap() as usize;
            assert!(si < n_sentences);
        }
    }
    assert!(checked > 50, "expected many traceable assertions, saw {checked}");
}

#[test]
fn written_turtle_reimports_to_the_same_triples() {
    let corpus = tempfile::tempdir().unwrap();
    generate_fixture_corpus(42, 5, corpus.path()).unwrap();
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    run_corpus(&bundles, &cfg, out.path()).unwrap();
    for bundle in &bundles {
        let case_id = &bundle.case_id;
        let dir = out.path().join(case_id);
        let ttl = std::fs::read_to_string(dir.join(format!("{case_id}.ttl"))).unwrap();
        let imported = import_turtle(&ttl).unwrap();
        let facts: Value = serde_json::from_str(
            &std::fs::read_to_string(dir.join(format!("{case_id}.facts.json"))).unwrap(),
        )
        .unwrap();
        assert_eq!(
            imported.len(),
            facts["assertions"].as_array().unwrap().len(),
            "{case_id}: triple count"
        );
    }
}

#[test]
fn skipped_case_counts_separately_from_failures() {
    let corpus = tempfile::tempdir().unwrap();
    generate_fixture_corpus(42, 2, corpus.path()).unwrap();
    make_case(corpus.path(), "NOAMR-9", "Something happened.", "{}", None);
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    let (_, summary) = run_corpus(&bundles, &cfg, out.path()).unwrap();
    assert_eq!(summary.cases_ok, 2);
    assert_eq!(summary.cases_skipped, 1);
    assert_eq!(summary.cases_failed, 0);
}
