//! Criterion benchmarks for the hot paths: PENMAN parsing, event scoring,
//! one full case run, and a ten-case corpus run.

use criterion::{criterion_group, criterion_main, Criterion};

use casekb::config::PipelineConfig;
use casekb::extract::Bucket;
use casekb::fixtures::generate_fixture_corpus;
use casekb::lexicon::PathKind;
use casekb::penman::parse_penman;
use casekb::pipeline::{discover_bundles, run_case, run_corpus};
use casekb::score::{score_event, ScoreConfig, ScoreInputs};

const FIG_SENTENCE: &str = "(a / and :op1 (b / break-01 :ARG0 (p / person) :ARG1 (w / window :mod (r / rear) :mod (p2 / passenger) :part-of (v / vehicle))) :op2 (s / steal-01 :ARG0 p :ARG1 (w2 / wallet)))";

fn bench_parse(c: &mut Criterion) {
    c.bench_function("parse_penman_fig_sentence", |b| {
        b.iter(|| parse_penman(std::hint::black_box(FIG_SENTENCE), 0).unwrap())
    });
}

fn bench_score(c: &mut Criterion) {
    let cfg = ScoreConfig::from_json(
        casekb::config::defaults::SCORE_CONFIG,
        "bench",
    )
    .unwrap();
    let inputs = ScoreInputs {
        bucket: Bucket::IncidentCore,
        path_kind: Some(PathKind::Full),
        anchor_matched: true,
        object_evidence: true,
        negated: false,
        hedged: false,
        n_wordnet_synsets: 1,
        n_verbnet_senses: 1,
        rule_prior: Some(0.85),
        specificity_bonus: 0.03,
    };
    c.bench_function("score_event_walkthrough", |b| {
        b.iter(|| score_event(std::hint::black_box(&inputs), &cfg))
    });
}

fn bench_case_and_corpus(c: &mut Criterion) {
    let corpus = tempfile::tempdir().unwrap();
    generate_fixture_corpus(42, 10, corpus.path()).unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();

    c.bench_function("run_case_fig3", |b| {
        b.iter(|| {
            let out = tempfile::tempdir().unwrap();
            run_case(std::hint::black_box(&bundles[0]), &cfg, out.path())
        })
    });

    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function("run_corpus_10_cases", |b| {
        b.iter(|| {
            let out = tempfile::tempdir().unwrap();
            run_corpus(std::hint::black_box(&bundles), &cfg, out.path()).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_parse, bench_score, bench_case_and_corpus);
criterion_main!(benches);
