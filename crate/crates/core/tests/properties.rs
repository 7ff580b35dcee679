//! Property tests and brute-force oracles for the invariants that hold
//! across arbitrary inputs: redaction reversibility and idempotence, score
//! monotonicity, threshold counting, audit summarization, and the fixture
//! gold temporal edges re-derived by an independent rule applier.

use std::collections::BTreeMap;

use proptest::prelude::*;

use casekb::config::PipelineConfig;
use casekb::extract::Bucket;
use casekb::fixtures::generate_fixture_corpus;
use casekb::lexicon::PathKind;
use casekb::pipeline::{discover_bundles, run_corpus};
use casekb::redact::{audit_summary, redact, reverse_redaction, RedactionRuleSet};
use casekb::score::{high_conf_fraction, score_event, ScoreInputs};
use serde_json::Value;

fn rules() -> RedactionRuleSet {
    RedactionRuleSet::from_json(casekb::config::defaults::REDACTION_RULES, "prop").unwrap()
}

fn metadata() -> BTreeMap<String, String> {
    [
        ("victim_name".to_string(), "Jane Roe".to_string()),
        ("suspect_name".to_string(), "John Doe".to_string()),
    ]
    .into()
}

const TOKENS: [&str; 20] = [
    "the",
    "suspect",
    "took",
    "a",
    "wallet",
    "near",
    "Then",
    "V",
    "S1",
    "officer",
    "John Doe",
    "Jane Roe",
    "04/12/2024",
    "123 Main Street",
    "Rochester",
    "Highland Park",
    "ABC-1234",
    "window",
    "door",
    "stated",
];

fn narrative_strategy() -> impl Strategy<Value = String> {
    prop::collection::vec(0..TOKENS.len(), 1..30).prop_map(|indices| {
        let mut text = indices
            .iter()
            .map(|&i| TOKENS[i])
            .collect::<Vec<_>>()
            .join(" ");
        text.push('.');
        text
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Applying the audit log in reverse reconstructs the input exactly, and
    /// redacting a redacted text introduces no new placeholders.
    #[test]
    fn redaction_reverses_and_is_idempotent(text in narrative_strategy()) {
        let rules = rules();
        let metadata = metadata();
        let (narrative, audit) = redact("P-1", &text, &metadata, &rules);
        let back = reverse_redaction(&narrative.text, &audit).unwrap();
        prop_assert_eq!(&back, &text);

        let (second, second_audit) = redact("P-1", &narrative.text, &metadata, &rules);
        prop_assert_eq!(&second.text, &narrative.text);
        prop_assert!(second_audit.substitutions.is_empty());

        // stability: same surface and category always map to the same label
        let mut seen: BTreeMap<(String, String), String> = BTreeMap::new();
        for sub in &audit.substitutions {
            let key = (format!("{:?}", sub.category), sub.original_text.to_lowercase());
            let label = seen.entry(key).or_insert_with(|| sub.placeholder_label.clone());
            prop_assert_eq!(label.as_str(), sub.placeholder_label.as_str());
        }

        // spans are sorted and non-overlapping
        for pair in audit.substitutions.windows(2) {
            prop_assert!(pair[0].original_span_end <= pair[1].original_span_start);
        }
    }

    /// Negation and hedging never raise a score; a full semantic path never
    /// scores below the lemma fallback; with a fired rule the pre-bonus
    /// blend stays between the prior and the bounded evidence.
    #[test]
    fn score_monotonicity(
        bucket_idx in 0usize..4,
        has_path in any::<bool>(),
        anchor in any::<bool>(),
        object in any::<bool>(),
        n_syn in 0usize..40,
        n_vn in 0usize..40,
        prior_milli in prop::option::of(0u32..=1000),
    ) {
        let cfg = PipelineConfig::default_config().unwrap().score;
        let bucket = [Bucket::IncidentCore, Bucket::PoliceAction, Bucket::ContextAdmin, Bucket::Uncertain][bucket_idx];
        let base = ScoreInputs {
            bucket,
            path_kind: has_path.then_some(PathKind::Full),
            anchor_matched: anchor,
            object_evidence: object,
            negated: false,
            hedged: false,
            n_wordnet_synsets: n_syn,
            n_verbnet_senses: n_vn,
            rule_prior: prior_milli.map(|p| p as f64 / 1000.0),
            specificity_bonus: 0.0,
        };
        let plain = score_event(&base, &cfg);
        prop_assert!((0.0..=1.0).contains(&plain.finalc));

        let mut negated = base.clone();
        negated.negated = true;
        prop_assert!(score_event(&negated, &cfg).finalc <= plain.finalc + 1e-12);

        let mut hedged = base.clone();
        hedged.hedged = true;
        prop_assert!(score_event(&hedged, &cfg).finalc <= plain.finalc + 1e-12);

        if has_path {
            let mut fallback = base.clone();
            fallback.path_kind = Some(PathKind::LemmaFallback);
            prop_assert!(score_event(&fallback, &cfg).finalc <= plain.finalc + 1e-12);
        }

        if let Some(prior) = base.rule_prior {
            let evidence = {
                let mut x = plain.raw.clamp(0.0, 1.0);
                if base.object_evidence { x = x.min(0.98); }
                x
            };
            let lo = prior.min(evidence) - 1e-12;
            let hi = prior.max(evidence) + 1e-12;
            prop_assert!(plain.finalc >= lo && plain.finalc <= hi);
        }

        // exact decomposition to 1e-9
        prop_assert!((plain.raw - (plain.base + plain.lexical_bonus + plain.structural_bonus - plain.penalty)).abs() < 1e-9);
    }

    /// The threshold fraction equals a brute-force recount.
    #[test]
    fn high_conf_matches_brute_force(scores in prop::collection::vec(0.0f64..=1.0, 0..200), tau in 0.0f64..=1.0) {
        let got = high_conf_fraction(&scores, tau);
        let mut count = 0usize;
        for s in &scores {
            if *s >= tau { count += 1; }
        }
        match got {
            None => prop_assert!(scores.is_empty()),
            Some(f) => prop_assert!((f - count as f64 / scores.len() as f64).abs() < 1e-12),
        }
    }
}

/// The audit summary equals an independent counter over the written audit
/// files of the fixture corpus.
#[test]
fn audit_summary_matches_independent_counter() {
    let corpus = tempfile::tempdir().unwrap();
    generate_fixture_corpus(42, 10, corpus.path()).unwrap();
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    run_corpus(&bundles, &cfg, out.path()).unwrap();

    let mut audits = Vec::new();
    let mut independent: BTreeMap<String, usize> = BTreeMap::new();
    for bundle in &bundles {
        let path = out
            .path()
            .join(&bundle.case_id)
            .join(format!("{}.audit.json", bundle.case_id));
        let raw: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for sub in raw["substitutions"].as_array().unwrap() {
            *independent
                .entry(sub["category"].as_str().unwrap().to_string())
                .or_insert(0) += 1;
        }
        audits.push(serde_json::from_value(raw).unwrap());
    }
    let summary = audit_summary(&audits);
    for row in &summary.rows {
        let expected = independent.get(row.category.label()).copied().unwrap_or(0);
        assert_eq!(row.total, expected, "{}", row.category.label());
        assert!((row.avg_per_report - expected as f64 / 10.0).abs() < 1e-12);
    }
    assert_eq!(
        summary.grand_total,
        independent.values().sum::<usize>()
    );
}

/// Gold temporal edges are reproducible by a brute-force, independently
/// written application of the cue and axiom rules over the written outputs.
#[test]
fn gold_temporal_edges_match_independent_rule_applier() {
    let corpus = tempfile::tempdir().unwrap();
    generate_fixture_corpus(42, 10, corpus.path()).unwrap();
    let out = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig::default_config().unwrap();
    let bundles = discover_bundles(corpus.path()).unwrap();
    run_corpus(&bundles, &cfg, out.path()).unwrap();

    for bundle in &bundles {
        let case_id = &bundle.case_id;
        let dir = out.path().join(case_id);
        let events: Value =
            serde_json::from_str(&std::fs::read_to_string(dir.join("events.json")).unwrap())
                .unwrap();
        let events = events.as_array().unwrap();
        let narrative: Value =
            serde_json::from_str(&std::fs::read_to_string(dir.join("redacted.json")).unwrap())
                .unwrap();
        let text = narrative["text"].as_str().unwrap();
        let sentences: Vec<String> = narrative["sentences"]
            .as_array()
            .unwrap()
            .iter()
            .map(|span| {
                let s = span[0].as_u64().unwrap() as usize;
                let e = span[1].as_u64().unwrap() as usize;
                text[s..e].to_lowercase()
            })
            .collect();

        // brute-force cue pass
        let contains_word = |hay: &str, needle: &str| -> bool {
            let mut from = 0;
            while let Some(p) = hay[from..].find(needle) {
                let (s, e) = (from + p, from + p + needle.len());
                let pre = s == 0 || !hay.as_bytes()[s - 1].is_ascii_alphanumeric();
                let post = e == hay.len() || !hay.as_bytes()[e].is_ascii_alphanumeric();
                if pre && post {
                    return true;
                }
                from = s + 1;
            }
            false
        };
        let head_of = |si: usize| -> Option<&Value> {
            events.iter().find(|e| {
                e["sentence_index"].as_u64() == Some(si as u64)
                    && e["sentence_head"].as_bool() == Some(true)
            })
        };
        let pred = |e: &Value| e["predicate_sense"].as_str().unwrap().to_string();
        let mut cue_pairs: Vec<(String, String)> = Vec::new();
        for (i, sentence) in sentences.iter().enumerate().skip(1) {
            if ["then", "after", "later", "upon returning"]
                .iter()
                .any(|c| contains_word(sentence, c))
            {
                if let (Some(a), Some(b)) = (head_of(i - 1), head_of(i)) {
                    cue_pairs.push((pred(a), pred(b)));
                }
            }
        }
        for (i, sentence) in sentences.iter().enumerate() {
            let in_sentence: Vec<&Value> = events
                .iter()
                .filter(|e| {
                    e["sentence_index"].as_u64() == Some(i as u64)
                        && e["bucket"].as_str() != Some("context_admin")
                })
                .collect();
            if in_sentence.len() >= 2 {
                if contains_word(sentence, "before") {
                    cue_pairs.push((pred(in_sentence[0]), pred(in_sentence[1])));
                } else if contains_word(sentence, "after") {
                    cue_pairs.push((pred(in_sentence[1]), pred(in_sentence[0])));
                }
            }
        }

        // brute-force axiom pass
        let axiom_rules: [(&str, &str, Option<u64>); 4] = [
            ("ForcedEntryEvent", "TheftEvent", None),
            ("CallEvent", "ReportTakenEvent", Some(1)),
            ("ReturnEvent", "DiscoveryEvent", None),
            ("ArrestEvent", "BookingEvent", None),
        ];
        let mut axiom_pairs: Vec<(String, String)> = Vec::new();
        for (src_class, tgt_class, gap) in axiom_rules {
            for a in events.iter().filter(|e| e["event_class"] == src_class) {
                for b in events.iter().filter(|e| e["event_class"] == tgt_class) {
                    if a["event_id"] == b["event_id"] {
                        continue;
                    }
                    if let Some(gap) = gap {
                        let sa = a["sentence_index"].as_u64().unwrap();
                        let sb = b["sentence_index"].as_u64().unwrap();
                        if sa.abs_diff(sb) > gap {
                            continue;
                        }
                    }
                    axiom_pairs.push((pred(a), pred(b)));
                }
            }
        }

        // merge with cue priority
        let mut expected: Vec<(String, String, String)> = Vec::new();
        for (s, t) in &cue_pairs {
            let support = if axiom_pairs.contains(&(s.clone(), t.clone())) {
                "cue+axiom"
            } else {
                "cue"
            };
            if !expected.iter().any(|(es, et, _)| es == s && et == t) {
                expected.push((s.clone(), t.clone(), support.to_string()));
            }
        }
        for (s, t) in &axiom_pairs {
            let opposed = cue_pairs.iter().any(|(cs, ct)| cs == t && ct == s);
            let merged = expected.iter().any(|(es, et, _)| es == s && et == t);
            if !opposed && !merged {
                expected.push((s.clone(), t.clone(), "axiom".to_string()));
            }
        }
        expected.sort();

        let gold = casekb::fixtures::load_gold(&corpus.path().join(case_id), case_id).unwrap();
        let mut gold_edges: Vec<(String, String, String)> = gold
            .temporal_edges
            .iter()
            .map(|e| (e.source_predicate.clone(), e.target_predicate.clone(), e.support.clone()))
            .collect();
        gold_edges.sort();
        assert_eq!(expected, gold_edges, "{case_id}: oracle vs gold");
    }
}
