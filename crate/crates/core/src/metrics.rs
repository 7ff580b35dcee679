//! Corpus-level extraction and ordering metrics.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::extract::{EventMention, Frame, FrameKind};
use crate::jsonutil::{pct, round4};
use crate::lexicon::PathKind;
use crate::score::high_conf_fraction;
use crate::temporal::TemporalGraph;

/// Everything metrics aggregation needs from one processed case.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseOutputs {
    pub case_id: String,
    pub events: Vec<EventMention>,
    pub frames: Vec<Frame>,
    pub temporal: TemporalGraph,
}

/// The corpus report. Fractions are in `[0, 1]`, rounded to four decimals;
/// `None` marks undefined values (empty denominators).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusMetrics {
    pub total_events: usize,
    pub total_cases: usize,
    pub arg0_present: Option<f64>,
    pub arg1_present: Option<f64>,
    pub both_args_present: Option<f64>,
    pub participants_per_case_median: Option<f64>,
    pub participants_per_case_max: usize,
    pub tau: f64,
    pub high_conf_fraction: Option<f64>,
    pub full_path_fraction: Option<f64>,
    pub lemma_fallback_fraction: Option<f64>,
    pub total_frames: usize,
    pub entry_point_filled: Option<f64>,
    pub entry_method_filled: Option<f64>,
    pub entry_structure_filled: Option<f64>,
    pub entry_tool_filled: Option<f64>,
    pub stolen_items_filled: Option<f64>,
    pub value_mentions_filled: Option<f64>,
    pub total_temporal_edges: usize,
    pub avg_edges_per_case: Option<f64>,
    /// cue + cue+axiom edges over all edges.
    pub cue_edge_fraction: Option<f64>,
    /// axiom-only edges over all edges.
    pub axiom_edge_fraction: Option<f64>,
    pub cases_with_edges_fraction: Option<f64>,
}

fn frac(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| round4(num as f64 / den as f64))
}

fn median(values: &mut [usize]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable();
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2] as f64
    } else {
        (values[n / 2 - 1] + values[n / 2]) as f64 / 2.0
    })
}

/// Compute every corpus metric. Participant counts use unique entity ids per
/// case; frame denominators are the frames of the slot's kind (Entry slots
/// over Entry frames, Theft slots over Theft frames); edges with cue+axiom
/// support count as cue.
pub fn compute_corpus_metrics(cases: &[CaseOutputs], tau: f64) -> CorpusMetrics {
    let total_cases = cases.len();
    let events: Vec<&EventMention> = cases.iter().flat_map(|c| c.events.iter()).collect();
    let total_events = events.len();

    let arg0 = events.iter().filter(|e| e.args.contains_key(":ARG0")).count();
    let arg1 = events.iter().filter(|e| e.args.contains_key(":ARG1")).count();
    let both = events
        .iter()
        .filter(|e| e.args.contains_key(":ARG0") && e.args.contains_key(":ARG1"))
        .count();

    let mut participant_counts: Vec<usize> = cases
        .iter()
        .map(|c| {
            let ids: BTreeSet<&str> = c
                .events
                .iter()
                .flat_map(|e| e.participants.iter().map(|(_, p)| p.entity_id.as_str()))
                .collect();
            ids.len()
        })
        .collect();
    let participants_max = participant_counts.iter().copied().max().unwrap_or(0);

    let confidences: Vec<f64> = events.iter().map(|e| e.confidence).collect();
    let grounded: Vec<PathKind> = events
        .iter()
        .filter_map(|e| e.semantic_path.as_ref().map(|p| p.path_kind))
        .collect();
    let full = grounded.iter().filter(|k| **k == PathKind::Full).count();
    let fallback = grounded.len() - full;

    let frames: Vec<&Frame> = cases.iter().flat_map(|c| c.frames.iter()).collect();
    let entry_frames: Vec<&&Frame> = frames.iter().filter(|f| f.kind == FrameKind::Entry).collect();
    let theft_frames: Vec<&&Frame> = frames.iter().filter(|f| f.kind == FrameKind::Theft).collect();
    let count_entry = |pick: fn(&Frame) -> bool| entry_frames.iter().filter(|f| pick(f)).count();
    let count_theft = |pick: fn(&Frame) -> bool| theft_frames.iter().filter(|f| pick(f)).count();

    let total_edges: usize = cases.iter().map(|c| c.temporal.edges.len()).sum();
    let (mut cue_like, mut axiom_only) = (0usize, 0usize);
    for c in cases {
        let (cue, axiom, both) = c.temporal.support_counts();
        cue_like += cue + both;
        axiom_only += axiom;
    }
    let cases_with_edges = cases.iter().filter(|c| !c.temporal.edges.is_empty()).count();

    CorpusMetrics {
        total_events,
        total_cases,
        arg0_present: frac(arg0, total_events),
        arg1_present: frac(arg1, total_events),
        both_args_present: frac(both, total_events),
        participants_per_case_median: median(&mut participant_counts),
        participants_per_case_max: participants_max,
        tau,
        high_conf_fraction: high_conf_fraction(&confidences, tau).map(round4),
        full_path_fraction: frac(full, grounded.len()),
        lemma_fallback_fraction: frac(fallback, grounded.len()),
        total_frames: frames.len(),
        entry_point_filled: frac(count_entry(|f| f.entry_point.is_some()), entry_frames.len()),
        entry_method_filled: frac(count_entry(|f| f.entry_method.is_some()), entry_frames.len()),
        entry_structure_filled: frac(
            count_entry(|f| f.entry_structure.is_some()),
            entry_frames.len(),
        ),
        entry_tool_filled: frac(count_entry(|f| f.entry_tool.is_some()), entry_frames.len()),
        stolen_items_filled: frac(
            count_theft(|f| !f.stolen_items.is_empty()),
            theft_frames.len(),
        ),
        value_mentions_filled: frac(
            count_theft(|f| !f.value_mentions.is_empty()),
            theft_frames.len(),
        ),
        total_temporal_edges: total_edges,
        avg_edges_per_case: (total_cases > 0)
            .then(|| round4(total_edges as f64 / total_cases as f64)),
        cue_edge_fraction: frac(cue_like, total_edges),
        axiom_edge_fraction: frac(axiom_only, total_edges),
        cases_with_edges_fraction: frac(cases_with_edges, total_cases),
    }
}

fn line(out: &mut String, name: &str, value: String) {
    out.push_str(&format!("  {:<38} {}\n", name, value));
}

fn opt_pct(v: Option<f64>) -> String {
    v.map(pct).unwrap_or_else(|| "--".to_string())
}

/// Plain-text table mirroring the corpus report layout. Footnote: frame slot
/// denominators are frames of the matching kind; cue+axiom edges count as
/// cue.
pub fn metrics_text(m: &CorpusMetrics) -> String {
    let mut out = String::new();
    out.push_str("Corpus-level extraction and ordering results\n");
    out.push_str("============================================\n");
    out.push_str("Event\n");
    line(&mut out, "Total events", m.total_events.to_string());
    line(&mut out, "Total cases", m.total_cases.to_string());
    line(&mut out, "ARG0 present", opt_pct(m.arg0_present));
    line(&mut out, "ARG1 present", opt_pct(m.arg1_present));
    line(&mut out, "Both ARG0 and ARG1", opt_pct(m.both_args_present));
    line(
        &mut out,
        "Participants/case (med./max.)",
        format!(
            "{} / {}",
            m.participants_per_case_median
                .map(|v| if v.fract() == 0.0 {
                    format!("{}", v as usize)
                } else {
                    format!("{v:.1}")
                })
                .unwrap_or_else(|| "--".to_string()),
            m.participants_per_case_max
        ),
    );
    line(
        &mut out,
        &format!("Typed with conf. >= {:.2}", m.tau),
        opt_pct(m.high_conf_fraction),
    );
    line(&mut out, "PB->VN->WN", opt_pct(m.full_path_fraction));
    line(&mut out, "Lemma->WN fallback", opt_pct(m.lemma_fallback_fraction));
    out.push_str("Frame\n");
    line(&mut out, "Total frames", m.total_frames.to_string());
    line(&mut out, "Entry point filled", opt_pct(m.entry_point_filled));
    line(&mut out, "Entry method filled", opt_pct(m.entry_method_filled));
    line(&mut out, "Entry structure filled", opt_pct(m.entry_structure_filled));
    line(&mut out, "Entry tool filled", opt_pct(m.entry_tool_filled));
    line(&mut out, "Stolen items filled", opt_pct(m.stolen_items_filled));
    line(&mut out, "Value mentions filled", opt_pct(m.value_mentions_filled));
    out.push_str("Temporal\n");
    line(&mut out, "Total ordering edges", m.total_temporal_edges.to_string());
    line(
        &mut out,
        "Avg. edges/case",
        m.avg_edges_per_case
            .map(|v| format!("{v:.2}"))
            .unwrap_or_else(|| "--".to_string()),
    );
    line(&mut out, "Cue edges", opt_pct(m.cue_edge_fraction));
    line(&mut out, "Axiom edges", opt_pct(m.axiom_edge_fraction));
    line(
        &mut out,
        "Cases with >= 1 edge",
        opt_pct(m.cases_with_edges_fraction),
    );
    out.push_str(
        "\nNotes: frame slot percentages are over frames of the matching kind;\n\
         cue+axiom edges count as cue in the edge fractions.\n",
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temporal::build_graph;

    fn case_with(events: Vec<EventMention>, frames: Vec<Frame>) -> CaseOutputs {
        CaseOutputs {
            case_id: "C-1".into(),
            events,
            frames,
            temporal: build_graph("C-1", Vec::new(), Vec::new(), Vec::new()),
        }
    }

    fn event(id: &str, with_arg0: bool, with_arg1: bool, confidence: f64) -> EventMention {
        use crate::extract::{Bucket, ParticipantRef};
        use crate::score::ScoreBreakdown;
        use std::collections::{BTreeMap, BTreeSet};
        let mut args = BTreeMap::new();
        let mut participants = Vec::new();
        let mk = |eid: &str| ParticipantRef {
            entity_id: eid.to_string(),
            pseudonym: None,
            semantic_types: BTreeSet::new(),
            concept: "thing".into(),
            sentence_index: 0,
            part_of: None,
            value_mention: None,
        };
        if with_arg0 {
            args.insert(":ARG0".to_string(), mk("E1"));
            participants.push((":ARG0".to_string(), mk("E1")));
        }
        if with_arg1 {
            args.insert(":ARG1".to_string(), mk("E2"));
            participants.push((":ARG1".to_string(), mk("E2")));
        }
        EventMention {
            event_id: id.to_string(),
            case_id: "C-1".into(),
            sentence_index: 0,
            predicate_sense: "x-01".into(),
            predicate_var: "x".into(),
            event_class: "NarrativeAction".into(),
            bucket: Bucket::Uncertain,
            args,
            participants,
            negated: false,
            hedged: false,
            typing_rule_id: None,
            semantic_path: None,
            confidence,
            score_breakdown: ScoreBreakdown {
                base: 0.3,
                lexical_bonus: 0.0,
                structural_bonus: 0.0,
                penalty: 0.0,
                penalty_ambiguity: 0.0,
                penalty_negation: 0.0,
                penalty_hedge: 0.0,
                raw: confidence,
                rule_prior: None,
                object_cap_applied: false,
                specificity_bonus: 0.0,
                finalc: confidence,
            },
            sentence_head: false,
        }
    }

    #[test]
    fn arg_presence_fractions() {
        let events = vec![
            event("e0", true, true, 0.9),
            event("e1", true, false, 0.7),
            event("e2", false, true, 0.85),
            event("e3", false, false, 0.5),
        ];
        let m = compute_corpus_metrics(&[case_with(events, vec![])], 0.8);
        assert_eq!(m.arg0_present, Some(0.5));
        assert_eq!(m.arg1_present, Some(0.5));
        assert_eq!(m.both_args_present, Some(0.25));
        assert_eq!(m.high_conf_fraction, Some(0.5));
    }

    #[test]
    fn empty_corpus_flags_undefined() {
        let m = compute_corpus_metrics(&[], 0.8);
        assert_eq!(m.total_events, 0);
        assert_eq!(m.arg0_present, None);
        assert_eq!(m.high_conf_fraction, None);
        assert_eq!(m.avg_edges_per_case, None);
        let text = metrics_text(&m);
        assert!(text.contains("--"));
    }

    #[test]
    fn median_is_standard() {
        assert_eq!(median(&mut [4, 25]), Some(14.5));
        assert_eq!(median(&mut [1, 4, 25]), Some(4.0));
        assert_eq!(median(&mut []), None);
    }
}
