//! Per-case temporal graphs: Precedes edges from narrative cues and from
//! domain precedence axioms, merged with cue-over-axiom conflict resolution,
//! plus deterministic DOT export.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::extract::{Bucket, EventMention};

/// What supports a precedence edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeSupport {
    Cue,
    Axiom,
    #[serde(rename = "cue+axiom")]
    CueAxiom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecedenceEdge {
    pub source: String,
    pub target: String,
    pub support: EdgeSupport,
    /// Cue token, axiom id, or both joined with `+`.
    pub label: String,
    pub evidence_sentences: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrecedenceAxiom {
    pub axiom_id: String,
    pub source_class: String,
    pub target_class: String,
    pub same_case: bool,
    /// Some(k): the pair only links when sentence indices differ by at most k.
    #[serde(default)]
    pub max_sentence_gap: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub axioms: Vec<PrecedenceAxiom>,
}

impl AxiomConfig {
    pub fn from_json(json: &str, origin: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(json).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntraDirection {
    FirstPrecedesSecond,
    SecondPrecedesFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchPosition {
    Initial,
    Anywhere,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CueConfig {
    pub adjacent_cues: Vec<String>,
    pub intra_sentence_cues: BTreeMap<String, IntraDirection>,
    pub match_position: MatchPosition,
}

impl CueConfig {
    pub fn from_json(json: &str, origin: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(json).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }
}

fn contains_cue(sentence: &str, cue: &str, position: MatchPosition) -> bool {
    let hay = sentence.to_ascii_lowercase();
    let needle = cue.to_ascii_lowercase();
    match position {
        MatchPosition::Initial => hay
            .trim_start()
            .strip_prefix(&needle)
            .map(|rest| !rest.chars().next().map(char::is_alphanumeric).unwrap_or(false))
            .unwrap_or(false),
        MatchPosition::Anywhere => {
            let mut from = 0;
            while let Some(pos) = hay[from..].find(&needle) {
                let (s, e) = (from + pos, from + pos + needle.len());
                let before_ok = s == 0
                    || !hay[..s].chars().next_back().map(|c| c.is_alphanumeric()).unwrap_or(false);
                let after_ok = e == hay.len()
                    || !hay[e..].chars().next().map(|c| c.is_alphanumeric()).unwrap_or(false);
                if before_ok && after_ok {
                    return true;
                }
                from = s + 1;
            }
            false
        }
    }
}

/// Cue-based edges.
///
/// Adjacent rule: when sentence `i+1` carries a forward cue, the head event
/// of sentence `i` precedes the head event of sentence `i+1`. Intra-sentence
/// rule: `before` orders the first clause event ahead of the second, `after`
/// reverses. Sentences without head events produce no edge; every cue edge
/// connects events at sentence distance <= 1.
pub fn cue_edges(
    events: &[EventMention],
    sentences: &[String],
    cfg: &CueConfig,
) -> Vec<PrecedenceEdge> {
    let mut edges = Vec::new();
    let mut head_by_sentence: BTreeMap<usize, &EventMention> = BTreeMap::new();
    for e in events {
        if e.sentence_head {
            head_by_sentence.insert(e.sentence_index, e);
        }
    }

    for (i, sentence) in sentences.iter().enumerate().skip(1) {
        let Some(cue) = cfg
            .adjacent_cues
            .iter()
            .find(|c| contains_cue(sentence, c, cfg.match_position))
        else {
            continue;
        };
        if let (Some(prev), Some(cur)) = (head_by_sentence.get(&(i - 1)), head_by_sentence.get(&i))
        {
            edges.push(PrecedenceEdge {
                source: prev.event_id.clone(),
                target: cur.event_id.clone(),
                support: EdgeSupport::Cue,
                label: cue.clone(),
                evidence_sentences: vec![i - 1, i],
            });
        }
    }

    for (i, sentence) in sentences.iter().enumerate() {
        let clause_events: Vec<&EventMention> = events
            .iter()
            .filter(|e| e.sentence_index == i && e.bucket != Bucket::ContextAdmin)
            .collect();
        if clause_events.len() < 2 {
            continue;
        }
        for (cue, direction) in &cfg.intra_sentence_cues {
            if !contains_cue(sentence, cue, MatchPosition::Anywhere) {
                continue;
            }
            let (first, second) = (clause_events[0], clause_events[1]);
            let (source, target) = match direction {
                IntraDirection::FirstPrecedesSecond => (first, second),
                IntraDirection::SecondPrecedesFirst => (second, first),
            };
            edges.push(PrecedenceEdge {
                source: source.event_id.clone(),
                target: target.event_id.clone(),
                support: EdgeSupport::Cue,
                label: cue.clone(),
                evidence_sentences: vec![i],
            });
            break;
        }
    }
    edges
}

/// Axiom-based candidate edges: one per matching event pair per axiom.
/// Applied per event pair, so multiple thefts each get an edge from each
/// forced entry.
pub fn axiom_edges(events: &[EventMention], axioms: &[PrecedenceAxiom]) -> Vec<PrecedenceEdge> {
    let mut edges = Vec::new();
    for axiom in axioms {
        for src in events.iter().filter(|e| e.event_class == axiom.source_class) {
            for tgt in events.iter().filter(|e| e.event_class == axiom.target_class) {
                if src.event_id == tgt.event_id {
                    continue;
                }
                if let Some(gap) = axiom.max_sentence_gap {
                    if src.sentence_index.abs_diff(tgt.sentence_index) > gap {
                        continue;
                    }
                }
                edges.push(PrecedenceEdge {
                    source: src.event_id.clone(),
                    target: tgt.event_id.clone(),
                    support: EdgeSupport::Axiom,
                    label: axiom.axiom_id.clone(),
                    evidence_sentences: vec![src.sentence_index, tgt.sentence_index],
                });
            }
        }
    }
    edges
}

/// Display metadata for one graph node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventNode {
    pub event_id: String,
    pub event_class: String,
    pub predicate_sense: String,
    pub sentence_index: usize,
}

impl EventNode {
    pub fn from_event(e: &EventMention) -> Self {
        EventNode {
            event_id: e.event_id.clone(),
            event_class: e.event_class.clone(),
            predicate_sense: e.predicate_sense.clone(),
            sentence_index: e.sentence_index,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TemporalGraph {
    pub case_id: String,
    pub nodes: Vec<EventNode>,
    pub edges: Vec<PrecedenceEdge>,
    /// Human-readable records of dropped axiom edges.
    pub conflicts: Vec<String>,
    /// Residual cycles (event-id paths) detected after merging; reported,
    /// never silently accepted.
    pub cycles: Vec<Vec<String>>,
}

impl TemporalGraph {
    /// (cue-only, axiom-only, cue+axiom) edge counts.
    pub fn support_counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for e in &self.edges {
            match e.support {
                EdgeSupport::Cue => c.0 += 1,
                EdgeSupport::Axiom => c.1 += 1,
                EdgeSupport::CueAxiom => c.2 += 1,
            }
        }
        c
    }

    /// Does `source` come before `target` through any chain of kept edges?
    /// Reachability is computed on demand; no transitive closure is stored.
    pub fn precedes(&self, source: &str, target: &str) -> bool {
        if source == target {
            return false;
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![source];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            for e in self.edges.iter().filter(|e| e.source == v) {
                if e.target == target {
                    return true;
                }
                stack.push(&e.target);
            }
        }
        false
    }
}

/// Merge cue and axiom edges into the case graph.
///
/// The same (source, target) pair from both sides collapses into one
/// `cue+axiom` edge. An axiom edge opposing an explicit cue edge is dropped
/// and logged: narrative cues outrank domain axioms. Duplicate
/// (source, target, support) triples collapse. Residual cycles are detected
/// and reported on the graph.
pub fn build_graph(
    case_id: &str,
    nodes: Vec<EventNode>,
    cue: Vec<PrecedenceEdge>,
    axiom: Vec<PrecedenceEdge>,
) -> TemporalGraph {
    let cue_pairs: BTreeSet<(String, String)> = cue
        .iter()
        .map(|e| (e.source.clone(), e.target.clone()))
        .collect();

    let mut conflicts = Vec::new();
    let mut merged: BTreeMap<(String, String), PrecedenceEdge> = BTreeMap::new();
    for e in cue {
        let key = (e.source.clone(), e.target.clone());
        if e.source == e.target {
            continue;
        }
        merged
            .entry(key)
            .and_modify(|existing| {
                if !existing.label.split('+').any(|l| l == e.label) {
                    existing.label = format!("{}+{}", existing.label, e.label);
                }
                for s in &e.evidence_sentences {
                    if !existing.evidence_sentences.contains(s) {
                        existing.evidence_sentences.push(*s);
                    }
                }
            })
            .or_insert(e);
    }
    for e in axiom {
        if e.source == e.target {
            continue;
        }
        let reverse = (e.target.clone(), e.source.clone());
        if cue_pairs.contains(&reverse) {
            conflicts.push(format!(
                "axiom edge {} -> {} ({}) conflicts with cue edge {} -> {}; axiom dropped",
                e.source, e.target, e.label, e.target, e.source
            ));
            continue;
        }
        let key = (e.source.clone(), e.target.clone());
        match merged.get_mut(&key) {
            Some(existing) => {
                existing.support = EdgeSupport::CueAxiom;
                if !existing.label.split('+').any(|l| l == e.label) {
                    existing.label = format!("{}+{}", existing.label, e.label);
                }
                for s in &e.evidence_sentences {
                    if !existing.evidence_sentences.contains(s) {
                        existing.evidence_sentences.push(*s);
                    }
                }
            }
            None => {
                merged.insert(key, e);
            }
        }
    }

    let edges: Vec<PrecedenceEdge> = merged.into_values().collect();
    let cycles = find_cycles(&edges);
    TemporalGraph {
        case_id: case_id.to_string(),
        nodes,
        edges,
        conflicts,
        cycles,
    }
}

fn find_cycles(edges: &[PrecedenceEdge]) -> Vec<Vec<String>> {
    let mut adjacency: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut nodes: BTreeSet<&str> = BTreeSet::new();
    for e in edges {
        adjacency.entry(&e.source).or_default().push(&e.target);
        nodes.insert(&e.source);
        nodes.insert(&e.target);
    }
    let mut cycles = Vec::new();
    let mut done: BTreeSet<&str> = BTreeSet::new();
    for &start in &nodes {
        if done.contains(start) {
            continue;
        }
        let mut path: Vec<&str> = Vec::new();
        let mut on_path: BTreeSet<&str> = BTreeSet::new();
        dfs_cycle(start, &adjacency, &mut path, &mut on_path, &mut done, &mut cycles);
    }
    cycles
}

fn dfs_cycle<'a>(
    v: &'a str,
    adjacency: &BTreeMap<&'a str, Vec<&'a str>>,
    path: &mut Vec<&'a str>,
    on_path: &mut BTreeSet<&'a str>,
    done: &mut BTreeSet<&'a str>,
    cycles: &mut Vec<Vec<String>>,
) {
    if on_path.contains(v) {
        let pos = path.iter().position(|&p| p == v).unwrap_or(0);
        cycles.push(path[pos..].iter().map(|s| s.to_string()).collect());
        return;
    }
    if done.contains(v) {
        return;
    }
    path.push(v);
    on_path.insert(v);
    if let Some(next) = adjacency.get(v) {
        for &n in next {
            dfs_cycle(n, adjacency, path, on_path, done, cycles);
        }
    }
    path.pop();
    on_path.remove(v);
    done.insert(v);
}

fn numeric_suffix(id: &str) -> (usize, &str) {
    let digits: String = id.chars().skip_while(|c| !c.is_ascii_digit()).collect();
    (digits.parse().unwrap_or(0), id)
}

/// DOT text: solid edges for narrative cues (including cue+axiom), dashed for
/// axiom-only edges; node labels show class, predicate and sentence index.
/// Node and edge ordering is deterministic.
pub fn export_dot(g: &TemporalGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"temporal_{}\" {{\n", g.case_id));
    out.push_str("  rankdir=LR;\n");
    let mut nodes = g.nodes.clone();
    nodes.sort_by(|a, b| {
        numeric_suffix(&a.event_id)
            .cmp(&numeric_suffix(&b.event_id))
    });
    for n in &nodes {
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\\n{} s{}\"];\n",
            n.event_id, n.event_class, n.predicate_sense, n.sentence_index
        ));
    }
    let mut edges = g.edges.clone();
    edges.sort_by(|a, b| {
        numeric_suffix(&a.source)
            .cmp(&numeric_suffix(&b.source))
            .then(numeric_suffix(&a.target).cmp(&numeric_suffix(&b.target)))
    });
    for e in &edges {
        let style = match e.support {
            EdgeSupport::Axiom => "dashed",
            EdgeSupport::Cue | EdgeSupport::CueAxiom => "solid",
        };
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [style={}, label=\"{}\"];\n",
            e.source, e.target, style, e.label
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::Bucket;
    use crate::jsonutil::round3;
    use crate::score::ScoreBreakdown;

    fn cue_cfg() -> CueConfig {
        CueConfig::from_json(include_str!("../assets/config/cues.json"), "test").unwrap()
    }

    fn axioms() -> Vec<PrecedenceAxiom> {
        AxiomConfig::from_json(include_str!("../assets/config/axioms.json"), "test")
            .unwrap()
            .axioms
    }

    fn mention(id: &str, class: &str, sentence: usize, head: bool) -> EventMention {
        EventMention {
            event_id: id.to_string(),
            case_id: "C-1".into(),
            sentence_index: sentence,
            predicate_sense: "x-01".into(),
            predicate_var: "x".into(),
            event_class: class.to_string(),
            bucket: Bucket::IncidentCore,
            args: BTreeMap::new(),
            participants: Vec::new(),
            negated: false,
            hedged: false,
            typing_rule_id: None,
            semantic_path: None,
            confidence: round3(0.9),
            score_breakdown: ScoreBreakdown {
                base: 0.55,
                lexical_bonus: 0.25,
                structural_bonus: 0.0,
                penalty: 0.0,
                penalty_ambiguity: 0.0,
                penalty_negation: 0.0,
                penalty_hedge: 0.0,
                raw: 0.8,
                rule_prior: None,
                object_cap_applied: false,
                specificity_bonus: 0.0,
                finalc: 0.9,
            },
            sentence_head: head,
        }
    }

    use std::collections::BTreeMap;

    #[test]
    fn then_links_adjacent_heads() {
        let events = vec![
            mention("e0", "EntryEvent", 0, true),
            mention("e1", "DiscoveryEvent", 1, true),
        ];
        let sentences = vec![
            "S entered the home.".to_string(),
            "Then V discovered the damage.".to_string(),
        ];
        let edges = cue_edges(&events, &sentences, &cue_cfg());
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].source, "e0");
        assert_eq!(edges[0].target, "e1");
        assert_eq!(edges[0].label, "then");
    }

    #[test]
    fn before_orders_clauses_within_sentence() {
        let mut break_event = mention("e0", "ForcedEntryEvent", 0, true);
        break_event.predicate_sense = "break-01".into();
        let mut enter_event = mention("e1", "EntryEvent", 0, false);
        enter_event.predicate_sense = "enter-01".into();
        let events = vec![break_event, enter_event];
        let sentences = vec!["the suspect broke the window before entering the home".to_string()];
        let edges = cue_edges(&events, &sentences, &cue_cfg());
        assert_eq!(edges.len(), 1);
        assert_eq!((edges[0].source.as_str(), edges[0].target.as_str()), ("e0", "e1"));
    }

    #[test]
    fn single_sentence_without_cue_gives_nothing() {
        let events = vec![mention("e0", "EntryEvent", 0, true)];
        let sentences = vec!["S entered the home.".to_string()];
        assert!(cue_edges(&events, &sentences, &cue_cfg()).is_empty());
    }

    #[test]
    fn missing_head_produces_no_edge() {
        let events = vec![mention("e1", "DiscoveryEvent", 1, true)];
        let sentences = vec!["Nothing here.".to_string(), "Then V discovered it.".to_string()];
        assert!(cue_edges(&events, &sentences, &cue_cfg()).is_empty());
    }

    #[test]
    fn table_axiom_pairs_produce_edges() {
        let pairs = [
            ("ForcedEntryEvent", "TheftEvent", "forced_entry_before_theft"),
            ("CallEvent", "ReportTakenEvent", "call_before_report_taken"),
            ("ReturnEvent", "DiscoveryEvent", "return_before_discovery"),
            ("ArrestEvent", "BookingEvent", "arrest_before_booking"),
        ];
        for (src, tgt, id) in pairs {
            let events = vec![mention("e0", src, 0, true), mention("e1", tgt, 1, true)];
            let edges = axiom_edges(&events, &axioms());
            assert_eq!(edges.len(), 1, "{id}");
            assert_eq!(edges[0].label, id);
            assert_eq!(edges[0].support, EdgeSupport::Axiom);
        }
    }

    #[test]
    fn call_report_axiom_needs_adjacency() {
        let events = vec![
            mention("e0", "CallEvent", 0, true),
            mention("e1", "ReportTakenEvent", 5, true),
        ];
        assert!(axiom_edges(&events, &axioms()).is_empty());
    }

    #[test]
    fn no_matching_classes_no_edges() {
        let events = vec![mention("e0", "DiscoveryEvent", 0, true)];
        assert!(axiom_edges(&events, &axioms()).is_empty());
    }

    #[test]
    fn merge_collapses_same_pair_to_cue_axiom() {
        let events = vec![
            mention("e0", "ReturnEvent", 0, true),
            mention("e1", "DiscoveryEvent", 1, true),
        ];
        let sentences = vec![
            "V returned home.".to_string(),
            "Upon returning, V discovered the damage.".to_string(),
        ];
        let cue = cue_edges(&events, &sentences, &cue_cfg());
        let axiom = axiom_edges(&events, &axioms());
        assert_eq!(cue.len(), 1);
        assert_eq!(axiom.len(), 1);
        let nodes = events.iter().map(EventNode::from_event).collect();
        let g = build_graph("C-1", nodes, cue, axiom);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].support, EdgeSupport::CueAxiom);
        assert_eq!(g.support_counts(), (0, 0, 1));
    }

    #[test]
    fn cue_outranks_opposing_axiom() {
        // narrative: theft first, then forced entry; the axiom says the
        // opposite and must lose
        let events = vec![
            mention("e0", "TheftEvent", 0, true),
            mention("e1", "ForcedEntryEvent", 1, true),
        ];
        let sentences = vec![
            "S took the wallet.".to_string(),
            "Then S kicked the door.".to_string(),
        ];
        let cue = cue_edges(&events, &sentences, &cue_cfg());
        let axiom = axiom_edges(&events, &axioms());
        assert_eq!(cue.len(), 1);
        assert_eq!(axiom.len(), 1);
        let nodes = events.iter().map(EventNode::from_event).collect();
        let g = build_graph("C-1", nodes, cue, axiom);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].support, EdgeSupport::Cue);
        assert_eq!(g.conflicts.len(), 1);
        assert!(g.cycles.is_empty());
    }

    #[test]
    fn residual_cycles_reported() {
        let e1 = PrecedenceEdge {
            source: "e0".into(),
            target: "e1".into(),
            support: EdgeSupport::Cue,
            label: "then".into(),
            evidence_sentences: vec![0, 1],
        };
        let e2 = PrecedenceEdge {
            source: "e1".into(),
            target: "e0".into(),
            support: EdgeSupport::Cue,
            label: "then".into(),
            evidence_sentences: vec![1, 2],
        };
        let g = build_graph("C-1", Vec::new(), vec![e1, e2], Vec::new());
        assert_eq!(g.edges.len(), 2);
        assert!(!g.cycles.is_empty());
    }

    #[test]
    fn empty_graph_exports_header_only() {
        let g = build_graph("C-1", Vec::new(), Vec::new(), Vec::new());
        let dot = export_dot(&g);
        assert!(dot.starts_with("digraph \"temporal_C-1\""));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn dot_styles_match_support() {
        let events = vec![
            mention("e0", "ForcedEntryEvent", 0, true),
            mention("e1", "TheftEvent", 1, true),
            mention("e2", "DiscoveryEvent", 2, true),
        ];
        let sentences = vec![
            "S kicked the door.".to_string(),
            "S took a wallet.".to_string(),
            "Then V discovered the damage.".to_string(),
        ];
        let cue = cue_edges(&events, &sentences, &cue_cfg());
        let axiom = axiom_edges(&events, &axioms());
        let nodes = events.iter().map(EventNode::from_event).collect();
        let g = build_graph("C-1", nodes, cue, axiom);
        let dot = export_dot(&g);
        assert!(dot.contains("\"e0\" -> \"e1\" [style=dashed, label=\"forced_entry_before_theft\"]"));
        assert!(dot.contains("\"e1\" -> \"e2\" [style=solid, label=\"then\"]"));
    }

    #[test]
    fn precedes_follows_chains_on_demand() {
        let mk = |s: &str, t: &str| PrecedenceEdge {
            source: s.into(),
            target: t.into(),
            support: EdgeSupport::Cue,
            label: "then".into(),
            evidence_sentences: vec![0],
        };
        let g = build_graph("C-1", Vec::new(), vec![mk("e0", "e1"), mk("e1", "e2")], Vec::new());
        assert!(g.precedes("e0", "e1"));
        assert!(g.precedes("e0", "e2"));
        assert!(!g.precedes("e2", "e0"));
        assert!(!g.precedes("e0", "e0"));
    }

    #[test]
    fn edge_accounting_sums() {
        let events = vec![
            mention("e0", "ForcedEntryEvent", 0, true),
            mention("e1", "TheftEvent", 1, true),
            mention("e2", "DiscoveryEvent", 2, true),
        ];
        let sentences = vec![
            "S kicked the door.".to_string(),
            "S took a wallet.".to_string(),
            "Then V discovered the damage.".to_string(),
        ];
        let cue = cue_edges(&events, &sentences, &cue_cfg());
        let axiom = axiom_edges(&events, &axioms());
        let nodes = events.iter().map(EventNode::from_event).collect();
        let g = build_graph("C-1", nodes, cue, axiom);
        let (c, a, b) = g.support_counts();
        assert_eq!(c + a + b, g.edges.len());
        for e in &g.edges {
            if matches!(e.support, EdgeSupport::Cue | EdgeSupport::CueAxiom) {
                let min = e.evidence_sentences.iter().min().unwrap();
                let max = e.evidence_sentences.iter().max().unwrap();
                assert!(max - min <= 1, "cue edges connect adjacent sentences");
            }
        }
    }
}
