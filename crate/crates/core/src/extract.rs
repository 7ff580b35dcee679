//! Event extraction: AMR graphs to typed, scored event mentions with
//! grounded participants, plus frame filling and unknown-actor separation.
//!
//! Typing runs in two stages. Stage one proposes candidate rules from the
//! predicate family (anchor lemmas; the `narrative_action` rule is the
//! universal fallback). Stage two filters candidates by their required
//! argument tags, evaluated over the semantic types of the grounded
//! arguments, so refinement never widens the candidate set. When several
//! rules survive, the most specific wins: most satisfied required tags, then
//! highest prior, then lexicographic rule id.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::jsonutil::round3;
use crate::lexicon::{normalize_lemma, Lexicon, SemanticPath};
use crate::penman::{AmrConstant, AmrGraph, AmrTarget};
use crate::score::{score_event, ScoreBreakdown, ScoreConfig, ScoreInputs};

/// Confidence bucket of an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bucket {
    IncidentCore,
    PoliceAction,
    ContextAdmin,
    Uncertain,
}

/// A tag over typed arguments, e.g. `obj_property`: some argument in `roles`
/// carries one of `types`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TagSpec {
    pub roles: Vec<String>,
    pub types: Vec<String>,
}

/// One declarative typing rule.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypingRule {
    pub rule_id: String,
    /// Anchor lemmas; empty means the rule matches any predicate.
    pub anchors: Vec<String>,
    #[serde(default)]
    pub required_tags: Vec<String>,
    pub event_class: String,
    #[serde(default)]
    pub event_class_by_lemma: BTreeMap<String, String>,
    #[serde(default)]
    pub prior: Option<f64>,
    #[serde(default)]
    pub specificity_bonus: f64,
}

impl TypingRule {
    fn class_for(&self, lemma: &str) -> &str {
        self.event_class_by_lemma
            .get(lemma)
            .unwrap_or(&self.event_class)
    }

    /// True when the rule carries an object-evidence tag (name starts with
    /// `obj`); such rules add the object bonus and trigger the score cap.
    fn has_object_tag(&self) -> bool {
        self.required_tags.iter().any(|t| t.starts_with("obj"))
    }
}

/// The full typing configuration: tags, rules, bucket tables, hedge cues.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypingConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub tags: BTreeMap<String, TagSpec>,
    pub rules: Vec<TypingRule>,
    pub lemma_buckets: BTreeMap<String, Bucket>,
    pub class_buckets: BTreeMap<String, Bucket>,
    pub default_bucket: Bucket,
    pub hedge_lemmas: Vec<String>,
}

impl TypingConfig {
    pub fn from_json(json: &str, origin: &str) -> Result<Self, ConfigError> {
        let cfg: TypingConfig = serde_json::from_str(json).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })?;
        for rule in &cfg.rules {
            if let Some(p) = rule.prior {
                if !(0.0..=1.0).contains(&p) {
                    return Err(ConfigError::Invalid {
                        field: format!("{origin}: rule {} prior", rule.rule_id),
                        message: format!("{p} is outside [0, 1]"),
                    });
                }
            }
            for tag in &rule.required_tags {
                if !cfg.tags.contains_key(tag) {
                    return Err(ConfigError::Invalid {
                        field: format!("{origin}: rule {}", rule.rule_id),
                        message: format!("unknown tag `{tag}`"),
                    });
                }
            }
        }
        Ok(cfg)
    }

    fn bucket_for(&self, lemma: &str, event_class: &str) -> Bucket {
        self.lemma_buckets
            .get(lemma)
            .or_else(|| self.class_buckets.get(event_class))
            .copied()
            .unwrap_or(self.default_bucket)
    }
}

/// A grounded event argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticipantRef {
    pub entity_id: String,
    /// Pseudonym role label (`Victim_1`, `Suspect_Unknown_2`, `Officer`)
    /// when the argument grounds to a known individual.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pseudonym: Option<String>,
    /// Semantic type tags; empty means unknown.
    pub semantic_types: BTreeSet<String>,
    pub concept: String,
    pub sentence_index: usize,
    /// Lemma of the `:part` parent, when the node is part of something.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part_of: Option<String>,
    /// Rendered monetary value found on or under the node (`200 dollar`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_mention: Option<String>,
}

/// A typed, scored event mention with full evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventMention {
    pub event_id: String,
    pub case_id: String,
    pub sentence_index: usize,
    pub predicate_sense: String,
    pub predicate_var: String,
    pub event_class: String,
    pub bucket: Bucket,
    /// First participant per normalized role.
    pub args: BTreeMap<String, ParticipantRef>,
    /// All participants, including conjunction expansion.
    pub participants: Vec<(String, ParticipantRef)>,
    pub negated: bool,
    pub hedged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub typing_rule_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semantic_path: Option<SemanticPath>,
    /// Final confidence, rounded to report precision (3 decimals).
    pub confidence: f64,
    pub score_breakdown: ScoreBreakdown,
    /// Highest-confidence non-context_admin event of its sentence.
    pub sentence_head: bool,
}

/// Stable per-case entity identifiers.
#[derive(Debug, Default, Clone)]
pub struct EntityRegistry {
    ids: BTreeMap<String, String>,
    next: usize,
}

impl EntityRegistry {
    pub fn id_for(&mut self, key: &str) -> String {
        if let Some(id) = self.ids.get(key) {
            return id.clone();
        }
        self.next += 1;
        let id = format!("E{}", self.next);
        self.ids.insert(key.to_string(), id.clone());
        id
    }

    pub fn lookup(&self, key: &str) -> Option<&String> {
        self.ids.get(key)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Mutable per-case extraction state, threaded across sentences.
#[derive(Debug, Default, Clone)]
pub struct CaseState {
    pub case_id: String,
    pub registry: EntityRegistry,
    next_event: usize,
}

impl CaseState {
    pub fn new(case_id: &str) -> Self {
        CaseState {
            case_id: case_id.to_string(),
            ..Default::default()
        }
    }

    fn next_event_id(&mut self) -> String {
        let id = format!("e{}", self.next_event);
        self.next_event += 1;
        id
    }
}

/// Extract one event per predicate node of `g`, in document order.
pub fn extract_events(
    g: &AmrGraph,
    pseudonyms: &BTreeMap<String, String>,
    state: &mut CaseState,
    lex: &Lexicon,
    typing: &TypingConfig,
    score_cfg: &ScoreConfig,
) -> Vec<EventMention> {
    let mut events = Vec::new();
    let predicates: Vec<String> = g
        .predicate_nodes()
        .iter()
        .map(|n| n.variable.clone())
        .collect();
    for var in predicates {
        let node = g.node(&var).expect("predicate exists");
        let sense = node.concept.clone();
        let lemma = normalize_lemma(node.lemma());

        // grammatical and temporal modifiers are not participants
        const NON_PARTICIPANT_ROLES: [&str; 5] =
            [":polarity", ":mode", ":time", ":duration", ":frequency"];
        let mut participants: Vec<(String, ParticipantRef)> = Vec::new();
        if let Ok(arg_map) = g.arguments_of(&var) {
            for (role, target) in arg_map {
                if NON_PARTICIPANT_ROLES.contains(&role.as_str()) {
                    continue;
                }
                for p in ground_target(g, &target, pseudonyms, state, lex) {
                    participants.push((role.clone(), p));
                }
            }
        }
        let mut args: BTreeMap<String, ParticipantRef> = BTreeMap::new();
        for (role, p) in &participants {
            args.entry(role.clone()).or_insert_with(|| p.clone());
        }

        let satisfied_tags: BTreeSet<String> = typing
            .tags
            .iter()
            .filter(|(_, spec)| tag_satisfied(spec, &participants))
            .map(|(name, _)| name.clone())
            .collect();

        // stage 1: predicate family
        let stage1: Vec<&TypingRule> = typing
            .rules
            .iter()
            .filter(|r| r.anchors.is_empty() || r.anchors.iter().any(|a| a == &lemma))
            .collect();
        // stage 2: argument-sensitive refinement (never widens stage 1)
        let stage2: Vec<&TypingRule> = stage1
            .into_iter()
            .filter(|r| r.required_tags.iter().all(|t| satisfied_tags.contains(t)))
            .collect();
        let winner = stage2.into_iter().max_by(|a, b| {
            let sat = |r: &TypingRule| r.required_tags.len();
            sat(a)
                .cmp(&sat(b))
                .then(
                    a.prior
                        .unwrap_or(-1.0)
                        .partial_cmp(&b.prior.unwrap_or(-1.0))
                        .unwrap(),
                )
                // lexicographically smaller id wins ties: reverse the order
                .then(b.rule_id.cmp(&a.rule_id))
        });

        let semantic_path = lex.ground_predicate(&sense).ok();
        let (n_syn, n_vn) = lex.ambiguity_counts(&sense);
        let negated = g.is_negated(&var);
        let hedged = is_hedged(g, &var, &typing.hedge_lemmas);

        let (event_class, rule_id, prior, bonus, anchor_matched, object_evidence) = match winner {
            Some(rule) => (
                rule.class_for(&lemma).to_string(),
                Some(rule.rule_id.clone()),
                rule.prior,
                rule.specificity_bonus,
                !rule.anchors.is_empty(),
                rule.has_object_tag(),
            ),
            None => ("NarrativeAction".to_string(), None, None, 0.0, false, false),
        };
        let bucket = typing.bucket_for(&lemma, &event_class);

        let breakdown = score_event(
            &ScoreInputs {
                bucket,
                path_kind: semantic_path.as_ref().map(|p| p.path_kind),
                anchor_matched,
                object_evidence,
                negated,
                hedged,
                n_wordnet_synsets: n_syn,
                n_verbnet_senses: n_vn,
                rule_prior: prior,
                specificity_bonus: bonus,
            },
            score_cfg,
        );

        events.push(EventMention {
            event_id: state.next_event_id(),
            case_id: state.case_id.clone(),
            sentence_index: g.sentence_index,
            predicate_sense: sense,
            predicate_var: var,
            event_class,
            bucket,
            args,
            participants,
            negated,
            hedged,
            typing_rule_id: rule_id,
            semantic_path,
            confidence: round3(breakdown.finalc),
            score_breakdown: breakdown,
            sentence_head: false,
        });
    }
    mark_sentence_head(&mut events);
    events
}

fn tag_satisfied(spec: &TagSpec, participants: &[(String, ParticipantRef)]) -> bool {
    participants.iter().any(|(role, p)| {
        spec.roles.contains(role) && spec.types.iter().any(|t| p.semantic_types.contains(t))
    })
}

/// The event selected per sentence for temporal cue linking: the
/// highest-confidence non-context_admin event, first in document order on
/// ties.
fn mark_sentence_head(events: &mut [EventMention]) {
    let mut best: Option<usize> = None;
    for (i, e) in events.iter().enumerate() {
        if e.bucket == Bucket::ContextAdmin {
            continue;
        }
        match best {
            None => best = Some(i),
            Some(j) if e.confidence > events[j].confidence => best = Some(i),
            _ => {}
        }
    }
    if let Some(i) = best {
        events[i].sentence_head = true;
    }
}

const ROLE_CONCEPTS: [(&str, &str); 5] = [
    ("suspect", "Suspect"),
    ("victim", "Victim"),
    ("witness", "Witness"),
    ("officer", "Officer"),
    ("i", "Officer"),
];

fn ground_target(
    g: &AmrGraph,
    target: &AmrTarget,
    pseudonyms: &BTreeMap<String, String>,
    state: &mut CaseState,
    lex: &Lexicon,
) -> Vec<ParticipantRef> {
    let var = match target {
        AmrTarget::Node(v) => v,
        AmrTarget::Const(_) => return Vec::new(),
    };
    let node = match g.node(var) {
        Some(n) => n,
        None => return Vec::new(),
    };
    // conjunctions expand into their members
    if node.concept == "and" {
        let mut out = Vec::new();
        for edge in g.edges.iter().filter(|e| e.source == *var) {
            if edge.label.starts_with(":op") {
                out.extend(ground_target(g, &edge.target, pseudonyms, state, lex));
            }
        }
        return out;
    }
    let lemma = normalize_lemma(node.lemma());
    let mut semantic_types = lex.type_argument(&lemma);

    // named individuals ground through the pseudonym map
    let name = name_of(g, var);
    let pseudonym = match &name {
        Some(n) => pseudonyms.get(n).cloned(),
        None => ROLE_CONCEPTS
            .iter()
            .find(|(c, _)| *c == lemma)
            .map(|(_, family)| resolve_role_family(pseudonyms, family)),
    };
    if pseudonym.is_some() || ROLE_CONCEPTS.iter().any(|(c, _)| *c == lemma) {
        semantic_types.insert("person".to_string());
    }

    let entity_key = match (&pseudonym, &name) {
        (Some(role), _) => format!("role:{role}"),
        (None, Some(n)) => format!("name:{n}"),
        (None, None) => {
            if semantic_types.contains("person") {
                // unresolved person: one entity per node, no cross-sentence merge
                format!("node:{}:{}", g.sentence_index, var)
            } else {
                format!("lemma:{lemma}")
            }
        }
    };

    let part_of = g
        .role_parents(var, ":part")
        .first()
        .and_then(|p| g.node(p))
        .map(|n| normalize_lemma(n.lemma()));

    vec![ParticipantRef {
        entity_id: state.registry.id_for(&entity_key),
        pseudonym,
        semantic_types,
        concept: lemma,
        sentence_index: g.sentence_index,
        part_of,
        value_mention: monetary_mention(g, var),
    }]
}

/// Name constant attached to a node, either directly (`:name "S1"`) or via a
/// name node (`:name (n / name :op1 "[PERSON_1]")`).
fn name_of(g: &AmrGraph, var: &str) -> Option<String> {
    for edge in g.edges.iter().filter(|e| e.source == var && e.label == ":name") {
        match &edge.target {
            AmrTarget::Const(AmrConstant::Str(s)) => return Some(s.clone()),
            AmrTarget::Node(n) => {
                let mut parts = Vec::new();
                for op in g.edges.iter().filter(|e| e.source == *n) {
                    if op.label.starts_with(":op") {
                        if let AmrTarget::Const(c) = &op.target {
                            parts.push(c.as_str().to_string());
                        }
                    }
                }
                if !parts.is_empty() {
                    return Some(parts.join(" "));
                }
            }
            _ => {}
        }
    }
    None
}

/// Bare role concepts (`suspect`, `victim`, ...) alias the first pseudonym of
/// their family, creating `<Family>_1` when the map has none. Coreference
/// beyond this convention is out of scope.
fn resolve_role_family(pseudonyms: &BTreeMap<String, String>, family: &str) -> String {
    let mut values: Vec<&String> = pseudonyms
        .values()
        .filter(|v| v.starts_with(family))
        .collect();
    values.sort();
    values.dedup();
    match values.first() {
        Some(v) => (*v).clone(),
        None if family == "Officer" => "Officer".to_string(),
        None if family == "Suspect" => "Suspect_Unknown_1".to_string(),
        None => format!("{family}_1"),
    }
}

/// Render a monetary amount found on or directly under the node.
fn monetary_mention(g: &AmrGraph, var: &str) -> Option<String> {
    let render = |mvar: &str| -> Option<String> {
        let quant = g.targets_of(mvar, ":quant").into_iter().find_map(|t| match t {
            AmrTarget::Const(AmrConstant::Num(n)) => Some(n),
            _ => None,
        })?;
        let unit = g
            .targets_of(mvar, ":unit")
            .into_iter()
            .find_map(|t| t.node().and_then(|n| g.node(n)).map(|n| n.concept.clone()));
        Some(match unit {
            Some(u) => format!("{quant} {u}"),
            None => quant,
        })
    };
    if g.node(var)?.concept == "monetary-quantity" {
        return render(var);
    }
    for edge in g.edges.iter().filter(|e| e.source == var) {
        if let AmrTarget::Node(t) = &edge.target {
            if g.node(t).map(|n| n.concept == "monetary-quantity") == Some(true) {
                return render(t);
            }
        }
    }
    None
}

fn is_hedged(g: &AmrGraph, var: &str, hedge_lemmas: &[String]) -> bool {
    let is_hedge = |v: &str| -> bool {
        g.node(v)
            .map(|n| hedge_lemmas.iter().any(|h| h == &normalize_lemma(n.lemma())))
            .unwrap_or(false)
    };
    // hedge modifier directly on the predicate
    for edge in g.edges.iter().filter(|e| e.source == var && e.label == ":mod") {
        if let AmrTarget::Node(t) = &edge.target {
            if is_hedge(t) {
                return true;
            }
        }
    }
    // hedge ancestor (e.g. the predicate sits under possible-01)
    let mut seen = BTreeSet::new();
    let mut stack = vec![var.to_string()];
    while let Some(v) = stack.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for edge in &g.edges {
            if edge.target.node() == Some(v.as_str()) && !crate::penman::is_inverse_role(&edge.label)
            {
                if is_hedge(&edge.source) {
                    return true;
                }
                stack.push(edge.source.clone());
            }
        }
    }
    false
}

/// `DifferentFrom` pairs for the distinct unknown suspects of a case:
/// exactly k(k-1)/2 pairs for k unknown suspects, as entity id pairs.
pub fn separate_unknown_actors(
    pseudonyms: &BTreeMap<String, String>,
    state: &mut CaseState,
) -> Vec<(String, String)> {
    let mut roles: Vec<&String> = pseudonyms
        .values()
        .filter(|v| v.starts_with("Suspect_Unknown"))
        .collect();
    roles.sort();
    roles.dedup();
    let ids: Vec<String> = roles
        .iter()
        .map(|r| state.registry.id_for(&format!("role:{r}")))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..ids.len() {
        for j in (i + 1)..ids.len() {
            pairs.push((ids[i].clone(), ids[j].clone()));
        }
    }
    pairs
}

/// Frame kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameKind {
    Entry,
    Theft,
}

/// A slot structure grouping the details of one event.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub frame_id: String,
    pub kind: FrameKind,
    pub event_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry_point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry_method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry_structure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry_tool: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub stolen_items: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub value_mentions: Vec<String>,
    pub evidence_sentences: Vec<usize>,
}

/// Build Entry frames from entry/forced-entry events and Theft frames from
/// theft events.
pub fn fill_frames(events: &[EventMention]) -> Vec<Frame> {
    let mut frames = Vec::new();
    for event in events {
        match event.event_class.as_str() {
            "EntryEvent" | "ForcedEntryEvent" => {
                let point = pick_participant(event, &["structure_part", "vehicle_part"]);
                let structure = point
                    .and_then(|p| p.part_of.clone())
                    .or_else(|| {
                        pick_participant(event, &["structure"]).map(|p| p.concept.clone())
                    });
                frames.push(Frame {
                    frame_id: format!("f{}", frames.len()),
                    kind: FrameKind::Entry,
                    event_id: event.event_id.clone(),
                    entry_point: point.map(|p| p.concept.clone()),
                    entry_method: Some(normalize_lemma(
                        crate::lexicon::split_sense(&event.predicate_sense).0.as_str(),
                    )),
                    entry_structure: structure,
                    entry_tool: event.args.get(":instrument").map(|p| p.concept.clone()),
                    stolen_items: Vec::new(),
                    value_mentions: Vec::new(),
                    evidence_sentences: vec![event.sentence_index],
                });
            }
            "TheftEvent" => {
                let stolen_items: Vec<String> = event
                    .participants
                    .iter()
                    .filter(|(role, _)| role == ":ARG1")
                    .map(|(_, p)| p.concept.clone())
                    .collect();
                let value_mentions: Vec<String> = event
                    .participants
                    .iter()
                    .filter_map(|(_, p)| p.value_mention.clone())
                    .collect();
                frames.push(Frame {
                    frame_id: format!("f{}", frames.len()),
                    kind: FrameKind::Theft,
                    event_id: event.event_id.clone(),
                    entry_point: None,
                    entry_method: None,
                    entry_structure: None,
                    entry_tool: None,
                    stolen_items,
                    value_mentions,
                    evidence_sentences: vec![event.sentence_index],
                });
            }
            _ => {}
        }
    }
    frames
}

fn pick_participant<'a>(
    event: &'a EventMention,
    wanted_types: &[&str],
) -> Option<&'a ParticipantRef> {
    // object-ish roles first, then anything else in role order
    let preferred = [":ARG1", ":ARG2", ":path", ":location"];
    for role in preferred {
        if let Some(p) = event.args.get(role) {
            if wanted_types.iter().any(|t| p.semantic_types.contains(*t)) {
                return Some(p);
            }
        }
    }
    event
        .participants
        .iter()
        .map(|(_, p)| p)
        .find(|p| wanted_types.iter().any(|t| p.semantic_types.contains(*t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::penman::parse_penman;

    fn lex() -> Lexicon {
        let anchors: BTreeMap<String, Vec<String>> =
            serde_json::from_str(include_str!("../assets/config/type_anchors.json")).unwrap();
        Lexicon::from_snapshot_text(
            include_str!("../assets/lexicon/synsets.tsv"),
            include_str!("../assets/lexicon/hypernyms.tsv"),
            include_str!("../assets/lexicon/semlink.tsv"),
            include_str!("../assets/lexicon/propbank.tsv"),
        )
        .unwrap()
        .with_type_anchors(anchors)
    }

    fn typing() -> TypingConfig {
        TypingConfig::from_json(include_str!("../assets/config/typing_rules.json"), "test")
            .unwrap()
    }

    fn score_cfg() -> ScoreConfig {
        ScoreConfig::from_json(include_str!("../assets/config/score_config.json"), "test")
            .unwrap()
    }

    fn pseudonyms(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    fn extract(text: &str, pseudo: &BTreeMap<String, String>) -> Vec<EventMention> {
        let g = parse_penman(text, 0).unwrap();
        let mut state = CaseState::new("C-1");
        extract_events(&g, pseudo, &mut state, &lex(), &typing(), &score_cfg())
    }

    #[test]
    fn steal_types_as_theft_with_grounded_args() {
        let p = pseudonyms(&[("S1", "Suspect_Unknown_1")]);
        let events = extract(
            "(s / steal-01 :ARG0 (x / person :name \"S1\") :ARG1 (w / wallet))",
            &p,
        );
        assert_eq!(events.len(), 1);
        let e = &events[0];
        assert_eq!(e.event_class, "TheftEvent");
        assert_eq!(e.bucket, Bucket::IncidentCore);
        assert_eq!(e.typing_rule_id.as_deref(), Some("theft"));
        assert_eq!(
            e.args[":ARG0"].pseudonym.as_deref(),
            Some("Suspect_Unknown_1")
        );
        assert!(e.args[":ARG1"].semantic_types.contains("property_item"));
        assert!(e.sentence_head);
    }

    #[test]
    fn kick_door_is_forced_entry_via_damage_rule() {
        let p = pseudonyms(&[("S1", "Suspect_Unknown_1")]);
        let events = extract(
            "(k / kick-01 :ARG0 (x / person :name \"S1\") :ARG1 (d / door))",
            &p,
        );
        let e = &events[0];
        assert_eq!(e.event_class, "ForcedEntryEvent");
        assert_eq!(
            e.typing_rule_id.as_deref(),
            Some("damage_anchor+obj_structure_or_vehicle_part")
        );
        assert_eq!(e.confidence, 0.919);
    }

    #[test]
    fn no_predicates_no_events() {
        let events = extract("(p / person)", &BTreeMap::new());
        assert!(events.is_empty());
    }

    #[test]
    fn stage2_filters_without_widening() {
        // kick with an untyped object: damage+obj cannot fire, plain damage can
        let events = extract("(k / kick-01 :ARG1 (t / thing))", &BTreeMap::new());
        assert_eq!(events[0].typing_rule_id.as_deref(), Some("damage"));
        assert_eq!(events[0].event_class, "PropertyDamageEvent");
    }

    #[test]
    fn negation_and_hedge_flags() {
        let neg = extract("(s / steal-01 :polarity -)", &BTreeMap::new());
        assert!(neg[0].negated);
        let hedged = extract(
            "(p / possible-01 :ARG1 (s / steal-01 :ARG1 (w / wallet)))",
            &BTreeMap::new(),
        );
        let steal = hedged.iter().find(|e| e.predicate_sense == "steal-01").unwrap();
        assert!(steal.hedged);
    }

    #[test]
    fn unknown_predicate_still_extracts() {
        let events = extract("(z / zzzz-99)", &BTreeMap::new());
        let e = &events[0];
        assert_eq!(e.event_class, "NarrativeAction");
        assert_eq!(e.bucket, Bucket::Uncertain);
        assert!(e.semantic_path.is_none());
        assert_eq!(e.typing_rule_id.as_deref(), Some("narrative_action"));
    }

    #[test]
    fn shared_agent_has_one_entity() {
        let p = pseudonyms(&[]);
        let g = parse_penman(
            "(a / and :op1 (b / break-01 :ARG0 (x / person) :ARG1 (w / window :part-of (v / vehicle))) :op2 (s / steal-01 :ARG0 x :ARG1 (w2 / wallet)))",
            0,
        )
        .unwrap();
        let mut state = CaseState::new("C-1");
        let events = extract_events(&g, &p, &mut state, &lex(), &typing(), &score_cfg());
        assert_eq!(events.len(), 2);
        let break_agent = &events[0].args[":ARG0"].entity_id;
        let steal_agent = &events[1].args[":ARG0"].entity_id;
        assert_eq!(break_agent, steal_agent);
        assert_eq!(events[0].args[":ARG1"].part_of.as_deref(), Some("vehicle"));
    }

    #[test]
    fn unknown_actor_pairs_are_k_choose_2() {
        for (k, expected) in [(0usize, 0usize), (1, 0), (2, 1), (3, 3), (5, 10)] {
            let map: BTreeMap<String, String> = (1..=k)
                .map(|i| (format!("S{i}"), format!("Suspect_Unknown_{i}")))
                .collect();
            let mut state = CaseState::new("C-1");
            let pairs = separate_unknown_actors(&map, &mut state);
            assert_eq!(pairs.len(), expected, "k={k}");
        }
    }

    #[test]
    fn entry_frame_from_fig3_sentence() {
        let events = extract(
            "(b / break-01 :ARG0 (p / person) :ARG1 (w / window :mod (r / rear) :part-of (v / vehicle)))",
            &BTreeMap::new(),
        );
        let frames = fill_frames(&events);
        assert_eq!(frames.len(), 1);
        let f = &frames[0];
        assert_eq!(f.kind, FrameKind::Entry);
        assert_eq!(f.entry_point.as_deref(), Some("window"));
        assert_eq!(f.entry_method.as_deref(), Some("break"));
        assert_eq!(f.entry_structure.as_deref(), Some("vehicle"));
    }

    #[test]
    fn theft_frame_collects_items_and_values() {
        let events = extract(
            "(t / take-01 :ARG0 (p / person) :ARG1 (a / and :op1 (w / wallet :cost (m / monetary-quantity :quant 200 :unit (d / dollar))) :op2 (ph / phone)))",
            &BTreeMap::new(),
        );
        let frames = fill_frames(&events);
        assert_eq!(frames.len(), 1);
        let f = &frames[0];
        assert_eq!(f.kind, FrameKind::Theft);
        assert_eq!(f.stolen_items, vec!["wallet".to_string(), "phone".to_string()]);
        assert_eq!(f.value_mentions, vec!["200 dollar".to_string()]);
    }

    #[test]
    fn no_entry_or_theft_no_frames() {
        let events = extract("(d / discover-01 :ARG0 (p / person))", &BTreeMap::new());
        assert!(fill_frames(&events).is_empty());
    }

    #[test]
    fn sentence_head_prefers_highest_confidence_non_admin() {
        let p = pseudonyms(&[("V", "Victim_1")]);
        let g = parse_penman(
            "(s / state-01 :ARG0 (v / person :name \"V\") :ARG1 (t / take-01 :ARG1 (w / wallet)))",
            0,
        )
        .unwrap();
        let mut state = CaseState::new("C-1");
        let events = extract_events(&g, &p, &mut state, &lex(), &typing(), &score_cfg());
        let head: Vec<_> = events.iter().filter(|e| e.sentence_head).collect();
        assert_eq!(head.len(), 1);
        assert_eq!(head[0].predicate_sense, "take-01");
        assert_eq!(events[0].bucket, Bucket::ContextAdmin);
    }
}
