//! Case knowledge bases: the TBox/RBox schema, per-case ABox assertions with
//! evidence links, a bounded closed-world validator for the four structural
//! constraint families, inconsistency resolution by quarantine, Turtle
//! export/import, and derived ontology indicators.
//!
//! The validator checks exactly the declared constraint families by direct
//! enumeration, with subclass reasoning limited to the transitive closure of
//! declared subclass edges. It is not an open-world DL reasoner.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::extract::{EventMention, ParticipantRef};
use crate::jsonutil::round3;

// ---------------------------------------------------------------------------
// Schema (TBox / RBox)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Schema {
    pub version: String,
    pub top_class: String,
    /// class name -> parent class name (absent for the top class).
    pub classes: BTreeMap<String, String>,
    /// property name -> (domain, range).
    pub object_properties: BTreeMap<String, (String, String)>,
    pub data_properties: BTreeMap<String, (String, String)>,
}

#[derive(Deserialize)]
struct RawSchema {
    version: String,
    top_class: String,
    classes: Vec<RawClass>,
    object_properties: Vec<RawProperty>,
    data_properties: Vec<RawProperty>,
}

#[derive(Deserialize)]
struct RawClass {
    name: String,
    parent: String,
}

#[derive(Deserialize)]
struct RawProperty {
    name: String,
    domain: String,
    range: String,
}

impl Schema {
    pub fn from_json(json: &str, origin: &str) -> Result<Self, ConfigError> {
        let raw: RawSchema = serde_json::from_str(json).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })?;
        let mut classes = BTreeMap::new();
        for c in raw.classes {
            classes.insert(c.name, c.parent);
        }
        let schema = Schema {
            version: raw.version,
            top_class: raw.top_class,
            classes,
            object_properties: raw
                .object_properties
                .into_iter()
                .map(|p| (p.name, (p.domain, p.range)))
                .collect(),
            data_properties: raw
                .data_properties
                .into_iter()
                .map(|p| (p.name, (p.domain, p.range)))
                .collect(),
        };
        schema.check(origin)?;
        Ok(schema)
    }

    /// Structural invariants: subclass graph is a DAG rooted at the single
    /// top class; every declared parent exists; every property declares a
    /// known domain class; theft subsumption holds.
    fn check(&self, origin: &str) -> Result<(), ConfigError> {
        for (class, parent) in &self.classes {
            if parent != &self.top_class && !self.classes.contains_key(parent) {
                return Err(ConfigError::Invalid {
                    field: format!("{origin}: class {class}"),
                    message: format!("unknown parent `{parent}`"),
                });
            }
            // walk to the root; the visited guard rejects cycles
            let mut seen = BTreeSet::new();
            let mut cur = class.as_str();
            while cur != self.top_class {
                if !seen.insert(cur) {
                    return Err(ConfigError::Invalid {
                        field: format!("{origin}: class {class}"),
                        message: "subclass cycle".into(),
                    });
                }
                cur = match self.classes.get(cur) {
                    Some(p) => p.as_str(),
                    None => break,
                };
            }
        }
        for (prop, (domain, _)) in &self.object_properties {
            if domain != &self.top_class && !self.classes.contains_key(domain) {
                return Err(ConfigError::Invalid {
                    field: format!("{origin}: object property {prop}"),
                    message: format!("unknown domain `{domain}`"),
                });
            }
        }
        if self.classes.contains_key("TheftEvent") && !self.is_subclass("TheftEvent", "CrimeEvent")
        {
            return Err(ConfigError::Invalid {
                field: format!("{origin}: TheftEvent"),
                message: "must be a subclass of CrimeEvent".into(),
            });
        }
        Ok(())
    }

    /// Transitive-closure subclass check (reflexive).
    pub fn is_subclass(&self, sub: &str, sup: &str) -> bool {
        let mut cur = sub;
        loop {
            if cur == sup {
                return true;
            }
            match self.classes.get(cur) {
                Some(parent) => cur = parent,
                None => return cur == self.top_class && sup == self.top_class,
            }
        }
    }

    pub fn contains_class(&self, name: &str) -> bool {
        name == self.top_class || self.classes.contains_key(name)
    }

    pub fn class_count(&self) -> usize {
        self.classes.len() + 1
    }
}

// ---------------------------------------------------------------------------
// Assertions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DataValue {
    Bool(bool),
    /// Decimal kept in lexical form for byte-stable output.
    Decimal(String),
    Str(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AssertionKind {
    Class {
        class: String,
        individual: String,
    },
    ObjectProperty {
        property: String,
        subject: String,
        object: String,
    },
    DataProperty {
        property: String,
        subject: String,
        value: DataValue,
    },
    DifferentFrom {
        a: String,
        b: String,
    },
}

/// Where an assertion came from; narrative assertions carry their sentence
/// evidence, metadata assertions the source field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "provenance", rename_all = "snake_case")]
pub enum Provenance {
    Narrative { sentence_index: usize },
    Metadata { field: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub id: String,
    #[serde(flatten)]
    pub kind: AssertionKind,
    #[serde(flatten)]
    pub provenance: Provenance,
}

/// Per-case fact store.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseKb {
    pub case_id: String,
    pub case_individual: String,
    pub assertions: Vec<Assertion>,
    /// Quarantined assertions with the violation id that removed them.
    pub quarantine: Vec<(Assertion, String)>,
    next_id: usize,
}

impl CaseKb {
    pub fn new(case_id: &str) -> Self {
        CaseKb {
            case_id: case_id.to_string(),
            case_individual: format!("case_{case_id}"),
            assertions: Vec::new(),
            quarantine: Vec::new(),
            next_id: 0,
        }
    }

    /// Insert an assertion unless an identical fact is already present.
    pub fn add(&mut self, kind: AssertionKind, provenance: Provenance) -> Option<&Assertion> {
        if self.assertions.iter().any(|a| a.kind == kind) {
            return None;
        }
        let id = format!("a{}", self.next_id);
        self.next_id += 1;
        self.assertions.push(Assertion {
            id,
            kind,
            provenance,
        });
        self.assertions.last()
    }

    pub fn classes_of(&self, individual: &str) -> BTreeSet<&str> {
        self.assertions
            .iter()
            .filter_map(|a| match &a.kind {
                AssertionKind::Class {
                    class,
                    individual: ind,
                } if ind == individual => Some(class.as_str()),
                _ => None,
            })
            .collect()
    }

    fn has_class(&self, individual: &str, class: &str, schema: &Schema) -> bool {
        self.classes_of(individual)
            .iter()
            .any(|c| schema.is_subclass(c, class))
    }

    pub fn individuals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for a in &self.assertions {
            match &a.kind {
                AssertionKind::Class { individual, .. } => {
                    out.insert(individual.clone());
                }
                AssertionKind::ObjectProperty {
                    subject, object, ..
                } => {
                    out.insert(subject.clone());
                    out.insert(object.clone());
                }
                AssertionKind::DataProperty { subject, .. } => {
                    out.insert(subject.clone());
                }
                AssertionKind::DifferentFrom { a, b } => {
                    out.insert(a.clone());
                    out.insert(b.clone());
                }
            }
        }
        out
    }

    /// Kind-only view for multiset comparisons (e.g. Turtle roundtrips).
    pub fn core_triples(&self) -> Vec<AssertionKind> {
        let mut v: Vec<AssertionKind> = self.assertions.iter().map(|a| a.kind.clone()).collect();
        v.sort();
        v
    }
}

// ---------------------------------------------------------------------------
// Mapping events and metadata into assertions
// ---------------------------------------------------------------------------

/// Logic templates attached to event classes; their conclusions persist as
/// data assertions on matching events.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TemplateConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub templates: Vec<Template>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Template {
    pub template_id: String,
    pub event_class: String,
    pub data_assertions: Vec<TemplateAssertion>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TemplateAssertion {
    pub property: String,
    pub value: serde_json::Value,
}

impl TemplateConfig {
    pub fn from_json(json: &str, origin: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(json).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }
}

fn entity_class(p: &ParticipantRef) -> Vec<String> {
    let mut classes = Vec::new();
    for tag in &p.semantic_types {
        match tag.as_str() {
            "person" => classes.push("Person".to_string()),
            "vehicle" => classes.push("Vehicle".to_string()),
            "weapon" => classes.push("Weapon".to_string()),
            "location" => classes.push("Location".to_string()),
            "property_item" => classes.push("Item".to_string()),
            _ => {}
        }
    }
    if classes.is_empty() {
        classes.push("Entity".to_string());
    }
    classes
}

/// Map one typed event mention to ontology assertions: the event class, its
/// case link and confidence, one participation individual carrying the
/// agent/patient links, entity typings, theft item links, and any template
/// conclusions.
pub fn map_event_to_assertions(
    kb: &mut CaseKb,
    event: &EventMention,
    schema: &Schema,
    templates: &TemplateConfig,
) {
    let ev = Provenance::Narrative {
        sentence_index: event.sentence_index,
    };
    let event_class = if schema.contains_class(&event.event_class) {
        event.event_class.clone()
    } else {
        "Event".to_string()
    };
    kb.add(
        AssertionKind::Class {
            class: event_class.clone(),
            individual: event.event_id.clone(),
        },
        ev.clone(),
    );
    kb.add(
        AssertionKind::ObjectProperty {
            property: "inCase".into(),
            subject: event.event_id.clone(),
            object: kb.case_individual.clone(),
        },
        ev.clone(),
    );
    kb.add(
        AssertionKind::DataProperty {
            property: "confidence".into(),
            subject: event.event_id.clone(),
            value: DataValue::Decimal(format!("{:.3}", round3(event.confidence))),
        },
        ev.clone(),
    );
    for template in templates
        .templates
        .iter()
        .filter(|t| t.event_class == event_class)
    {
        for ta in &template.data_assertions {
            let value = match &ta.value {
                serde_json::Value::Bool(b) => DataValue::Bool(*b),
                serde_json::Value::String(s) => DataValue::Str(s.clone()),
                other => DataValue::Decimal(other.to_string()),
            };
            kb.add(
                AssertionKind::DataProperty {
                    property: ta.property.clone(),
                    subject: event.event_id.clone(),
                    value,
                },
                ev.clone(),
            );
        }
    }

    if !event.participants.is_empty() {
        let participation = format!("p_{}", event.event_id);
        kb.add(
            AssertionKind::Class {
                class: "Participation".into(),
                individual: participation.clone(),
            },
            ev.clone(),
        );
        kb.add(
            AssertionKind::ObjectProperty {
                property: "inEvent".into(),
                subject: participation.clone(),
                object: event.event_id.clone(),
            },
            ev.clone(),
        );
        for (role, p) in &event.participants {
            for class in entity_class(p) {
                kb.add(
                    AssertionKind::Class {
                        class,
                        individual: p.entity_id.clone(),
                    },
                    ev.clone(),
                );
            }
            match role.as_str() {
                ":ARG0" => {
                    kb.add(
                        AssertionKind::ObjectProperty {
                            property: "hasAgent".into(),
                            subject: participation.clone(),
                            object: p.entity_id.clone(),
                        },
                        ev.clone(),
                    );
                }
                ":ARG1" => {
                    kb.add(
                        AssertionKind::ObjectProperty {
                            property: "hasPatient".into(),
                            subject: participation.clone(),
                            object: p.entity_id.clone(),
                        },
                        ev.clone(),
                    );
                }
                _ => {}
            }
            if event_class == "TheftEvent" && role == ":ARG1" {
                kb.add(
                    AssertionKind::ObjectProperty {
                        property: "hasStolenItem".into(),
                        subject: event.event_id.clone(),
                        object: p.entity_id.clone(),
                    },
                    ev.clone(),
                );
                // the mapping pattern types theft patients as items
                kb.add(
                    AssertionKind::Class {
                        class: "Item".into(),
                        individual: p.entity_id.clone(),
                    },
                    ev.clone(),
                );
            }
            if p.pseudonym.as_deref().is_some_and(|s| s.starts_with("Victim")) {
                kb.add(
                    AssertionKind::ObjectProperty {
                        property: "hasVictim".into(),
                        subject: event.event_id.clone(),
                        object: p.entity_id.clone(),
                    },
                    ev.clone(),
                );
            }
        }
    }
}

/// Add the case individual and its metadata-derived data properties.
/// Returns warnings for keys outside the documented set.
pub fn map_metadata(kb: &mut CaseKb, metadata: &BTreeMap<String, String>) -> Vec<String> {
    kb.add(
        AssertionKind::Class {
            class: "Case".into(),
            individual: kb.case_individual.clone(),
        },
        Provenance::Metadata {
            field: "case".into(),
        },
    );
    let documented: [(&str, &str); 4] = [
        ("case_number", "caseNumber"),
        ("offense", "offenseTitle"),
        ("statute", "statute"),
        ("report_date", "reportDate"),
    ];
    // fields consumed by redaction, not by the ontology
    let redaction_fields = [
        "victim_name",
        "suspect_name",
        "witness_name",
        "reporting_officer",
        "address",
    ];
    let mut warnings = Vec::new();
    for (key, value) in metadata {
        if let Some((_, property)) = documented.iter().find(|(k, _)| k == key) {
            kb.add(
                AssertionKind::DataProperty {
                    property: (*property).into(),
                    subject: kb.case_individual.clone(),
                    value: DataValue::Str(value.clone()),
                },
                Provenance::Metadata { field: key.clone() },
            );
        } else if !redaction_fields.contains(&key.as_str()) {
            warnings.push(format!("ignored unknown metadata key `{key}`"));
        }
    }
    warnings
}

/// Record unknown-actor separation pairs.
pub fn add_different_from(kb: &mut CaseKb, pairs: &[(String, String)]) {
    for (a, b) in pairs {
        kb.add(
            AssertionKind::DifferentFrom {
                a: a.clone(),
                b: b.clone(),
            },
            Provenance::Narrative { sentence_index: 0 },
        );
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

pub const CONSTRAINT_IDS: [&str; 7] = [
    "participation_in_event",
    "event_in_case",
    "agent_on_participation",
    "theft_has_stolen_item",
    "theft_item_typed",
    "victim_on_event",
    "different_from_conflict",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint_id: String,
    pub assertion_ids: Vec<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub case_id: String,
    pub violations: Vec<Violation>,
    pub consistent: bool,
}

/// Closed-world check of the four constraint families plus DifferentFrom
/// consistency. Pure: violations are data, never errors.
pub fn validate(kb: &CaseKb, schema: &Schema) -> ValidationReport {
    let mut violations = Vec::new();

    // family 1: every participation sits in an event; every event in a case
    for a in &kb.assertions {
        if let AssertionKind::Class { class, individual } = &a.kind {
            if schema.is_subclass(class, "Participation") {
                let ok = kb.assertions.iter().any(|x| match &x.kind {
                    AssertionKind::ObjectProperty {
                        property,
                        subject,
                        object,
                    } => {
                        property == "inEvent"
                            && subject == individual
                            && kb.has_class(object, "Event", schema)
                    }
                    _ => false,
                });
                if !ok {
                    violations.push(Violation {
                        constraint_id: "participation_in_event".into(),
                        assertion_ids: vec![a.id.clone()],
                        message: format!("Participation {individual} has no inEvent link to an Event"),
                    });
                }
            }
            if schema.is_subclass(class, "Event") {
                let ok = kb.assertions.iter().any(|x| match &x.kind {
                    AssertionKind::ObjectProperty {
                        property,
                        subject,
                        object,
                    } => {
                        property == "inCase"
                            && subject == individual
                            && kb.has_class(object, "Case", schema)
                    }
                    _ => false,
                });
                if !ok {
                    violations.push(Violation {
                        constraint_id: "event_in_case".into(),
                        assertion_ids: vec![a.id.clone()],
                        message: format!("Event {individual} has no inCase link to a Case"),
                    });
                }
            }
        }
    }

    // family 2: hasAgent subjects must be participations
    for a in &kb.assertions {
        if let AssertionKind::ObjectProperty {
            property, subject, ..
        } = &a.kind
        {
            if property == "hasAgent" && !kb.has_class(subject, "Participation", schema) {
                violations.push(Violation {
                    constraint_id: "agent_on_participation".into(),
                    assertion_ids: vec![a.id.clone()],
                    message: format!("hasAgent subject {subject} is not a Participation"),
                });
            }
        }
    }

    // family 3: theft events need a stolen item, and stolen items are Items
    for a in &kb.assertions {
        if let AssertionKind::Class { class, individual } = &a.kind {
            if schema.is_subclass(class, "TheftEvent") {
                let has_item = kb.assertions.iter().any(|x| {
                    matches!(&x.kind, AssertionKind::ObjectProperty { property, subject, .. }
                        if property == "hasStolenItem" && subject == individual)
                });
                if !has_item {
                    violations.push(Violation {
                        constraint_id: "theft_has_stolen_item".into(),
                        assertion_ids: vec![a.id.clone()],
                        message: format!("TheftEvent {individual} has no hasStolenItem"),
                    });
                }
            }
        }
    }
    for a in &kb.assertions {
        if let AssertionKind::ObjectProperty {
            property, object, ..
        } = &a.kind
        {
            if property == "hasStolenItem" && !kb.has_class(object, "Item", schema) {
                violations.push(Violation {
                    constraint_id: "theft_item_typed".into(),
                    assertion_ids: vec![a.id.clone()],
                    message: format!("hasStolenItem filler {object} is not an Item"),
                });
            }
        }
    }

    // family 4: hasVictim subjects must be events
    for a in &kb.assertions {
        if let AssertionKind::ObjectProperty {
            property, subject, ..
        } = &a.kind
        {
            if property == "hasVictim" && !kb.has_class(subject, "Event", schema) {
                violations.push(Violation {
                    constraint_id: "victim_on_event".into(),
                    assertion_ids: vec![a.id.clone()],
                    message: format!("hasVictim subject {subject} is not an Event"),
                });
            }
        }
    }

    // DifferentFrom consistency: no individual distinct from itself
    for a in &kb.assertions {
        if let AssertionKind::DifferentFrom { a: x, b: y } = &a.kind {
            if x == y {
                violations.push(Violation {
                    constraint_id: "different_from_conflict".into(),
                    assertion_ids: vec![a.id.clone()],
                    message: format!("{x} asserted DifferentFrom itself"),
                });
            }
        }
    }

    ValidationReport {
        case_id: kb.case_id.clone(),
        consistent: violations.is_empty(),
        violations,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResolutionAction {
    pub constraint_id: String,
    pub action: String,
    pub assertion_ids: Vec<String>,
}

/// Quarantine offending narrative-provenance assertions until the kb is
/// consistent (or only metadata-provenance violations remain). The schema is
/// never modified. A theft without an item is demoted to a plain CrimeEvent
/// with the original class assertion quarantined.
pub fn resolve_inconsistencies(
    kb: &mut CaseKb,
    schema: &Schema,
) -> (ValidationReport, Vec<ResolutionAction>) {
    let mut log = Vec::new();
    for _round in 0..16 {
        let report = validate(kb, schema);
        let mut acted = false;
        for violation in &report.violations {
            for aid in &violation.assertion_ids {
                let Some(pos) = kb.assertions.iter().position(|a| &a.id == aid) else {
                    continue;
                };
                if matches!(kb.assertions[pos].provenance, Provenance::Metadata { .. }) {
                    continue; // metadata facts are kept; violation stays visible
                }
                let removed = kb.assertions.remove(pos);
                acted = true;
                match violation.constraint_id.as_str() {
                    "theft_has_stolen_item" => {
                        if let AssertionKind::Class { individual, .. } = &removed.kind {
                            let provenance = removed.provenance.clone();
                            let individual = individual.clone();
                            kb.quarantine
                                .push((removed, violation.constraint_id.clone()));
                            kb.add(
                                AssertionKind::Class {
                                    class: "CrimeEvent".into(),
                                    individual,
                                },
                                provenance,
                            );
                            log.push(ResolutionAction {
                                constraint_id: violation.constraint_id.clone(),
                                action: "demoted TheftEvent to CrimeEvent, original quarantined"
                                    .into(),
                                assertion_ids: vec![aid.clone()],
                            });
                        } else {
                            kb.quarantine
                                .push((removed, violation.constraint_id.clone()));
                        }
                    }
                    _ => {
                        let mut ids = vec![aid.clone()];
                        // removing a class assertion orphans the property
                        // assertions hanging off that individual
                        if let AssertionKind::Class { individual, .. } = &removed.kind {
                            let individual = individual.clone();
                            let mut i = 0;
                            while i < kb.assertions.len() {
                                let dependent = match &kb.assertions[i].kind {
                                    AssertionKind::ObjectProperty { subject, .. }
                                    | AssertionKind::DataProperty { subject, .. } => {
                                        subject == &individual
                                    }
                                    _ => false,
                                };
                                if dependent
                                    && matches!(
                                        kb.assertions[i].provenance,
                                        Provenance::Narrative { .. }
                                    )
                                {
                                    let dep = kb.assertions.remove(i);
                                    ids.push(dep.id.clone());
                                    kb.quarantine
                                        .push((dep, violation.constraint_id.clone()));
                                } else {
                                    i += 1;
                                }
                            }
                        }
                        kb.quarantine
                            .push((removed, violation.constraint_id.clone()));
                        log.push(ResolutionAction {
                            constraint_id: violation.constraint_id.clone(),
                            action: "quarantined".into(),
                            assertion_ids: ids,
                        });
                    }
                }
                break; // assertion ids shift; re-scan this violation list
            }
        }
        if !acted {
            return (report, log);
        }
    }
    (validate(kb, schema), log)
}

// ---------------------------------------------------------------------------
// Turtle export / import
// ---------------------------------------------------------------------------

const PREFIX: &str = "ck";
const NAMESPACE: &str = "http://casekb.dev/ns#";

fn turtle_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn datavalue_turtle(v: &DataValue) -> String {
    match v {
        DataValue::Bool(b) => b.to_string(),
        DataValue::Decimal(d) => d.clone(),
        DataValue::Str(s) => format!("\"{}\"", turtle_escape(s)),
    }
}

/// Deterministic Turtle text: stable prefixes, one triple per line, lines
/// sorted by subject, predicate, object. Each assertion maps to exactly one
/// triple; evidence and provenance live in the facts JSON, not in RDF.
pub fn export_turtle(kb: &CaseKb) -> String {
    let mut lines: Vec<String> = kb
        .assertions
        .iter()
        .map(|a| match &a.kind {
            AssertionKind::Class { class, individual } => {
                format!("{PREFIX}:{individual} rdf:type {PREFIX}:{class} .")
            }
            AssertionKind::ObjectProperty {
                property,
                subject,
                object,
            } => format!("{PREFIX}:{subject} {PREFIX}:{property} {PREFIX}:{object} ."),
            AssertionKind::DataProperty {
                property,
                subject,
                value,
            } => format!(
                "{PREFIX}:{subject} {PREFIX}:{property} {} .",
                datavalue_turtle(value)
            ),
            AssertionKind::DifferentFrom { a, b } => {
                format!("{PREFIX}:{a} owl:differentFrom {PREFIX}:{b} .")
            }
        })
        .collect();
    lines.sort();
    let mut out = String::new();
    out.push_str(&format!("@prefix {PREFIX}: <{NAMESPACE}> .\n"));
    out.push_str("@prefix owl: <http://www.w3.org/2002/07/owl#> .\n");
    out.push_str("@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n\n");
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parse the subset of Turtle produced by [`export_turtle`] back into
/// assertion kinds.
pub fn import_turtle(text: &str) -> Result<Vec<AssertionKind>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("@prefix") {
            continue;
        }
        let body = line
            .strip_suffix('.')
            .ok_or_else(|| format!("line {}: missing terminal dot", lineno + 1))?
            .trim();
        let tokens = tokenize_turtle(body).map_err(|e| format!("line {}: {e}", lineno + 1))?;
        if tokens.len() != 3 {
            return Err(format!(
                "line {}: expected subject predicate object",
                lineno + 1
            ));
        }
        let local = |t: &str| -> Option<String> {
            t.strip_prefix(&format!("{PREFIX}:")).map(str::to_string)
        };
        let subject =
            local(&tokens[0]).ok_or_else(|| format!("line {}: foreign subject", lineno + 1))?;
        let kind = match tokens[1].as_str() {
            "rdf:type" | "a" => AssertionKind::Class {
                class: local(&tokens[2])
                    .ok_or_else(|| format!("line {}: foreign class", lineno + 1))?,
                individual: subject,
            },
            "owl:differentFrom" => AssertionKind::DifferentFrom {
                a: subject,
                b: local(&tokens[2])
                    .ok_or_else(|| format!("line {}: foreign object", lineno + 1))?,
            },
            pred => {
                let property = local(pred)
                    .ok_or_else(|| format!("line {}: foreign predicate", lineno + 1))?;
                match local(&tokens[2]) {
                    Some(object) => AssertionKind::ObjectProperty {
                        property,
                        subject,
                        object,
                    },
                    None => {
                        let raw = &tokens[2];
                        let value = if raw == "true" || raw == "false" {
                            DataValue::Bool(raw == "true")
                        } else if raw.starts_with('"') {
                            DataValue::Str(raw.trim_matches('"').replace("\\\"", "\""))
                        } else {
                            DataValue::Decimal(raw.clone())
                        };
                        AssertionKind::DataProperty {
                            property,
                            subject,
                            value,
                        }
                    }
                }
            }
        };
        out.push(kind);
    }
    Ok(out)
}

fn tokenize_turtle(body: &str) -> Result<Vec<String>, String> {
    let mut tokens = Vec::new();
    let mut chars = body.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            let mut s = String::from('"');
            chars.next();
            let mut escaped = false;
            for c in chars.by_ref() {
                s.push(c);
                if escaped {
                    escaped = false;
                } else if c == '\\' {
                    escaped = true;
                } else if c == '"' {
                    break;
                }
            }
            if !s.ends_with('"') || s.len() < 2 {
                return Err("unterminated string".into());
            }
            tokens.push(s);
        } else {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                s.push(c);
                chars.next();
            }
            tokens.push(s);
        }
    }
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Derived ontology indicators
// ---------------------------------------------------------------------------

/// Protege-style counts and ratios; ratios that would divide by zero are
/// reported as `None`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OntologyIndicators {
    pub n_axioms: usize,
    pub n_logical: usize,
    pub n_declarations: usize,
    pub logical_share: Option<f64>,
    pub declaration_share: Option<f64>,
    pub n_class_assertions: usize,
    pub n_object_property_assertions: usize,
    pub n_data_property_assertions: usize,
    pub n_different_from: usize,
    pub n_abox: usize,
    pub assertion_density: Option<f64>,
    pub avg_object_assertions_per_individual: Option<f64>,
    pub avg_data_assertions_per_individual: Option<f64>,
    pub n_classes: usize,
    pub n_individuals: usize,
    pub individuals_per_class: Option<f64>,
    pub object_domain_coverage: Option<f64>,
    pub object_range_coverage: Option<f64>,
    pub data_domain_coverage: Option<f64>,
    pub data_range_coverage: Option<f64>,
}

pub fn ontology_indicators(kb: &CaseKb, schema: &Schema) -> OntologyIndicators {
    let mut n_ca = 0;
    let mut n_opa = 0;
    let mut n_dpa = 0;
    let mut n_df = 0;
    for a in &kb.assertions {
        match a.kind {
            AssertionKind::Class { .. } => n_ca += 1,
            AssertionKind::ObjectProperty { .. } => n_opa += 1,
            AssertionKind::DataProperty { .. } => n_dpa += 1,
            AssertionKind::DifferentFrom { .. } => n_df += 1,
        }
    }
    let n_abox = n_ca + n_opa + n_dpa;
    let n_ind = kb.individuals().len();
    let n_classes = schema.class_count();
    let n_props = schema.object_properties.len() + schema.data_properties.len();
    let n_declarations = n_classes + n_props + n_ind;
    // subclass axioms plus domain/range pairs plus the ABox
    let n_logical = schema.classes.len() + 2 * n_props + n_abox + n_df;
    let n_axioms = n_logical + n_declarations;

    let ratio = |num: usize, den: usize| -> Option<f64> {
        (den > 0).then(|| num as f64 / den as f64)
    };
    let coverage = |props: &BTreeMap<String, (String, String)>, pick: fn(&(String, String)) -> &String| {
        ratio(
            props.values().filter(|dr| !pick(dr).is_empty()).count(),
            props.len(),
        )
    };

    OntologyIndicators {
        n_axioms,
        n_logical,
        n_declarations,
        logical_share: ratio(n_logical, n_axioms),
        declaration_share: ratio(n_declarations, n_axioms),
        n_class_assertions: n_ca,
        n_object_property_assertions: n_opa,
        n_data_property_assertions: n_dpa,
        n_different_from: n_df,
        n_abox,
        assertion_density: ratio(n_abox, n_ind),
        avg_object_assertions_per_individual: ratio(n_opa, n_ind),
        avg_data_assertions_per_individual: ratio(n_dpa, n_ind),
        n_classes,
        n_individuals: n_ind,
        individuals_per_class: (n_ind > 0).then(|| n_ind as f64 / n_classes as f64),
        object_domain_coverage: coverage(&schema.object_properties, |dr| &dr.0),
        object_range_coverage: coverage(&schema.object_properties, |dr| &dr.1),
        data_domain_coverage: coverage(&schema.data_properties, |dr| &dr.0),
        data_range_coverage: coverage(&schema.data_properties, |dr| &dr.1),
    }
}
