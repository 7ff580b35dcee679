//! Synthetic desk-scale corpus: narratives, hand-written PENMAN graphs,
//! metadata, gold annotations, and review-vote sheets.
//!
//! Ten templates span the five offense categories and exercise the special
//! paths the test suite needs: the shared-agent break/steal sentence, the
//! kick-the-door scoring walkthrough, every precedence-axiom pair, two
//! unknown suspects, and a theft-without-item violation. Generation is
//! deterministic in (seed, n_cases); cases beyond the ten templates are
//! clones with substituted names. PENMAN is hand-written, never produced
//! from the text, so everything downstream of the semantic layer is
//! parser-independent.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CaseError;
use crate::jsonutil::to_canonical_json;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldEvent {
    pub predicate_sense: String,
    pub event_class: String,
    pub confidence: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldRedaction {
    pub category: String,
    pub label: String,
    pub original: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldEdge {
    pub source_predicate: String,
    pub target_predicate: String,
    pub support: String,
}

/// Expected outputs for one fixture case.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldCase {
    pub offense: String,
    pub events: Vec<GoldEvent>,
    pub redactions: Vec<GoldRedaction>,
    pub different_from_pairs: usize,
    pub violations_pre: Vec<String>,
    pub final_consistent: bool,
    pub temporal_edges: Vec<GoldEdge>,
}

struct Template {
    case_id: &'static str,
    victim_name: Option<&'static str>,
    metadata: &'static [(&'static str, &'static str)],
    narrative: &'static str,
    amr: &'static str,
    gold: fn() -> GoldCase,
}

fn ev(p: &str, c: &str, conf: f64) -> GoldEvent {
    GoldEvent {
        predicate_sense: p.into(),
        event_class: c.into(),
        confidence: conf,
    }
}

fn red(cat: &str, label: &str, original: &str) -> GoldRedaction {
    GoldRedaction {
        category: cat.into(),
        label: label.into(),
        original: original.into(),
    }
}

fn edge(s: &str, t: &str, support: &str) -> GoldEdge {
    GoldEdge {
        source_predicate: s.into(),
        target_predicate: t.into(),
        support: support.into(),
    }
}

fn templates() -> Vec<Template> {
    vec![
        Template {
            case_id: "CASE-001",
            victim_name: Some("John Carter"),
            metadata: &[
                ("case_number", "C-2024-0101"),
                ("offense", "Burglary"),
                ("statute", "PL 140.20"),
                ("report_date", "04/12/2024"),
                ("victim_name", "John Carter"),
            ],
            narrative: "John Carter called 911. An officer responded and took a report. \
                        The suspect broke the rear passenger window of the vehicle and stole a wallet.",
            amr: "\
# ::snt [PERSON_1] called 911.
(c / call-01 :ARG0 (p / person :name \"[PERSON_1]\") :ARG1 (n / number :value 911))

# ::snt An officer responded and took a report.
(a / and :op1 (r / respond-01 :ARG0 (o / officer)) :op2 (t / report-01 :ARG0 o))

# ::snt The suspect broke the rear passenger window of the vehicle and stole a wallet.
(a2 / and :op1 (b / break-01 :ARG0 (s / suspect) :ARG1 (w / window :mod (r2 / rear) :mod (p2 / passenger) :part-of (v / vehicle))) :op2 (st / steal-01 :ARG0 s :ARG1 (w2 / wallet)))
",
            gold: || GoldCase {
                offense: "Burglary".into(),
                events: vec![
                    ev("call-01", "CallEvent", 0.790),
                    ev("respond-01", "PoliceResponseEvent", 0.833),
                    ev("report-01", "ReportTakenEvent", 0.833),
                    ev("break-01", "ForcedEntryEvent", 0.919),
                    ev("steal-01", "TheftEvent", 0.860),
                ],
                redactions: vec![red("PERSON", "[PERSON_1]", "John Carter")],
                different_from_pairs: 0,
                violations_pre: vec![],
                final_consistent: true,
                temporal_edges: vec![
                    edge("call-01", "report-01", "axiom"),
                    edge("break-01", "steal-01", "axiom"),
                ],
            },
        },
        Template {
            case_id: "CASE-002",
            victim_name: Some("Maria Lopez"),
            metadata: &[
                ("case_number", "C-2024-0102"),
                ("offense", "Burglary"),
                ("statute", "PL 140.25"),
                ("report_date", "05/02/2024"),
                ("victim_name", "Maria Lopez"),
            ],
            narrative: "S1 kicked the front door of the residence. Then Maria Lopez discovered the damage.",
            amr: "\
(k / kick-01 :ARG0 (p / person :name \"S1\") :ARG1 (d / door :mod (f / front) :part-of (r / residence)))

(d2 / discover-01 :ARG0 (p2 / person :name \"[PERSON_1]\") :ARG1 (d3 / damage))
",
            gold: || GoldCase {
                offense: "Burglary".into(),
                events: vec![
                    ev("kick-01", "ForcedEntryEvent", 0.919),
                    ev("discover-01", "DiscoveryEvent", 0.522),
                ],
                redactions: vec![red("PERSON", "[PERSON_1]", "Maria Lopez")],
                different_from_pairs: 0,
                violations_pre: vec![],
                final_consistent: true,
                temporal_edges: vec![edge("kick-01", "discover-01", "cue")],
            },
        },
        Template {
            case_id: "CASE-003",
            victim_name: None,
            metadata: &[
                ("case_number", "C-2024-0103"),
                ("offense", "Burglary"),
                ("statute", "PL 140.25"),
                ("report_date", "05/09/2024"),
            ],
            narrative: "S broke the window before entering the home. Then V discovered the damage.",
            amr: "\
(b / break-01 :ARG0 (p / person :name \"S\") :ARG1 (w / window) :time (b2 / before :op1 (e / enter-01 :ARG0 p :ARG1 (h / home))))

(d / discover-01 :ARG0 (v / person :name \"V\") :ARG1 (d2 / damage))
",
            gold: || GoldCase {
                offense: "Burglary".into(),
                events: vec![
                    ev("break-01", "ForcedEntryEvent", 0.919),
                    ev("enter-01", "EntryEvent", 0.920),
                    ev("discover-01", "DiscoveryEvent", 0.522),
                ],
                redactions: vec![],
                different_from_pairs: 0,
                violations_pre: vec![],
                final_consistent: true,
                temporal_edges: vec![
                    edge("break-01", "enter-01", "cue"),
                    edge("enter-01", "discover-01", "cue"),
                ],
            },
        },
        Template {
            case_id: "CASE-004",
            victim_name: Some("Dana White"),
            metadata: &[
                ("case_number", "C-2024-0104"),
                ("offense", "Robbery"),
                ("statute", "PL 160.10"),
                ("report_date", "06/14/2024"),
                ("victim_name", "Dana White"),
            ],
            narrative: "S1 approached Dana White near Highland Park and took a purse. \
                        S2 displayed a knife. Both suspects fled.",
            amr: "\
(a / and :op1 (ap / approach-01 :ARG0 (p / person :name \"S1\") :ARG1 (v / person :name \"[PERSON_1]\")) :op2 (t / take-01 :ARG0 p :ARG1 (pu / purse)))

(d / display-01 :ARG0 (p2 / person :name \"S2\") :ARG1 (k / knife))

(f / flee-01 :ARG0 (s / suspect))
",
            gold: || GoldCase {
                offense: "Robbery".into(),
                events: vec![
                    ev("approach-01", "NarrativeAction", 0.546),
                    ev("take-01", "TheftEvent", 0.850),
                    ev("display-01", "NarrativeAction", 0.798),
                    ev("flee-01", "NarrativeAction", 0.800),
                ],
                redactions: vec![
                    red("PERSON", "[PERSON_1]", "Dana White"),
                    red("LOC", "[LOC_1]", "Highland Park"),
                ],
                different_from_pairs: 1,
                violations_pre: vec![],
                final_consistent: true,
                temporal_edges: vec![],
            },
        },
        Template {
            case_id: "CASE-005",
            victim_name: None,
            metadata: &[
                ("case_number", "C-2024-0105"),
                ("offense", "Larceny"),
                ("statute", "PL 155.25"),
                ("report_date", "07/01/2024"),
            ],
            narrative: "V reported that S1 stole from the store.",
            amr: "\
(r / report-01 :ARG0 (v / person :name \"V\") :ARG1 (s / steal-01 :ARG0 (p / person :name \"S1\") :ARG2 (st / store)))
",
            gold: || GoldCase {
                offense: "Larceny".into(),
                events: vec![
                    ev("report-01", "ReportTakenEvent", 0.833),
                    ev("steal-01", "TheftEvent", 0.860),
                ],
                redactions: vec![],
                different_from_pairs: 0,
                violations_pre: vec!["theft_has_stolen_item".into()],
                final_consistent: true,
                temporal_edges: vec![],
            },
        },
        Template {
            case_id: "CASE-006",
            victim_name: Some("Alan Reed"),
            metadata: &[
                ("case_number", "C-2024-0106"),
                ("offense", "Motor Vehicle Theft"),
                ("statute", "PL 165.45"),
                ("report_date", "08/21/2024"),
                ("victim_name", "Alan Reed"),
            ],
            narrative: "Alan Reed parked the sedan on Oak Street overnight. \
                        The vehicle with plate ABC-1234 was stolen. Police recovered the sedan later.",
            amr: "\
(p / park-01 :ARG0 (o / person :name \"[PERSON_1]\") :ARG1 (s / sedan))

(s2 / steal-01 :ARG1 (v / vehicle))

(r / recover-01 :ARG0 (p3 / police) :ARG1 (s3 / sedan))
",
            gold: || GoldCase {
                offense: "Motor Vehicle Theft".into(),
                events: vec![
                    ev("park-01", "NarrativeAction", 0.548),
                    ev("steal-01", "TheftEvent", 0.860),
                    ev("recover-01", "NarrativeAction", 0.748),
                ],
                redactions: vec![
                    red("PERSON", "[PERSON_1]", "Alan Reed"),
                    red("PLATE", "[PLATE_1]", "ABC-1234"),
                ],
                different_from_pairs: 0,
                violations_pre: vec![],
                final_consistent: true,
                temporal_edges: vec![edge("steal-01", "recover-01", "cue")],
            },
        },
        Template {
            case_id: "CASE-007",
            victim_name: None,
            metadata: &[
                ("case_number", "C-2024-0107"),
                ("offense", "Stolen Property"),
                ("statute", "PL 165.40"),
                ("report_date", "09/03/2024"),
            ],
            narrative: "Officers arrested S1 near Lakeside Pawn. S1 turned over the stolen property. \
                        S1 was booked at the station.",
            amr: "\
(a / arrest-01 :ARG0 (o / officer) :ARG1 (p / person :name \"S1\"))

(t / turn-over-12 :ARG0 (p2 / person :name \"S1\") :ARG1 (pr / property))

(b / book-02 :ARG1 (p3 / person :name \"S1\") :location (s / station))
",
            gold: || GoldCase {
                offense: "Stolen Property".into(),
                events: vec![
                    ev("arrest-01", "ArrestEvent", 0.833),
                    ev("turn-over-12", "TransferCustodyEvent", 0.762),
                    ev("book-02", "BookingEvent", 0.833),
                ],
                redactions: vec![red("ORG", "[ORG_1]", "Lakeside Pawn")],
                different_from_pairs: 0,
                violations_pre: vec![],
                final_consistent: true,
                temporal_edges: vec![edge("arrest-01", "book-02", "axiom")],
            },
        },
        Template {
            case_id: "CASE-008",
            victim_name: Some("Kevin Moore"),
            metadata: &[
                ("case_number", "C-2024-0108"),
                ("offense", "Burglary"),
                ("statute", "PL 140.20"),
                ("report_date", "10/11/2024"),
                ("victim_name", "Kevin Moore"),
            ],
            narrative: "Kevin Moore returned home in the evening. \
                        Upon returning, Kevin Moore discovered the broken lock. He found his laptop missing.",
            amr: "\
(r / return-01 :ARG1 (p / person :name \"[PERSON_1]\") :ARG4 (h / home))

(d / discover-01 :ARG0 (p2 / person :name \"[PERSON_1]\") :ARG1 (l / lock :mod (b / broken)))

(f / find-01 :ARG0 (h2 / he) :ARG1 (l2 / laptop :mod (m / missing)))
",
            gold: || GoldCase {
                offense: "Burglary".into(),
                events: vec![
                    ev("return-01", "ReturnEvent", 0.542),
                    ev("discover-01", "DiscoveryEvent", 0.522),
                    ev("find-01", "DiscoveryEvent", 0.544),
                ],
                redactions: vec![red("PERSON", "[PERSON_1]", "Kevin Moore")],
                different_from_pairs: 0,
                violations_pre: vec![],
                final_consistent: true,
                temporal_edges: vec![
                    edge("return-01", "discover-01", "cue+axiom"),
                    edge("return-01", "find-01", "axiom"),
                ],
            },
        },
        Template {
            case_id: "CASE-009",
            victim_name: Some("Rosa Ortiz"),
            metadata: &[
                ("case_number", "C-2024-0109"),
                ("offense", "Larceny"),
                ("statute", "PL 155.30"),
                ("report_date", "03/06/2024"),
                ("victim_name", "Rosa Ortiz"),
            ],
            narrative: "On 03/05/2024 S1 took a phone valued at 300 dollars from Rosa Ortiz. \
                        S1 did not return the phone.",
            amr: "\
(t / take-01 :ARG0 (p / person :name \"S1\") :ARG1 (ph / phone :cost (m / monetary-quantity :quant 300 :unit (d / dollar))) :ARG2 (v / person :name \"[PERSON_1]\"))

(r / return-02 :polarity - :ARG0 (p2 / person :name \"S1\") :ARG1 (ph2 / phone))
",
            gold: || GoldCase {
                offense: "Larceny".into(),
                events: vec![
                    ev("take-01", "TheftEvent", 0.850),
                    ev("return-02", "ReturnEvent", 0.442),
                ],
                redactions: vec![
                    red("DATE", "[DATE_1]", "03/05/2024"),
                    red("PERSON", "[PERSON_1]", "Rosa Ortiz"),
                ],
                different_from_pairs: 0,
                violations_pre: vec![],
                final_consistent: true,
                temporal_edges: vec![],
            },
        },
        Template {
            case_id: "CASE-010",
            victim_name: None,
            metadata: &[
                ("case_number", "C-2024-0110"),
                ("offense", "Burglary"),
                ("statute", "PL 140.25"),
                ("report_date", "11/30/2024"),
            ],
            narrative: "V stated that S1 possibly entered the garage through the side window. \
                        The house sits in Brighton.",
            amr: "\
(s / state-01 :ARG0 (v / person :name \"V\") :ARG1 (p / possible-01 :ARG1 (e / enter-01 :ARG0 (p2 / person :name \"S1\") :ARG1 (g / garage) :path (w / window :mod (s2 / side)))))

(s3 / sit-01 :ARG1 (h / house) :location (c / city :name \"[GPE_1]\"))
",
            gold: || GoldCase {
                offense: "Burglary".into(),
                events: vec![
                    ev("state-01", "NarrativeAction", 0.366),
                    ev("possible-01", "NarrativeAction", 0.300),
                    ev("enter-01", "EntryEvent", 0.920),
                    ev("sit-01", "NarrativeAction", 0.300),
                ],
                redactions: vec![red("GPE", "[GPE_1]", "Brighton")],
                different_from_pairs: 0,
                violations_pre: vec![],
                final_consistent: true,
                temporal_edges: vec![],
            },
        },
    ]
}

const NAME_POOL: [&str; 12] = [
    "Avery Collins",
    "Jordan Blake",
    "Morgan Ellis",
    "Riley Hayes",
    "Casey Turner",
    "Quinn Foster",
    "Rowan Parker",
    "Skyler Dean",
    "Harper Niles",
    "Emerson Clay",
    "Sawyer Lund",
    "Finley Marsh",
];

/// Small deterministic generator for name substitution (SplitMix64).
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

fn write(path: &Path, content: &str) -> Result<(), CaseError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| CaseError::Io {
            path: parent.display().to_string(),
            source: e,
        })?;
    }
    std::fs::write(path, content).map_err(|e| CaseError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

/// Generate a deterministic fixture corpus of `n_cases` under `out_dir`.
///
/// The first ten cases are the fixed templates; further cases clone the
/// templates round-robin with pool names chosen by the seeded generator.
/// Also writes the review-vote and system-answer sheets covering the first
/// five cases. Returns the generated case ids.
pub fn generate_fixture_corpus(
    seed: u64,
    n_cases: usize,
    out_dir: &Path,
) -> Result<Vec<String>, CaseError> {
    assert!(n_cases >= 1, "n_cases must be at least 1");
    let templates = templates();
    let mut rng = SplitMix64(seed);
    let mut case_ids = Vec::new();
    for i in 0..n_cases {
        let template = &templates[i % templates.len()];
        let case_id = if i < templates.len() {
            template.case_id.to_string()
        } else {
            format!("CASE-{:03}", i + 1)
        };
        let substitute = if i < templates.len() {
            None
        } else {
            template
                .victim_name
                .map(|_| NAME_POOL[(rng.next() % NAME_POOL.len() as u64) as usize])
        };

        let swap = |s: &str| -> String {
            match (template.victim_name, substitute) {
                (Some(old), Some(new)) => s.replace(old, new),
                _ => s.to_string(),
            }
        };

        let dir = out_dir.join(&case_id);
        write(&dir.join("narrative.txt"), &swap(template.narrative))?;
        let metadata: BTreeMap<String, String> = template
            .metadata
            .iter()
            .map(|(k, v)| (k.to_string(), swap(v)))
            .collect();
        write(&dir.join("metadata.json"), &to_canonical_json(&metadata))?;
        write(
            &dir.join("amr").join(format!("{case_id}.amr.txt")),
            template.amr,
        )?;
        let mut gold = (template.gold)();
        for r in &mut gold.redactions {
            r.original = swap(&r.original);
        }
        write(&dir.join(format!("{case_id}.gold.json")), &to_canonical_json(&gold))?;
        case_ids.push(case_id);
    }

    write(&out_dir.join("review_votes.csv"), &review_votes_csv())?;
    write(&out_dir.join("system_answers.csv"), &system_answers_csv())?;
    Ok(case_ids)
}

/// Load the gold file of one generated case.
pub fn load_gold(case_dir: &Path, case_id: &str) -> Result<GoldCase, CaseError> {
    let path = case_dir.join(format!("{case_id}.gold.json"));
    let text = std::fs::read_to_string(&path).map_err(|e| CaseError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(|e| CaseError::Other(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Review vote sheets (five cases, six reviewers)
// ---------------------------------------------------------------------------

const CASES: [&str; 5] = ["CASE-001", "CASE-002", "CASE-003", "CASE-004", "CASE-005"];

/// Per-question single-choice vote distributions: (question, per-case list
/// of (option, votes) pairs summing to six).
#[allow(clippy::type_complexity)]
fn single_choice_votes() -> Vec<(&'static str, [&'static [(&'static str, usize)]; 5])> {
    vec![
        (
            "Q1",
            [
                &[("911 call", 4), ("Officer dispatched", 2)],
                &[("Walk-in report", 5), ("Other", 1)],
                &[("Officer dispatched", 4), ("911 call", 2)],
                &[("911 call", 3), ("Walk-in report", 3)],
                &[("911 call", 2), ("Officer observed", 2), ("Other", 2)],
            ],
        ),
        (
            "Q2",
            [
                &[("Primary vehicle incident", 5), ("No vehicle mentioned", 1)],
                &[("Vehicle mentioned only", 4), ("No vehicle mentioned", 2)],
                &[("Primary vehicle incident", 4), ("Vehicle mentioned only", 2)],
                &[("No vehicle mentioned", 5), ("Vehicle mentioned only", 1)],
                &[("No vehicle mentioned", 4), ("Not clear", 2)],
            ],
        ),
        (
            "Q3",
            [
                &[("Yes", 5), ("No", 1)],
                &[("Yes", 4), ("No", 2)],
                &[("No", 5), ("Yes", 1)],
                &[("No", 4), ("Not clear", 2)],
                &[("Not clear", 4), ("Yes", 2)],
            ],
        ),
        (
            "Q4",
            [
                &[("Door", 3), ("Window", 3)],
                &[("Window", 2), ("Glass", 2), ("Other", 2)],
                &[("Door", 2), ("Window", 2), ("Vehicle part", 2)],
                &[("Door", 3), ("Glass", 3)],
                &[("Window", 3), ("Other", 3)],
            ],
        ),
        (
            "Q5",
            [
                &[("Yes", 5), ("No", 1)],
                &[("Yes", 5), ("No", 1)],
                &[("Yes", 5), ("Not clear", 1)],
                &[("Yes", 6)],
                &[("Yes", 5), ("No", 1)],
            ],
        ),
        (
            "Q6",
            [
                &[("Items named", 5), ("None named", 1)],
                &[("Items named", 5), ("Not clear", 1)],
                &[("Items named", 5), ("None named", 1)],
                &[("Items named", 6)],
                &[("None named", 5), ("Items named", 1)],
            ],
        ),
        (
            "Q7",
            [
                &[("Specific time", 5), ("Rough time only", 1)],
                &[("Rough time only", 4), ("No time mentioned", 2)],
                &[("No time mentioned", 5), ("Not clear", 1)],
                &[("Specific time", 4), ("Rough time only", 2)],
                &[("Rough time only", 5), ("No time mentioned", 1)],
            ],
        ),
        (
            "Q9",
            [
                &[("Most of the questions", 4), ("All of the questions", 2)],
                &[("All of the questions", 5), ("Most of the questions", 1)],
                &[("Most of the questions", 5), ("Some of the questions", 1)],
                &[("Some of the questions", 4), ("Most of the questions", 2)],
                &[("Most of the questions", 4), ("None of the questions", 2)],
            ],
        ),
    ]
}

/// Q8 multi-choice: per case, per reviewer, the selected option set.
fn q8_votes() -> [[&'static [&'static str]; 6]; 5] {
    [
        [
            &["Victim", "Officer", "Suspect"],
            &["Victim", "Officer", "Suspect"],
            &["Victim", "Officer", "Suspect", "Witness"],
            &["Victim", "Officer", "Suspect", "Witness"],
            &["Victim", "Officer"],
            &["Victim", "Suspect"],
        ],
        [
            &["Victim", "Officer"],
            &["Victim", "Officer"],
            &["Victim", "Officer"],
            &["Victim", "Officer", "Suspect"],
            &["Victim", "Suspect"],
            &["Victim"],
        ],
        [
            &["Victim"],
            &["Officer"],
            &["Suspect"],
            &["Victim", "Witness"],
            &["Officer", "Suspect"],
            &["Witness"],
        ],
        [
            &["Victim", "Officer"],
            &["Victim", "Officer"],
            &["Victim", "Officer"],
            &["Suspect"],
            &["Suspect"],
            &["Suspect"],
        ],
        [
            &["Officer"],
            &["Officer"],
            &["Officer"],
            &["Victim"],
            &["Victim"],
            &["Witness"],
        ],
    ]
}

/// The system's answers per case and question.
fn system_answers() -> Vec<(&'static str, [&'static [&'static str]; 5])> {
    vec![
        ("Q1", [
            &["911 call"],
            &["Walk-in report"],
            &["Officer dispatched"],
            &["911 call"],
            &["Other"],
        ]),
        ("Q2", [
            &["Primary vehicle incident"],
            &["Vehicle mentioned only"],
            &["Primary vehicle incident"],
            &["Vehicle mentioned only"],
            &["No vehicle mentioned"],
        ]),
        ("Q3", [&["Yes"], &["No"], &["Yes"], &["No"], &["Yes"]]),
        ("Q4", [&["Door"], &["Door"], &["Door"], &["Door"], &["Door"]]),
        ("Q5", [&["Yes"], &["Yes"], &["Yes"], &["Yes"], &["No"]]),
        ("Q6", [
            &["Items named"],
            &["Items named"],
            &["Items named"],
            &["Items named"],
            &["None named"],
        ]),
        ("Q7", [
            &["Specific time"],
            &["Rough time only"],
            &["No time mentioned"],
            &["Specific time"],
            &["Rough time only"],
        ]),
        ("Q8", [
            &["Victim", "Officer", "Suspect", "Witness"],
            &["Victim"],
            &["Victim", "Officer"],
            &["Victim", "Suspect"],
            &["Officer"],
        ]),
        ("Q9", [
            &["Most of the questions"],
            &["All of the questions"],
            &["Most of the questions"],
            &["Most of the questions"],
            &["Most of the questions"],
        ]),
    ]
}

/// Render `review_votes.csv` for the five-case, six-reviewer study.
pub fn review_votes_csv() -> String {
    let mut out = String::from("case_id,question_id,reviewer_id,option\n");
    for (question, per_case) in single_choice_votes() {
        for (case_idx, dist) in per_case.iter().enumerate() {
            let mut reviewer = 0usize;
            for (option, votes) in dist.iter() {
                for _ in 0..*votes {
                    reviewer += 1;
                    out.push_str(&format!(
                        "{},{},R{},{}\n",
                        CASES[case_idx], question, reviewer, option
                    ));
                }
            }
            debug_assert_eq!(reviewer, 6, "{question} {case_idx}");
        }
    }
    for (case_idx, per_reviewer) in q8_votes().iter().enumerate() {
        for (r, options) in per_reviewer.iter().enumerate() {
            for option in options.iter() {
                out.push_str(&format!(
                    "{},Q8,R{},{}\n",
                    CASES[case_idx],
                    r + 1,
                    option
                ));
            }
        }
    }
    out
}

/// Render `system_answers.csv`.
pub fn system_answers_csv() -> String {
    let mut out = String::from("case_id,question_id,option\n");
    for (question, per_case) in system_answers() {
        for (case_idx, options) in per_case.iter().enumerate() {
            for option in options.iter() {
                out.push_str(&format!("{},{},{}\n", CASES[case_idx], question, option));
            }
        }
    }
    out
}
