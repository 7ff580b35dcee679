//! casekb converts redacted incident narratives plus per-sentence AMR graphs
//! (PENMAN text) into evidence-linked, validated case knowledge bases with
//! confidence-scored events, participation roles, frames, and temporal
//! precedence graphs, and computes the corpus-level and human-review
//! metrics over them.
//!
//! The pipeline stages per case: OCR normalization, rule-based PII
//! redaction with a reversible audit log, sentence splitting, PENMAN
//! parsing, lexicon-grounded event extraction and scoring, ontology mapping
//! with constraint validation, and temporal graph construction. See the
//! module docs for each stage.

pub mod config;
pub mod error;
pub mod extract;
pub mod fixtures;
pub mod jsonutil;
pub mod lexicon;
pub mod metrics;
pub mod ontology;
pub mod penman;
pub mod pipeline;
pub mod redact;
pub mod review;
pub mod score;
pub mod temporal;

pub use config::PipelineConfig;
pub use error::{CaseError, ConfigError, LexiconError, PenmanError, UnknownPredicate};
pub use extract::{
    extract_events, fill_frames, separate_unknown_actors, Bucket, CaseState, EntityRegistry,
    EventMention, Frame, FrameKind, ParticipantRef, TypingConfig, TypingRule,
};
pub use lexicon::{Lexicon, PathKind, PredicateSense, SemanticPath, Synset};
pub use metrics::{compute_corpus_metrics, metrics_text, CaseOutputs, CorpusMetrics};
pub use ontology::{
    export_turtle, import_turtle, map_event_to_assertions, map_metadata, ontology_indicators,
    resolve_inconsistencies, validate, Assertion, AssertionKind, CaseKb, DataValue,
    OntologyIndicators, Provenance, Schema, TemplateConfig, ValidationReport, Violation,
};
pub use penman::{
    isomorphic, parse_penman, read_amr_bundle, serialize_penman, AmrConstant, AmrEdge, AmrGraph,
    AmrNode, AmrTarget,
};
pub use pipeline::{
    discover_bundles, run_case, run_corpus, CaseBundle, CaseRun, CaseStatus, RunSummary,
};
pub use redact::{
    audit_summary, normalize_ocr, redact, reverse_redaction, split_sentences, Category,
    RedactedNarrative, RedactionAudit, RedactionRuleSet,
};
pub use review::{
    majority_label_multi, majority_label_single, majority_threshold, parse_system_csv,
    parse_votes_csv, prf_from_counts, review_text, score_review, MajorityLabel, QuestionKind,
    ReviewQuestions, ReviewReport,
};
pub use score::{high_conf_fraction, score_event, ScoreBreakdown, ScoreConfig, ScoreInputs};
pub use temporal::{
    axiom_edges, build_graph, cue_edges, export_dot, CueConfig, EdgeSupport, EventNode,
    PrecedenceAxiom, PrecedenceEdge, TemporalGraph,
};
