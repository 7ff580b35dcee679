//! Batch orchestration: per-case staging (normalize, redact, split, parse,
//! extract, score, map, validate, resolve, temporal) and deterministic
//! corpus runs with a configurable worker pool.
//!
//! One malformed case never aborts the batch or corrupts another case's
//! outputs; per-case results are collected, sorted by case id, and
//! aggregated single-threaded, so output bytes are identical at any worker
//! count.

use std::collections::{BTreeMap, VecDeque};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::config::PipelineConfig;
use crate::error::CaseError;
use crate::extract::{
    extract_events, fill_frames, separate_unknown_actors, CaseState, EventMention, Frame,
};
use crate::jsonutil::to_canonical_json;
use crate::metrics::{compute_corpus_metrics, metrics_text, CaseOutputs, CorpusMetrics};
use crate::ontology::{
    add_different_from, export_turtle, map_event_to_assertions, map_metadata,
    ontology_indicators, resolve_inconsistencies, validate, CaseKb, OntologyIndicators,
    ResolutionAction, ValidationReport,
};
use crate::penman::{read_amr_bundle, AmrGraph};
use crate::redact::{normalize_ocr, redact, RedactedNarrative, RedactionAudit};
use crate::temporal::{axiom_edges, build_graph, cue_edges, export_dot, EventNode, TemporalGraph};

/// One case on disk: `<case_id>/narrative.txt`, `<case_id>/metadata.json`,
/// and optionally `<case_id>/amr/<case_id>.amr.txt`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseBundle {
    pub case_id: String,
    pub narrative_path: PathBuf,
    pub metadata_path: PathBuf,
    pub amr_path: Option<PathBuf>,
}

impl CaseBundle {
    pub fn from_dir(dir: &Path) -> Option<CaseBundle> {
        let case_id = dir.file_name()?.to_str()?.to_string();
        let narrative_path = dir.join("narrative.txt");
        if !narrative_path.exists() {
            return None;
        }
        let amr = dir.join("amr").join(format!("{case_id}.amr.txt"));
        Some(CaseBundle {
            case_id: case_id.clone(),
            narrative_path,
            metadata_path: dir.join("metadata.json"),
            amr_path: amr.exists().then_some(amr),
        })
    }
}

/// Find case bundles under a corpus directory, sorted by case id.
pub fn discover_bundles(cases_dir: &Path) -> Result<Vec<CaseBundle>, CaseError> {
    let mut bundles = Vec::new();
    let entries = std::fs::read_dir(cases_dir).map_err(|e| CaseError::Io {
        path: cases_dir.display().to_string(),
        source: e,
    })?;
    for entry in entries {
        let entry = entry.map_err(|e| CaseError::Io {
            path: cases_dir.display().to_string(),
            source: e,
        })?;
        if entry.path().is_dir() {
            if let Some(bundle) = CaseBundle::from_dir(&entry.path()) {
                bundles.push(bundle);
            }
        }
    }
    bundles.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    Ok(bundles)
}

fn read_file(path: &Path) -> Result<String, CaseError> {
    std::fs::read_to_string(path).map_err(|e| CaseError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn write_file(path: &Path, content: &str) -> Result<(), CaseError> {
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

pub fn read_metadata(path: &Path) -> Result<BTreeMap<String, String>, CaseError> {
    if !path.exists() {
        return Ok(BTreeMap::new());
    }
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| CaseError::Other(format!(
        "metadata {}: {e}",
        path.display()
    )))
}

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

/// Normalize, redact, and split one narrative.
pub fn stage_redact(
    case_id: &str,
    raw_text: &str,
    metadata: &BTreeMap<String, String>,
    cfg: &PipelineConfig,
) -> (RedactedNarrative, RedactionAudit) {
    let normalized = normalize_ocr(raw_text);
    redact(case_id, &normalized, metadata, &cfg.redaction)
}

/// Parse the AMR bundle and enforce 1:1 sentence-to-graph alignment.
pub fn stage_parse(
    amr_text: &str,
    narrative: &RedactedNarrative,
) -> Result<Vec<AmrGraph>, CaseError> {
    let graphs = read_amr_bundle(amr_text).map_err(|e| CaseError::Penman {
        sentence: 0,
        source: e,
    })?;
    if graphs.len() != narrative.sentences.len() {
        return Err(CaseError::SentenceGraphMismatch {
            sentences: narrative.sentences.len(),
            graphs: graphs.len(),
        });
    }
    Ok(graphs)
}

/// Results of the extraction stage.
pub struct ExtractStage {
    pub events: Vec<EventMention>,
    pub frames: Vec<Frame>,
    pub different_from: Vec<(String, String)>,
    pub state: CaseState,
}

/// Extract and score events for every sentence graph, fill frames, and
/// compute unknown-actor separation pairs.
pub fn stage_extract(
    case_id: &str,
    graphs: &[AmrGraph],
    audit: &RedactionAudit,
    cfg: &PipelineConfig,
) -> ExtractStage {
    let mut state = CaseState::new(case_id);
    let mut events = Vec::new();
    for g in graphs {
        events.extend(extract_events(
            g,
            &audit.pseudonym_map,
            &mut state,
            &cfg.lexicon,
            &cfg.typing,
            &cfg.score,
        ));
    }
    let frames = fill_frames(&events);
    let different_from = separate_unknown_actors(&audit.pseudonym_map, &mut state);
    ExtractStage {
        events,
        frames,
        different_from,
        state,
    }
}

/// Results of the knowledge-base stage.
pub struct KbStage {
    pub kb: CaseKb,
    pub validation_pre: ValidationReport,
    pub validation_final: ValidationReport,
    pub resolution_log: Vec<ResolutionAction>,
    pub metadata_warnings: Vec<String>,
}

/// Build the case knowledge base: map events and metadata, merge, validate,
/// and resolve inconsistencies.
pub fn stage_kb(
    case_id: &str,
    events: &[EventMention],
    different_from: &[(String, String)],
    metadata: &BTreeMap<String, String>,
    cfg: &PipelineConfig,
) -> KbStage {
    let mut kb = CaseKb::new(case_id);
    let metadata_warnings = map_metadata(&mut kb, metadata);
    for event in events {
        map_event_to_assertions(&mut kb, event, &cfg.schema, &cfg.templates);
    }
    add_different_from(&mut kb, different_from);
    let validation_pre = validate(&kb, &cfg.schema);
    let (validation_final, resolution_log) = resolve_inconsistencies(&mut kb, &cfg.schema);
    KbStage {
        kb,
        validation_pre,
        validation_final,
        resolution_log,
        metadata_warnings,
    }
}

/// Build the case temporal graph from cue and axiom edges.
pub fn stage_temporal(
    case_id: &str,
    events: &[EventMention],
    narrative: &RedactedNarrative,
    cfg: &PipelineConfig,
) -> TemporalGraph {
    let sentences: Vec<String> = narrative
        .sentences
        .iter()
        .map(|&(s, e)| narrative.text[s..e].to_string())
        .collect();
    let cue = cue_edges(events, &sentences, &cfg.cues);
    let axiom = axiom_edges(events, &cfg.axioms.axioms);
    let nodes: Vec<EventNode> = events.iter().map(EventNode::from_event).collect();
    build_graph(case_id, nodes, cue, axiom)
}

// ---------------------------------------------------------------------------
// Per-case run
// ---------------------------------------------------------------------------

/// How one case ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CaseStatus {
    Ok,
    Skipped { reason: String },
    Failed { reason: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseRun {
    pub case_id: String,
    pub status: CaseStatus,
    #[serde(skip)]
    pub outputs: Option<CaseOutputs>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FactsFile {
    case_id: String,
    assertions: serde_json::Value,
    quarantine: serde_json::Value,
    resolution_log: Vec<ResolutionAction>,
    validation_pre: ValidationReport,
    validation_final: ValidationReport,
    metadata_warnings: Vec<String>,
    indicators: OntologyIndicators,
}

/// Run the full pipeline for one case, writing every output file under
/// `out_dir/<case_id>/`. Outputs land in a temporary directory first and are
/// renamed into place on completion, so a failed case leaves nothing behind.
/// Errors are contained in the returned status.
pub fn run_case(bundle: &CaseBundle, cfg: &PipelineConfig, out_dir: &Path) -> CaseRun {
    let final_dir = out_dir.join(&bundle.case_id);
    let tmp_dir = out_dir.join(format!(".tmp-{}", bundle.case_id));
    let _ = std::fs::remove_dir_all(&tmp_dir);
    let run = match run_case_inner(bundle, cfg, &tmp_dir) {
        Ok(run) => run,
        Err(e) => CaseRun {
            case_id: bundle.case_id.clone(),
            status: CaseStatus::Failed {
                reason: e.to_string(),
            },
            outputs: None,
        },
    };
    match run.status {
        // skipped cases keep their redaction outputs: the case can resume
        // once an AMR bundle or parser adapter is available
        CaseStatus::Ok | CaseStatus::Skipped { .. } if tmp_dir.exists() => {
            let _ = std::fs::remove_dir_all(&final_dir);
            if let Err(e) = std::fs::rename(&tmp_dir, &final_dir) {
                return CaseRun {
                    case_id: run.case_id,
                    status: CaseStatus::Failed {
                        reason: format!("finalizing outputs: {e}"),
                    },
                    outputs: None,
                };
            }
        }
        _ => {
            let _ = std::fs::remove_dir_all(&tmp_dir);
        }
    }
    run
}

fn run_case_inner(
    bundle: &CaseBundle,
    cfg: &PipelineConfig,
    case_dir: &Path,
) -> Result<CaseRun, CaseError> {
    let case_id = bundle.case_id.as_str();
    let case_dir = case_dir.to_path_buf();
    let raw = read_file(&bundle.narrative_path)?;
    let metadata = read_metadata(&bundle.metadata_path)?;

    let (narrative, audit) = stage_redact(case_id, &raw, &metadata, cfg);
    write_file(&case_dir.join("redacted.txt"), &narrative.text)?;
    write_file(&case_dir.join("redacted.json"), &to_canonical_json(&narrative))?;
    write_file(
        &case_dir.join(format!("{case_id}.audit.json")),
        &to_canonical_json(&audit),
    )?;

    let amr_text = match &bundle.amr_path {
        Some(path) => read_file(path)?,
        None => match &cfg.parser_command {
            Some(template) => {
                let input = case_dir.join("redacted.txt");
                run_parser_adapter(template, &input)?
            }
            None => {
                return Ok(CaseRun {
                    case_id: case_id.to_string(),
                    status: CaseStatus::Skipped {
                        reason: "no AMR file and no parser adapter configured".into(),
                    },
                    outputs: None,
                })
            }
        },
    };
    let graphs = stage_parse(&amr_text, &narrative)?;

    let extracted = stage_extract(case_id, &graphs, &audit, cfg);
    let (events, frames) = (extracted.events, extracted.frames);
    write_file(&case_dir.join("events.json"), &to_canonical_json(&events))?;
    write_file(&case_dir.join("frames.json"), &to_canonical_json(&frames))?;
    // the pairs carry extraction-time entity ids; later stages must reuse
    // them rather than re-deriving ids from a fresh registry
    write_file(
        &case_dir.join("different_from.json"),
        &to_canonical_json(&extracted.different_from),
    )?;

    let staged = stage_kb(case_id, &events, &extracted.different_from, &metadata, cfg);
    let facts = FactsFile {
        case_id: case_id.to_string(),
        assertions: serde_json::to_value(&staged.kb.assertions).expect("serializable"),
        quarantine: serde_json::to_value(&staged.kb.quarantine).expect("serializable"),
        resolution_log: staged.resolution_log,
        validation_pre: staged.validation_pre,
        validation_final: staged.validation_final,
        metadata_warnings: staged.metadata_warnings,
        indicators: ontology_indicators(&staged.kb, &cfg.schema),
    };
    write_file(
        &case_dir.join(format!("{case_id}.facts.json")),
        &to_canonical_json(&facts),
    )?;
    write_file(
        &case_dir.join(format!("{case_id}.ttl")),
        &export_turtle(&staged.kb),
    )?;

    let temporal = stage_temporal(case_id, &events, &narrative, cfg);
    write_file(
        &case_dir.join(format!("{case_id}.temporal.dot")),
        &export_dot(&temporal),
    )?;
    write_file(
        &case_dir.join(format!("{case_id}.temporal.json")),
        &to_canonical_json(&temporal),
    )?;

    Ok(CaseRun {
        case_id: case_id.to_string(),
        status: CaseStatus::Ok,
        outputs: Some(CaseOutputs {
            case_id: case_id.to_string(),
            events,
            frames,
            temporal,
        }),
    })
}

fn run_parser_adapter(template: &str, input: &Path) -> Result<String, CaseError> {
    let command = template.replace("{input}", &input.display().to_string());
    let output = std::process::Command::new("sh")
        .arg("-c")
        .arg(&command)
        .output()
        .map_err(|e| CaseError::Other(format!("parser adapter failed to start: {e}")))?;
    if !output.status.success() {
        return Err(CaseError::Other(format!(
            "parser adapter exited with {}: {}",
            output.status,
            String::from_utf8_lossy(&output.stderr)
        )));
    }
    String::from_utf8(output.stdout)
        .map_err(|e| CaseError::Other(format!("parser adapter produced non-UTF8 output: {e}")))
}

// ---------------------------------------------------------------------------
// Corpus run
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct RunSummary {
    pub config_hash: String,
    pub tau: f64,
    pub cases_ok: usize,
    pub cases_skipped: usize,
    pub cases_failed: usize,
    pub statuses: Vec<CaseRunStatusLine>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CaseRunStatusLine {
    pub case_id: String,
    #[serde(flatten)]
    pub status: CaseStatus,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MetricsReportFile {
    pub config_hash: String,
    #[serde(flatten)]
    pub metrics: CorpusMetrics,
}

/// Run every bundle, then aggregate. Case-level parallelism with `workers`
/// threads; outputs are byte-identical at any worker count.
pub fn run_corpus(
    bundles: &[CaseBundle],
    cfg: &PipelineConfig,
    out_dir: &Path,
) -> Result<(CorpusMetrics, RunSummary), CaseError> {
    let workers = cfg.workers.max(1).min(bundles.len().max(1));
    let queue: Mutex<VecDeque<&CaseBundle>> = Mutex::new(bundles.iter().collect());
    let results: Mutex<Vec<CaseRun>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let bundle = { queue.lock().unwrap().pop_front() };
                let Some(bundle) = bundle else { break };
                let run = run_case(bundle, cfg, out_dir);
                results.lock().unwrap().push(run);
            });
        }
    });
    let mut runs = results.into_inner().unwrap();
    runs.sort_by(|a, b| a.case_id.cmp(&b.case_id));

    let outputs: Vec<CaseOutputs> = runs.iter().filter_map(|r| r.outputs.clone()).collect();
    let metrics = compute_corpus_metrics(&outputs, cfg.tau);
    let report = MetricsReportFile {
        config_hash: cfg.config_hash.clone(),
        metrics: metrics.clone(),
    };
    write_file(
        &out_dir.join("metrics_report.json"),
        &to_canonical_json(&report),
    )?;
    let mut text = metrics_text(&metrics);
    text.push_str(&format!("\nconfig hash: {}\n", cfg.config_hash));
    write_file(&out_dir.join("metrics_report.txt"), &text)?;

    let summary = RunSummary {
        config_hash: cfg.config_hash.clone(),
        tau: cfg.tau,
        cases_ok: runs
            .iter()
            .filter(|r| matches!(r.status, CaseStatus::Ok))
            .count(),
        cases_skipped: runs
            .iter()
            .filter(|r| matches!(r.status, CaseStatus::Skipped { .. }))
            .count(),
        cases_failed: runs
            .iter()
            .filter(|r| matches!(r.status, CaseStatus::Failed { .. }))
            .count(),
        statuses: runs
            .iter()
            .map(|r| CaseRunStatusLine {
                case_id: r.case_id.clone(),
                status: r.status.clone(),
            })
            .collect(),
    };
    write_file(&out_dir.join("run_summary.json"), &to_canonical_json(&summary))?;
    Ok((metrics, summary))
}

/// Reload per-case outputs from a run directory (used by the `report`
/// subcommand and by recount oracles).
pub fn load_case_outputs(out_dir: &Path) -> Result<Vec<CaseOutputs>, CaseError> {
    let mut outputs = Vec::new();
    let entries = std::fs::read_dir(out_dir).map_err(|e| CaseError::Io {
        path: out_dir.display().to_string(),
        source: e,
    })?;
    let mut dirs: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_dir())
        .collect();
    dirs.sort();
    for dir in dirs {
        let case_id = dir.file_name().unwrap().to_string_lossy().to_string();
        let events_path = dir.join("events.json");
        if !events_path.exists() {
            continue;
        }
        let events: Vec<EventMention> = serde_json::from_str(&read_file(&events_path)?)
            .map_err(|e| CaseError::Other(format!("{}: {e}", events_path.display())))?;
        let frames: Vec<Frame> =
            serde_json::from_str(&read_file(&dir.join("frames.json"))?)
                .map_err(|e| CaseError::Other(format!("frames.json: {e}")))?;
        let temporal: TemporalGraph = serde_json::from_str(&read_file(
            &dir.join(format!("{case_id}.temporal.json")),
        )?)
        .map_err(|e| CaseError::Other(format!("temporal.json: {e}")))?;
        outputs.push(CaseOutputs {
            case_id,
            events,
            frames,
            temporal,
        });
    }
    Ok(outputs)
}
