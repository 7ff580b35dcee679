//! Batch CLI for the casekb pipeline.
//!
//! Subcommands mirror the pipeline stages so each is independently testable:
//! `redact`, `extract`, `validate`, `temporal`, `report`, `eval-review`,
//! `gen-fixtures`, and `run` for the full pipeline. Exit codes: 0 success,
//! 1 configuration error, 2 at least one case failed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use casekb::config::PipelineConfig;
use casekb::fixtures::generate_fixture_corpus;
use casekb::jsonutil::to_canonical_json;
use casekb::metrics::{compute_corpus_metrics, metrics_text};
use casekb::ontology::{export_turtle, ontology_indicators};
use casekb::pipeline::{
    discover_bundles, load_case_outputs, read_metadata, run_corpus, stage_extract, stage_kb,
    stage_parse, stage_redact, stage_temporal, CaseStatus,
};
use casekb::redact::RedactedNarrative;
use casekb::review::{parse_system_csv, parse_votes_csv, review_text, score_review};
use casekb::temporal::export_dot;

#[derive(Parser)]
#[command(
    name = "casekb",
    version,
    about = "Evidence-linked case knowledge bases from redacted narratives and AMR graphs"
)]
struct Cli {
    /// Pipeline config file (JSON of paths); embedded defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Confidence threshold for the high-confidence metric.
    #[arg(long, global = true)]
    tau: Option<f64>,
    /// Worker threads for case-level parallelism.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for fixture generation.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format for stdout summaries.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline over a case directory.
    Run {
        #[arg(long)]
        cases: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Redact narratives only: writes redacted text and audit logs.
    Redact {
        #[arg(long)]
        cases: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract events and frames from redacted narratives plus AMR bundles.
    Extract {
        #[arg(long)]
        cases: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Map events into case knowledge bases, validate, and resolve.
    Validate {
        #[arg(long)]
        cases: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build temporal graphs from extracted events.
    Temporal {
        #[arg(long)]
        cases: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Aggregate per-case outputs into the corpus metrics report.
    Report {
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a human-review vote sheet against system answers.
    EvalReview {
        #[arg(long)]
        votes: PathBuf,
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate the deterministic synthetic fixture corpus.
    GenFixtures {
        #[arg(long, default_value_t = 10)]
        n_cases: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match load_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Some(tau) = cli.tau {
        if !(0.0..=1.0).contains(&tau) {
            eprintln!("config error: tau {tau} is outside [0, 1]");
            return ExitCode::from(1);
        }
        cfg.tau = tau;
    }
    if let Some(workers) = cli.workers {
        cfg.workers = workers;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    match dispatch(&cli, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_config(cli: &Cli) -> Result<PipelineConfig> {
    match &cli.config {
        Some(path) => PipelineConfig::from_file(path).context("loading config file"),
        None => PipelineConfig::default_config().context("loading default config"),
    }
}

fn dispatch(cli: &Cli, cfg: &PipelineConfig) -> Result<ExitCode> {
    match &cli.command {
        Command::Run { cases, out } => {
            let bundles = discover_bundles(cases)?;
            if bundles.is_empty() {
                anyhow::bail!("no case bundles found under {}", cases.display());
            }
            let (metrics, summary) = run_corpus(&bundles, cfg, out)?;
            match cli.format {
                Format::Json => print!("{}", to_canonical_json(&metrics)),
                Format::Text => {
                    print!("{}", metrics_text(&metrics));
                    println!(
                        "\ncases: {} ok, {} skipped, {} failed (config hash {})",
                        summary.cases_ok,
                        summary.cases_skipped,
                        summary.cases_failed,
                        &cfg.config_hash[..12]
                    );
                    for line in &summary.statuses {
                        if let CaseStatus::Failed { reason } = &line.status {
                            println!("  FAILED {}: {reason}", line.case_id);
                        }
                        if let CaseStatus::Skipped { reason } = &line.status {
                            println!("  skipped {}: {reason}", line.case_id);
                        }
                    }
                }
            }
            Ok(if summary.cases_failed > 0 {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Redact { cases, out } => {
            let mut audits = Vec::new();
            let code = for_each_case(cases, |bundle| {
                redact_one(bundle, cfg, out)?;
                let audit: casekb::RedactionAudit =
                    serde_json::from_str(&std::fs::read_to_string(out.join(&bundle.case_id).join(
                        format!("{}.audit.json", bundle.case_id),
                    ))?)?;
                audits.push(audit);
                Ok(())
            })?;
            let summary = casekb::audit_summary(&audits);
            match cli.format {
                Format::Json => print!("{}", to_canonical_json(&summary)),
                Format::Text => print!("{}", casekb::redact::audit_summary_text(&summary)),
            }
            Ok(code)
        }
        Command::Extract { cases, out } => {
            for_each_case(cases, |bundle| extract_one(bundle, cfg, out))
        }
        Command::Validate { cases, out } => {
            for_each_case(cases, |bundle| validate_one(bundle, cfg, out, cli.format))
        }
        Command::Temporal { cases, out } => {
            for_each_case(cases, |bundle| temporal_one(bundle, cfg, out))
        }
        Command::Report { out } => {
            let outputs = load_case_outputs(out)?;
            let metrics = compute_corpus_metrics(&outputs, cfg.tau);
            #[derive(serde::Serialize)]
            struct ReportFile<'a> {
                config_hash: &'a str,
                #[serde(flatten)]
                metrics: &'a casekb::metrics::CorpusMetrics,
            }
            let file = ReportFile {
                config_hash: &cfg.config_hash,
                metrics: &metrics,
            };
            std::fs::write(out.join("metrics_report.json"), to_canonical_json(&file))?;
            let mut text = metrics_text(&metrics);
            text.push_str(&format!("\nconfig hash: {}\n", cfg.config_hash));
            std::fs::write(out.join("metrics_report.txt"), &text)?;
            match cli.format {
                Format::Json => print!("{}", to_canonical_json(&file)),
                Format::Text => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::EvalReview { votes, system, out } => {
            let votes =
                parse_votes_csv(&std::fs::read_to_string(votes)?).map_err(anyhow::Error::msg)?;
            let system =
                parse_system_csv(&std::fs::read_to_string(system)?).map_err(anyhow::Error::msg)?;
            let report = score_review(&cfg.review_questions, &votes, &system);
            std::fs::create_dir_all(out)?;
            std::fs::write(out.join("review_report.json"), to_canonical_json(&report))?;
            let text = review_text(&report);
            std::fs::write(out.join("review_report.txt"), &text)?;
            match cli.format {
                Format::Json => print!("{}", to_canonical_json(&report)),
                Format::Text => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GenFixtures { n_cases, out } => {
            let ids = generate_fixture_corpus(cfg.seed, *n_cases, out)?;
            println!("generated {} cases under {}", ids.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn for_each_case(
    cases: &Path,
    mut f: impl FnMut(&casekb::pipeline::CaseBundle) -> Result<()>,
) -> Result<ExitCode> {
    let mut failed = 0usize;
    for bundle in discover_bundles(cases)? {
        if let Err(e) = f(&bundle) {
            eprintln!("FAILED {}: {e:#}", bundle.case_id);
            failed += 1;
        }
    }
    Ok(if failed > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn write_out(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, content)?;
    Ok(())
}

fn redact_one(
    bundle: &casekb::pipeline::CaseBundle,
    cfg: &PipelineConfig,
    out: &Path,
) -> Result<()> {
    let case_id = &bundle.case_id;
    let raw = std::fs::read_to_string(&bundle.narrative_path)?;
    let metadata = read_metadata(&bundle.metadata_path)?;
    let (narrative, audit) = stage_redact(case_id, &raw, &metadata, cfg);
    let dir = out.join(case_id);
    write_out(&dir.join("redacted.txt"), &narrative.text)?;
    write_out(&dir.join("redacted.json"), &to_canonical_json(&narrative))?;
    write_out(
        &dir.join(format!("{case_id}.audit.json")),
        &to_canonical_json(&audit),
    )?;
    Ok(())
}

fn load_redacted(
    out: &Path,
    case_id: &str,
) -> Result<(RedactedNarrative, casekb::RedactionAudit)> {
    let dir = out.join(case_id);
    let narrative: RedactedNarrative = serde_json::from_str(
        &std::fs::read_to_string(dir.join("redacted.json"))
            .with_context(|| format!("{case_id}: run the redact stage first"))?,
    )?;
    let audit: casekb::RedactionAudit = serde_json::from_str(&std::fs::read_to_string(
        dir.join(format!("{case_id}.audit.json")),
    )?)?;
    Ok((narrative, audit))
}

fn extract_one(
    bundle: &casekb::pipeline::CaseBundle,
    cfg: &PipelineConfig,
    out: &Path,
) -> Result<()> {
    let case_id = &bundle.case_id;
    // stages are independently runnable; make sure redaction outputs exist
    if !out.join(case_id).join("redacted.json").exists() {
        redact_one(bundle, cfg, out)?;
    }
    let (narrative, audit) = load_redacted(out, case_id)?;
    let amr_path = bundle
        .amr_path
        .as_ref()
        .with_context(|| format!("{case_id}: no AMR bundle"))?;
    let graphs = stage_parse(&std::fs::read_to_string(amr_path)?, &narrative)?;
    let staged = stage_extract(case_id, &graphs, &audit, cfg);
    let dir = out.join(case_id);
    write_out(&dir.join("events.json"), &to_canonical_json(&staged.events))?;
    write_out(&dir.join("frames.json"), &to_canonical_json(&staged.frames))?;
    write_out(
        &dir.join("different_from.json"),
        &to_canonical_json(&staged.different_from),
    )?;
    Ok(())
}

fn validate_one(
    bundle: &casekb::pipeline::CaseBundle,
    cfg: &PipelineConfig,
    out: &Path,
    format: Format,
) -> Result<()> {
    let case_id = &bundle.case_id;
    if !out.join(case_id).join("events.json").exists() {
        extract_one(bundle, cfg, out)?;
    }
    let dir = out.join(case_id);
    let events: Vec<casekb::EventMention> =
        serde_json::from_str(&std::fs::read_to_string(dir.join("events.json"))?)?;
    // pairs come from the extract stage so entity ids line up with events.json
    let pairs: Vec<(String, String)> =
        serde_json::from_str(&std::fs::read_to_string(dir.join("different_from.json"))?)?;
    let metadata = read_metadata(&bundle.metadata_path)?;
    let staged = stage_kb(case_id, &events, &pairs, &metadata, cfg);
    #[derive(serde::Serialize)]
    struct Facts<'a> {
        case_id: &'a str,
        assertions: &'a [casekb::Assertion],
        quarantine: &'a [(casekb::Assertion, String)],
        resolution_log: &'a [casekb::ontology::ResolutionAction],
        validation_pre: &'a casekb::ValidationReport,
        validation_final: &'a casekb::ValidationReport,
        metadata_warnings: &'a [String],
        indicators: casekb::OntologyIndicators,
    }
    let facts = Facts {
        case_id,
        assertions: &staged.kb.assertions,
        quarantine: &staged.kb.quarantine,
        resolution_log: &staged.resolution_log,
        validation_pre: &staged.validation_pre,
        validation_final: &staged.validation_final,
        metadata_warnings: &staged.metadata_warnings,
        indicators: ontology_indicators(&staged.kb, &cfg.schema),
    };
    write_out(
        &dir.join(format!("{case_id}.facts.json")),
        &to_canonical_json(&facts),
    )?;
    write_out(
        &dir.join(format!("{case_id}.ttl")),
        &export_turtle(&staged.kb),
    )?;
    if format == Format::Text && !staged.validation_final.consistent {
        println!(
            "{case_id}: {} unresolved violation(s)",
            staged.validation_final.violations.len()
        );
    }
    Ok(())
}

fn temporal_one(
    bundle: &casekb::pipeline::CaseBundle,
    cfg: &PipelineConfig,
    out: &Path,
) -> Result<()> {
    let case_id = &bundle.case_id;
    if !out.join(case_id).join("events.json").exists() {
        extract_one(bundle, cfg, out)?;
    }
    let dir = out.join(case_id);
    let events: Vec<casekb::EventMention> =
        serde_json::from_str(&std::fs::read_to_string(dir.join("events.json"))?)?;
    let (narrative, _) = load_redacted(out, case_id)?;
    let graph = stage_temporal(case_id, &events, &narrative, cfg);
    write_out(
        &dir.join(format!("{case_id}.temporal.dot")),
        &export_dot(&graph),
    )?;
    write_out(
        &dir.join(format!("{case_id}.temporal.json")),
        &to_canonical_json(&graph),
    )?;
    Ok(())
}
