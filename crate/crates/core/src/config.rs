//! Pipeline configuration: component configs, the lexicon, and runtime
//! options, loaded from embedded defaults or from a config file of paths.
//! Every referenced file must exist and parse at startup. A SHA-256 hash of
//! the loaded configuration is printed into reports for reproducibility.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::ConfigError;
use crate::extract::TypingConfig;
use crate::lexicon::Lexicon;
use crate::ontology::{Schema, TemplateConfig};
use crate::redact::RedactionRuleSet;
use crate::review::ReviewQuestions;
use crate::score::ScoreConfig;
use crate::temporal::{AxiomConfig, CueConfig};

pub mod defaults {
    pub const REDACTION_RULES: &str = include_str!("../assets/config/redaction_rules.json");
    pub const TYPING_RULES: &str = include_str!("../assets/config/typing_rules.json");
    pub const SCORE_CONFIG: &str = include_str!("../assets/config/score_config.json");
    pub const AXIOMS: &str = include_str!("../assets/config/axioms.json");
    pub const CUES: &str = include_str!("../assets/config/cues.json");
    pub const TEMPLATES: &str = include_str!("../assets/config/templates.json");
    pub const TYPE_ANCHORS: &str = include_str!("../assets/config/type_anchors.json");
    pub const SCHEMA: &str = include_str!("../assets/config/schema.json");
    pub const REVIEW_QUESTIONS: &str = include_str!("../assets/config/review_questions.json");
    pub const SYNSETS: &str = include_str!("../assets/lexicon/synsets.tsv");
    pub const HYPERNYMS: &str = include_str!("../assets/lexicon/hypernyms.tsv");
    pub const SEMLINK: &str = include_str!("../assets/lexicon/semlink.tsv");
    pub const PROPBANK: &str = include_str!("../assets/lexicon/propbank.tsv");
    pub const TABLE4_FIXTURES: &str = include_str!("../assets/fixtures/table4.json");
}

/// Fully loaded pipeline configuration.
pub struct PipelineConfig {
    pub redaction: RedactionRuleSet,
    pub typing: TypingConfig,
    pub score: ScoreConfig,
    pub axioms: AxiomConfig,
    pub cues: CueConfig,
    pub templates: TemplateConfig,
    pub schema: Schema,
    pub review_questions: ReviewQuestions,
    pub lexicon: Lexicon,
    pub tau: f64,
    pub workers: usize,
    pub seed: u64,
    /// Command template for an external text-to-AMR parser; `{input}` is
    /// replaced with the redacted-text path, PENMAN expected on stdout.
    pub parser_command: Option<String>,
    pub config_hash: String,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    redaction_rules: Option<PathBuf>,
    typing_rules: Option<PathBuf>,
    score_config: Option<PathBuf>,
    axioms: Option<PathBuf>,
    cues: Option<PathBuf>,
    templates: Option<PathBuf>,
    type_anchors: Option<PathBuf>,
    schema: Option<PathBuf>,
    review_questions: Option<PathBuf>,
    lexicon_dir: Option<PathBuf>,
    #[serde(default)]
    lexicon_format: Option<String>,
    tau: Option<f64>,
    workers: Option<usize>,
    seed: Option<u64>,
    parser_command: Option<String>,
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

impl PipelineConfig {
    /// The shipped defaults.
    pub fn default_config() -> Result<Self, ConfigError> {
        Self::build(
            defaults::REDACTION_RULES.to_string(),
            defaults::TYPING_RULES.to_string(),
            defaults::SCORE_CONFIG.to_string(),
            defaults::AXIOMS.to_string(),
            defaults::CUES.to_string(),
            defaults::TEMPLATES.to_string(),
            defaults::TYPE_ANCHORS.to_string(),
            defaults::SCHEMA.to_string(),
            defaults::REVIEW_QUESTIONS.to_string(),
            None,
            0.80,
            1,
            42,
            None,
        )
    }

    /// Load from a config file; fields not present fall back to the embedded
    /// defaults. Relative paths resolve against the config file's directory.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = read(path)?;
        let file: ConfigFile = serde_json::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        let resolve = |p: &PathBuf| -> PathBuf {
            if p.is_absolute() {
                p.clone()
            } else {
                base.join(p)
            }
        };
        let load = |p: &Option<PathBuf>, fallback: &str| -> Result<String, ConfigError> {
            match p {
                Some(p) => read(&resolve(p)),
                None => Ok(fallback.to_string()),
            }
        };
        let lexicon_source = match &file.lexicon_dir {
            Some(dir) => Some((resolve(dir), file.lexicon_format.clone())),
            None => None,
        };
        Self::build(
            load(&file.redaction_rules, defaults::REDACTION_RULES)?,
            load(&file.typing_rules, defaults::TYPING_RULES)?,
            load(&file.score_config, defaults::SCORE_CONFIG)?,
            load(&file.axioms, defaults::AXIOMS)?,
            load(&file.cues, defaults::CUES)?,
            load(&file.templates, defaults::TEMPLATES)?,
            load(&file.type_anchors, defaults::TYPE_ANCHORS)?,
            load(&file.schema, defaults::SCHEMA)?,
            load(&file.review_questions, defaults::REVIEW_QUESTIONS)?,
            lexicon_source,
            file.tau.unwrap_or(0.80),
            file.workers.unwrap_or(1),
            file.seed.unwrap_or(42),
            file.parser_command,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn build(
        redaction_json: String,
        typing_json: String,
        score_json: String,
        axioms_json: String,
        cues_json: String,
        templates_json: String,
        anchors_json: String,
        schema_json: String,
        review_json: String,
        lexicon_source: Option<(PathBuf, Option<String>)>,
        tau: f64,
        workers: usize,
        seed: u64,
        parser_command: Option<String>,
    ) -> Result<Self, ConfigError> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(ConfigError::Invalid {
                field: "tau".into(),
                message: format!("{tau} is outside [0, 1]"),
            });
        }
        let anchors: BTreeMap<String, Vec<String>> =
            serde_json::from_str(&anchors_json).map_err(|e| ConfigError::Parse {
                path: "type_anchors.json".into(),
                message: e.to_string(),
            })?;
        let lex_err = |e: crate::error::LexiconError| ConfigError::Invalid {
            field: "lexicon".into(),
            message: e.to_string(),
        };
        let (lexicon, lexicon_fingerprint) = match &lexicon_source {
            None => (
                Lexicon::from_snapshot_text(
                    defaults::SYNSETS,
                    defaults::HYPERNYMS,
                    defaults::SEMLINK,
                    defaults::PROPBANK,
                )
                .map_err(lex_err)?,
                format!(
                    "{}{}{}{}",
                    defaults::SYNSETS,
                    defaults::HYPERNYMS,
                    defaults::SEMLINK,
                    defaults::PROPBANK
                ),
            ),
            Some((dir, format)) => {
                let lex = match format.as_deref() {
                    Some("wordnet_db") => Lexicon::from_wordnet_db(dir).map_err(lex_err)?,
                    _ => Lexicon::from_snapshot_dir(dir).map_err(lex_err)?,
                };
                (lex, dir.display().to_string())
            }
        };
        let lexicon = lexicon.with_type_anchors(anchors);

        let mut hasher = Sha256::new();
        for part in [
            &redaction_json,
            &typing_json,
            &score_json,
            &axioms_json,
            &cues_json,
            &templates_json,
            &anchors_json,
            &schema_json,
            &review_json,
            &lexicon_fingerprint,
            &format!("tau={tau};seed={seed}"),
        ] {
            hasher.update(part.as_bytes());
        }
        let config_hash = format!("{:x}", hasher.finalize());

        let typing = TypingConfig::from_json(&typing_json, "typing_rules.json")?;
        let schema = Schema::from_json(&schema_json, "schema.json")?;
        let axioms = AxiomConfig::from_json(&axioms_json, "axioms.json")?;
        // every class a rule or axiom can produce must exist in the TBox
        for rule in &typing.rules {
            for class in std::iter::once(&rule.event_class)
                .chain(rule.event_class_by_lemma.values())
            {
                if !schema.contains_class(class) {
                    return Err(ConfigError::Invalid {
                        field: format!("typing_rules.json: rule {}", rule.rule_id),
                        message: format!("event class `{class}` is not in the schema"),
                    });
                }
            }
        }
        for axiom in &axioms.axioms {
            for class in [&axiom.source_class, &axiom.target_class] {
                if !schema.contains_class(class) {
                    return Err(ConfigError::Invalid {
                        field: format!("axioms.json: {}", axiom.axiom_id),
                        message: format!("event class `{class}` is not in the schema"),
                    });
                }
            }
        }

        Ok(PipelineConfig {
            redaction: RedactionRuleSet::from_json(&redaction_json, "redaction_rules.json")?,
            typing,
            score: ScoreConfig::from_json(&score_json, "score_config.json")?,
            axioms,
            cues: CueConfig::from_json(&cues_json, "cues.json")?,
            templates: TemplateConfig::from_json(&templates_json, "templates.json")?,
            schema,
            review_questions: ReviewQuestions::from_json(&review_json, "review_questions.json")?,
            lexicon,
            tau,
            workers,
            seed,
            parser_command,
            config_hash,
        })
    }
}
