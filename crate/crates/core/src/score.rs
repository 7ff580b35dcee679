//! Per-event confidence scoring with a full audit breakdown.
//!
//! The raw score is `c_raw = b + g_lex + g_struct - p`: a bucket base, a
//! lexical grounding bonus, structural rule support, and penalties for
//! ambiguity, negation and hedging. When a typing rule fired the final score
//! blends the rule prior with the bounded raw score; the fixed order of
//! operations is cap, blend, specificity bonus, clamp. This is an exploratory
//! evidence summary, not a learned probability.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::extract::Bucket;
use crate::lexicon::PathKind;
use crate::jsonutil::round9;

/// All scoring constants. Values outside `[0, 1]` (or alpha outside `(0, 1)`)
/// are rejected at load time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScoreConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub bucket_bases: BucketBases,
    pub full_path_bonus: f64,
    pub lemma_fallback_bonus: f64,
    pub anchor_bonus: f64,
    pub object_bonus: f64,
    pub negation_penalty_core: f64,
    pub negation_penalty_other: f64,
    pub hedge_penalty: f64,
    pub alpha: f64,
    pub object_cap: f64,
    pub ambiguity_coef_synset: f64,
    pub ambiguity_coef_verbnet: f64,
    pub ambiguity_penalty_max: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BucketBases {
    pub incident_core: f64,
    pub police_action: f64,
    pub context_admin: f64,
    pub uncertain: f64,
}

impl BucketBases {
    pub fn base(&self, bucket: Bucket) -> f64 {
        match bucket {
            Bucket::IncidentCore => self.incident_core,
            Bucket::PoliceAction => self.police_action,
            Bucket::ContextAdmin => self.context_admin,
            Bucket::Uncertain => self.uncertain,
        }
    }
}

impl ScoreConfig {
    pub fn from_json(json: &str, origin: &str) -> Result<Self, ConfigError> {
        let cfg: ScoreConfig = serde_json::from_str(json).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })?;
        cfg.validate(origin)?;
        Ok(cfg)
    }

    pub fn validate(&self, origin: &str) -> Result<(), ConfigError> {
        let unit = [
            ("bucket_bases.incident_core", self.bucket_bases.incident_core),
            ("bucket_bases.police_action", self.bucket_bases.police_action),
            ("bucket_bases.context_admin", self.bucket_bases.context_admin),
            ("bucket_bases.uncertain", self.bucket_bases.uncertain),
            ("full_path_bonus", self.full_path_bonus),
            ("lemma_fallback_bonus", self.lemma_fallback_bonus),
            ("anchor_bonus", self.anchor_bonus),
            ("object_bonus", self.object_bonus),
            ("negation_penalty_core", self.negation_penalty_core),
            ("negation_penalty_other", self.negation_penalty_other),
            ("hedge_penalty", self.hedge_penalty),
            ("object_cap", self.object_cap),
            ("ambiguity_coef_synset", self.ambiguity_coef_synset),
            ("ambiguity_coef_verbnet", self.ambiguity_coef_verbnet),
            ("ambiguity_penalty_max", self.ambiguity_penalty_max),
        ];
        for (name, v) in unit {
            if !(0.0..=1.0).contains(&v) {
                return Err(ConfigError::Invalid {
                    field: format!("{origin}: {name}"),
                    message: format!("{v} is outside [0, 1]"),
                });
            }
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ConfigError::Invalid {
                field: format!("{origin}: alpha"),
                message: format!("{} is outside (0, 1)", self.alpha),
            });
        }
        Ok(())
    }
}

/// Everything the scorer needs to know about one event mention.
#[derive(Debug, Clone)]
pub struct ScoreInputs {
    pub bucket: Bucket,
    pub path_kind: Option<PathKind>,
    /// The fired rule matched the predicate through its anchor list.
    pub anchor_matched: bool,
    /// The fired rule carries an object-evidence tag (satisfied, since rules
    /// only fire with their required tags met). Triggers both the +object
    /// bonus and the object-supported cap.
    pub object_evidence: bool,
    pub negated: bool,
    pub hedged: bool,
    pub n_wordnet_synsets: usize,
    pub n_verbnet_senses: usize,
    /// Prior of the fired rule, when it has one.
    pub rule_prior: Option<f64>,
    pub specificity_bonus: f64,
}

/// Full audit breakdown of one score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreBreakdown {
    pub base: f64,
    pub lexical_bonus: f64,
    pub structural_bonus: f64,
    pub penalty: f64,
    pub penalty_ambiguity: f64,
    pub penalty_negation: f64,
    pub penalty_hedge: f64,
    pub raw: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule_prior: Option<f64>,
    pub object_cap_applied: bool,
    pub specificity_bonus: f64,
    pub finalc: f64,
}

fn bound01(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Score one event. Pure and deterministic: identical inputs and config give
/// bit-identical breakdowns.
pub fn score_event(inputs: &ScoreInputs, cfg: &ScoreConfig) -> ScoreBreakdown {
    let base = cfg.bucket_bases.base(inputs.bucket);
    let lexical_bonus = match inputs.path_kind {
        Some(PathKind::Full) => cfg.full_path_bonus,
        Some(PathKind::LemmaFallback) => cfg.lemma_fallback_bonus,
        None => 0.0,
    };
    let structural_bonus = if inputs.anchor_matched { cfg.anchor_bonus } else { 0.0 }
        + if inputs.object_evidence { cfg.object_bonus } else { 0.0 };

    let excess_syn = inputs.n_wordnet_synsets.saturating_sub(1) as f64;
    let excess_vn = inputs.n_verbnet_senses.saturating_sub(1) as f64;
    let penalty_ambiguity = (cfg.ambiguity_coef_synset * excess_syn
        + cfg.ambiguity_coef_verbnet * excess_vn)
        .min(cfg.ambiguity_penalty_max);
    let penalty_negation = if inputs.negated {
        if inputs.bucket == Bucket::IncidentCore {
            cfg.negation_penalty_core
        } else {
            cfg.negation_penalty_other
        }
    } else {
        0.0
    };
    let penalty_hedge = if inputs.hedged { cfg.hedge_penalty } else { 0.0 };
    let penalty = penalty_ambiguity + penalty_negation + penalty_hedge;

    let raw = base + lexical_bonus + structural_bonus - penalty;

    let mut evidence = bound01(raw);
    let object_cap_applied = inputs.object_evidence && evidence > cfg.object_cap;
    if inputs.object_evidence {
        evidence = evidence.min(cfg.object_cap);
    }

    let blended = match inputs.rule_prior {
        Some(prior) => cfg.alpha * prior + (1.0 - cfg.alpha) * evidence,
        None => evidence,
    };
    let finalc = bound01(blended + inputs.specificity_bonus);

    ScoreBreakdown {
        base,
        lexical_bonus,
        structural_bonus,
        penalty: round9(penalty),
        penalty_ambiguity: round9(penalty_ambiguity),
        penalty_negation,
        penalty_hedge,
        raw: round9(raw),
        rule_prior: inputs.rule_prior,
        object_cap_applied,
        specificity_bonus: inputs.specificity_bonus,
        finalc: round9(finalc),
    }
}

/// Fraction of events with confidence at or above the threshold. `None` when
/// the event set is empty.
pub fn high_conf_fraction(confidences: &[f64], tau: f64) -> Option<f64> {
    if confidences.is_empty() {
        return None;
    }
    let hits = confidences.iter().filter(|&&c| c >= tau).count();
    Some(hits as f64 / confidences.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ScoreConfig {
        ScoreConfig::from_json(include_str!("../assets/config/score_config.json"), "test")
            .unwrap()
    }

    fn kick_inputs() -> ScoreInputs {
        ScoreInputs {
            bucket: Bucket::IncidentCore,
            path_kind: Some(PathKind::Full),
            anchor_matched: true,
            object_evidence: true,
            negated: false,
            hedged: false,
            n_wordnet_synsets: 1,
            n_verbnet_senses: 1,
            rule_prior: Some(0.85),
            specificity_bonus: 0.03,
        }
    }

    #[test]
    fn kick_walkthrough_arithmetic() {
        let b = score_event(&kick_inputs(), &cfg());
        assert!((b.raw - 1.20).abs() < 1e-9);
        assert!(b.object_cap_applied);
        assert!((b.finalc - 0.919).abs() < 0.0005);
        // c_raw identity to 1e-9
        assert!((b.raw - (b.base + b.lexical_bonus + b.structural_bonus - b.penalty)).abs() < 1e-9);
    }

    #[test]
    fn raw_path_without_rule_bounds() {
        let inputs = ScoreInputs {
            bucket: Bucket::Uncertain,
            path_kind: Some(PathKind::LemmaFallback),
            anchor_matched: false,
            object_evidence: false,
            negated: false,
            hedged: false,
            n_wordnet_synsets: 1,
            n_verbnet_senses: 1,
            rule_prior: None,
            specificity_bonus: 0.0,
        };
        let b = score_event(&inputs, &cfg());
        assert!((b.raw - 0.40).abs() < 1e-9);
        assert!((b.finalc - 0.40).abs() < 1e-9);
    }

    #[test]
    fn raw_above_one_clamps_without_rule() {
        let inputs = ScoreInputs {
            bucket: Bucket::IncidentCore,
            path_kind: Some(PathKind::Full),
            anchor_matched: true,
            object_evidence: false,
            negated: false,
            hedged: false,
            n_wordnet_synsets: 1,
            n_verbnet_senses: 1,
            rule_prior: None,
            specificity_bonus: 0.0,
        };
        let b = score_event(&inputs, &cfg());
        assert!(b.raw > 1.0);
        assert_eq!(b.finalc, 1.0);
    }

    #[test]
    fn negation_never_raises_score() {
        let c = cfg();
        for bucket in [
            Bucket::IncidentCore,
            Bucket::PoliceAction,
            Bucket::ContextAdmin,
            Bucket::Uncertain,
        ] {
            let mut inputs = kick_inputs();
            inputs.bucket = bucket;
            let plain = score_event(&inputs, &c).finalc;
            inputs.negated = true;
            let negated = score_event(&inputs, &c).finalc;
            assert!(negated <= plain, "bucket {bucket:?}");
        }
    }

    #[test]
    fn full_path_never_below_fallback() {
        let c = cfg();
        let mut inputs = kick_inputs();
        inputs.object_evidence = false; // keep below the cap so paths differ
        inputs.rule_prior = None;
        inputs.n_wordnet_synsets = 30;
        inputs.n_verbnet_senses = 30;
        inputs.path_kind = Some(PathKind::LemmaFallback);
        let fallback = score_event(&inputs, &c).finalc;
        inputs.path_kind = Some(PathKind::Full);
        let full = score_event(&inputs, &c).finalc;
        assert!(full >= fallback);
    }

    #[test]
    fn blend_stays_between_prior_and_evidence() {
        let c = cfg();
        let mut inputs = kick_inputs();
        inputs.specificity_bonus = 0.0;
        let b = score_event(&inputs, &c);
        let evidence = 0.98; // capped
        let lo = b.rule_prior.unwrap().min(evidence);
        let hi = b.rule_prior.unwrap().max(evidence);
        assert!(b.finalc >= lo - 1e-12 && b.finalc <= hi + 1e-12);
    }

    #[test]
    fn high_conf_fraction_examples() {
        assert_eq!(high_conf_fraction(&[0.9, 0.7, 0.85, 0.5], 0.8), Some(0.5));
        assert_eq!(high_conf_fraction(&[0.8, 0.8], 0.8), Some(1.0));
        assert_eq!(high_conf_fraction(&[], 0.8), None);
    }

    #[test]
    fn out_of_range_config_rejected() {
        let mut raw: serde_json::Value =
            serde_json::from_str(include_str!("../assets/config/score_config.json")).unwrap();
        raw["alpha"] = serde_json::json!(1.5);
        let err = ScoreConfig::from_json(&raw.to_string(), "test").unwrap_err();
        assert!(matches!(err, ConfigError::Invalid { .. }));
    }

    #[test]
    fn breakdowns_bit_identical() {
        let a = score_event(&kick_inputs(), &cfg());
        let b = score_event(&kick_inputs(), &cfg());
        assert_eq!(a, b);
        assert_eq!(a.finalc.to_bits(), b.finalc.to_bits());
    }
}
