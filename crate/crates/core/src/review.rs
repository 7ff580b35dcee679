//! Human-review summarization: majority voting with the strict-majority
//! threshold t = floor(n/2) + 1, human-system agreement over clear cases,
//! and precision/recall/F1 against the human majority.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuestionKind {
    Single,
    Multi,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Question {
    pub id: String,
    pub title: String,
    pub kind: QuestionKind,
    pub options: Vec<String>,
    /// Options counted as the positive class when binarizing for P/R/F.
    #[serde(default)]
    pub binary_positive: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReviewQuestions {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub reviewers: usize,
    pub questions: Vec<Question>,
}

impl ReviewQuestions {
    pub fn from_json(json: &str, origin: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(json).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }
}

/// Strict-majority threshold `t = floor(n/2) + 1`.
pub fn majority_threshold(n: usize) -> usize {
    n / 2 + 1
}

/// Majority label of one question on one case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MajorityLabel {
    /// Single-choice: the most frequent option.
    Clear(String),
    /// Multi-choice: every option with at least t votes.
    ClearSet(BTreeSet<String>),
    /// Tie (single) or no option reaching t (multi).
    NotClear,
}

/// Single-choice majority: most frequent option, ties labeled not clear.
pub fn majority_label_single(votes: &[String]) -> MajorityLabel {
    if votes.is_empty() {
        return MajorityLabel::NotClear;
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for v in votes {
        *counts.entry(v.as_str()).or_insert(0) += 1;
    }
    let best = counts.values().max().copied().unwrap_or(0);
    let winners: Vec<&str> = counts
        .iter()
        .filter(|(_, &c)| c == best)
        .map(|(&o, _)| o)
        .collect();
    if winners.len() == 1 {
        MajorityLabel::Clear(winners[0].to_string())
    } else {
        MajorityLabel::NotClear
    }
}

/// Multi-choice majority: options with at least `t = floor(n/2) + 1` votes.
pub fn majority_label_multi(votes: &[BTreeSet<String>], n: usize) -> MajorityLabel {
    let t = majority_threshold(n);
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for set in votes {
        for option in set {
            *counts.entry(option.as_str()).or_insert(0) += 1;
        }
    }
    let included: BTreeSet<String> = counts
        .iter()
        .filter(|(_, &c)| c >= t)
        .map(|(&o, _)| o.to_string())
        .collect();
    if included.is_empty() {
        MajorityLabel::NotClear
    } else {
        MajorityLabel::ClearSet(included)
    }
}

/// Reviewer votes: (case, question) -> reviewer -> selected options.
pub type VoteTable = BTreeMap<(String, String), BTreeMap<String, Vec<String>>>;
/// System answers: (case, question) -> selected options.
pub type SystemTable = BTreeMap<(String, String), BTreeSet<String>>;

/// Parse `review_votes.csv`: case_id,question_id,reviewer_id,option.
/// Multi-choice selections repeat the row per option.
pub fn parse_votes_csv(content: &str) -> Result<VoteTable, String> {
    let mut table: VoteTable = BTreeMap::new();
    for (i, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.to_lowercase().starts_with("case_id")) {
            continue;
        }
        let parts: Vec<&str> = line.splitn(4, ',').collect();
        if parts.len() != 4 {
            return Err(format!("votes csv line {}: expected 4 fields", i + 1));
        }
        table
            .entry((parts[0].trim().to_string(), parts[1].trim().to_string()))
            .or_default()
            .entry(parts[2].trim().to_string())
            .or_default()
            .push(parts[3].trim().to_string());
    }
    Ok(table)
}

/// Parse `system_answers.csv`: case_id,question_id,option (rows repeat for
/// multi-choice answers).
pub fn parse_system_csv(content: &str) -> Result<SystemTable, String> {
    let mut table: SystemTable = BTreeMap::new();
    for (i, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.to_lowercase().starts_with("case_id")) {
            continue;
        }
        let parts: Vec<&str> = line.splitn(3, ',').collect();
        if parts.len() != 3 {
            return Err(format!("system csv line {}: expected 3 fields", i + 1));
        }
        table
            .entry((parts[0].trim().to_string(), parts[1].trim().to_string()))
            .or_default()
            .insert(parts[2].trim().to_string());
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrfReport {
    /// Binarizable clear-majority cases (option instances for multi-choice).
    pub cases: usize,
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
    pub precision_pct: Option<f64>,
    pub recall_pct: Option<f64>,
    pub f1_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionReport {
    pub question_id: String,
    pub title: String,
    pub human_clear_cases: usize,
    /// None renders as `--` (no clear case to compare against).
    pub agreement_pct: Option<f64>,
    pub not_clear_pct: f64,
    pub majority_support_pct: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prf: Option<PrfReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReviewReport {
    pub reviewers: usize,
    pub cases: Vec<String>,
    pub questions: Vec<QuestionReport>,
}

fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

/// Precision/recall/F1 from confusion counts; undefined components are
/// `None`. F1 is the harmonic mean of the rounded percentages.
pub fn prf_from_counts(tp: usize, fp: usize, fn_: usize, tn: usize, cases: usize) -> PrfReport {
    let precision = (tp + fp > 0).then(|| 100.0 * tp as f64 / (tp + fp) as f64);
    let recall = (tp + fn_ > 0).then(|| 100.0 * tp as f64 / (tp + fn_) as f64);
    let f1 = match (precision, recall) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        _ => None,
    };
    PrfReport {
        cases,
        tp,
        fp,
        fn_,
        tn,
        precision_pct: precision.map(round1),
        recall_pct: recall.map(round1),
        f1_pct: f1.map(round1),
    }
}

/// Score the whole review sheet.
///
/// Agreement is computed only over cases with a clear human majority; a
/// clear majority may itself be the literal `Not clear` option, which counts
/// for agreement but is excluded from binarized P/R/F. Multi-choice
/// agreement counts a match when the system set overlaps the human majority
/// set; multi-choice P/R/F expands options into binary instances (positive
/// at >= t votes, negative at <= n - t, skipped in between).
pub fn score_review(
    questions: &ReviewQuestions,
    votes: &VoteTable,
    system: &SystemTable,
) -> ReviewReport {
    let n = questions.reviewers;
    let t = majority_threshold(n);
    let mut case_ids: BTreeSet<String> = BTreeSet::new();
    for (case, _) in votes.keys() {
        case_ids.insert(case.clone());
    }
    let cases: Vec<String> = case_ids.into_iter().collect();

    let mut reports = Vec::new();
    for q in &questions.questions {
        let mut clear = 0usize;
        let mut not_clear = 0usize;
        let mut matches = 0usize;
        let (mut tp, mut fp, mut fn_, mut tn) = (0usize, 0usize, 0usize, 0usize);
        let mut binary_cases = 0usize;

        for case in &cases {
            let key = (case.clone(), q.id.clone());
            let Some(reviewer_votes) = votes.get(&key) else {
                continue;
            };
            let system_answer = system.get(&key);
            match q.kind {
                QuestionKind::Single => {
                    let flat: Vec<String> = reviewer_votes
                        .values()
                        .filter_map(|v| v.first().cloned())
                        .collect();
                    match majority_label_single(&flat) {
                        MajorityLabel::Clear(label) => {
                            clear += 1;
                            let answer = system_answer
                                .and_then(|s| s.iter().next().cloned())
                                .unwrap_or_default();
                            if answer == label {
                                matches += 1;
                            }
                            if let Some(positives) = &q.binary_positive {
                                if label != "Not clear" {
                                    binary_cases += 1;
                                    let human_pos = positives.contains(&label);
                                    let sys_pos = positives.contains(&answer);
                                    match (sys_pos, human_pos) {
                                        (true, true) => tp += 1,
                                        (true, false) => fp += 1,
                                        (false, true) => fn_ += 1,
                                        (false, false) => tn += 1,
                                    }
                                }
                            }
                        }
                        _ => not_clear += 1,
                    }
                }
                QuestionKind::Multi => {
                    let sets: Vec<BTreeSet<String>> = reviewer_votes
                        .values()
                        .map(|v| v.iter().cloned().collect())
                        .collect();
                    match majority_label_multi(&sets, n) {
                        MajorityLabel::ClearSet(majority) => {
                            clear += 1;
                            let empty = BTreeSet::new();
                            let answer = system_answer.unwrap_or(&empty);
                            if !answer.is_disjoint(&majority) {
                                matches += 1;
                            }
                            // per-option binary expansion over clear cases
                            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
                            for set in &sets {
                                for o in set {
                                    *counts.entry(o.as_str()).or_insert(0) += 1;
                                }
                            }
                            for option in &q.options {
                                let c = counts.get(option.as_str()).copied().unwrap_or(0);
                                let human = if c >= t {
                                    Some(true)
                                } else if c + t <= n {
                                    Some(false)
                                } else {
                                    None // ambiguous option, skipped
                                };
                                let Some(human_pos) = human else { continue };
                                let sys_pos = answer.contains(option);
                                match (sys_pos, human_pos) {
                                    (true, true) => tp += 1,
                                    (true, false) => fp += 1,
                                    (false, true) => fn_ += 1,
                                    (false, false) => tn += 1,
                                }
                            }
                            binary_cases += 1;
                        }
                        _ => not_clear += 1,
                    }
                }
            }
        }

        let answered = clear + not_clear;
        let use_prf = q.binary_positive.is_some() || q.kind == QuestionKind::Multi;
        reports.push(QuestionReport {
            question_id: q.id.clone(),
            title: q.title.clone(),
            human_clear_cases: clear,
            agreement_pct: (clear > 0).then(|| round1(100.0 * matches as f64 / clear as f64)),
            not_clear_pct: if answered == 0 {
                0.0
            } else {
                round1(100.0 * not_clear as f64 / answered as f64)
            },
            majority_support_pct: if answered == 0 {
                0.0
            } else {
                round1(100.0 * clear as f64 / answered as f64)
            },
            prf: (use_prf && (tp + fp + fn_ + tn > 0))
                .then(|| prf_from_counts(tp, fp, fn_, tn, binary_cases)),
        });
    }

    ReviewReport {
        reviewers: n,
        cases,
        questions: reports,
    }
}

/// Plain-text rendering of the review report.
pub fn review_text(report: &ReviewReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "Human review: {} reviewers, {} cases\n",
        report.reviewers,
        report.cases.len()
    ));
    out.push_str(&format!(
        "{:<28} {:>6} {:>10} {:>10}\n",
        "Question", "Clear", "Agreement", "NotClear%"
    ));
    for q in &report.questions {
        out.push_str(&format!(
            "{:<28} {:>6} {:>10} {:>9.1}%\n",
            format!("{} {}", q.question_id, q.title),
            q.human_clear_cases,
            q.agreement_pct
                .map(|a| format!("{a:.1}%"))
                .unwrap_or_else(|| "--".to_string()),
            q.not_clear_pct,
        ));
    }
    out.push_str("\nPrecision / recall / F1 over clear-majority cases:\n");
    for q in &report.questions {
        if let Some(prf) = &q.prf {
            let fmt = |v: Option<f64>| v.map(|x| format!("{x:.1}")).unwrap_or_else(|| "--".into());
            out.push_str(&format!(
                "{:<28} cases={} P={} R={} F1={}\n",
                format!("{} {}", q.question_id, q.title),
                prf.cases,
                fmt(prf.precision_pct),
                fmt(prf.recall_pct),
                fmt(prf.f1_pct),
            ));
        }
    }
    out
}
