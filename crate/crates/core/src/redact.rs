//! PII redaction with stable placeholders, an audit log that reverses
//! byte-for-byte, and pseudonym-role assignment.
//!
//! Detection is rule/dictionary/metadata based and fully deterministic.
//! Overlapping matches resolve longest-first, with ties broken by category
//! priority (PERSON > ADDRESS > ORG > GPE > LOC > DATE > PLATE > PHONE).
//! Shorthand tokens `V`/`S`/`W` (optionally digit-suffixed) are never
//! redacted and seed the pseudonym map.

use std::collections::{BTreeMap, BTreeSet};

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Placeholder taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Category {
    Person,
    Date,
    Org,
    Address,
    Gpe,
    Plate,
    Loc,
    Phone,
}

impl Category {
    pub const ALL: [Category; 8] = [
        Category::Person,
        Category::Date,
        Category::Org,
        Category::Address,
        Category::Gpe,
        Category::Plate,
        Category::Loc,
        Category::Phone,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Category::Person => "PERSON",
            Category::Date => "DATE",
            Category::Org => "ORG",
            Category::Address => "ADDRESS",
            Category::Gpe => "GPE",
            Category::Plate => "PLATE",
            Category::Loc => "LOC",
            Category::Phone => "PHONE",
        }
    }

    /// Tie-break priority for equal-length overlapping matches; lower wins.
    fn priority(self) -> u8 {
        match self {
            Category::Person => 0,
            Category::Address => 1,
            Category::Org => 2,
            Category::Gpe => 3,
            Category::Loc => 4,
            Category::Date => 5,
            Category::Plate => 6,
            Category::Phone => 7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchSource {
    Pattern,
    Dictionary,
    Metadata,
}

/// Loaded redaction rules.
#[derive(Debug)]
pub struct RedactionRuleSet {
    patterns: Vec<(Category, Regex)>,
    dictionary: Vec<(Category, Vec<String>)>,
    metadata_fields: Vec<(Category, String)>,
    /// metadata field -> role family (Victim, Suspect, Witness, Officer).
    role_hints: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RawRuleSet {
    #[serde(default)]
    patterns: Vec<RawPattern>,
    #[serde(default)]
    dictionary: Vec<RawDict>,
    #[serde(default)]
    metadata_fields: Vec<RawMeta>,
    #[serde(default)]
    role_hints: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RawPattern {
    category: Category,
    pattern: String,
}

#[derive(Deserialize)]
struct RawDict {
    category: Category,
    phrases: Vec<String>,
}

#[derive(Deserialize)]
struct RawMeta {
    category: Category,
    field: String,
}

impl RedactionRuleSet {
    pub fn from_json(json: &str, origin: &str) -> Result<Self, ConfigError> {
        let raw: RawRuleSet = serde_json::from_str(json).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })?;
        let mut patterns = Vec::new();
        for p in raw.patterns {
            let re = Regex::new(&p.pattern).map_err(|e| ConfigError::Invalid {
                field: format!("{origin}: pattern for {}", p.category.label()),
                message: e.to_string(),
            })?;
            patterns.push((p.category, re));
        }
        Ok(RedactionRuleSet {
            patterns,
            dictionary: raw.dictionary.into_iter().map(|d| (d.category, d.phrases)).collect(),
            metadata_fields: raw
                .metadata_fields
                .into_iter()
                .map(|m| (m.category, m.field))
                .collect(),
            role_hints: raw.role_hints,
        })
    }
}

/// One recorded substitution. Spans are byte offsets into the original
/// (pre-redaction) text; `original_text` makes the audit reversible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub category: Category,
    pub placeholder_label: String,
    pub original_span_start: usize,
    pub original_span_end: usize,
    pub original_text: String,
    pub source: MatchSource,
}

/// Audit log for one case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedactionAudit {
    pub case_id: String,
    pub substitutions: Vec<Substitution>,
    /// placeholder label or shorthand token -> pseudonym (`Victim_1`, ...).
    pub pseudonym_map: BTreeMap<String, String>,
}

/// Redacted text plus sentence spans (byte offsets into `text`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedactedNarrative {
    pub case_id: String,
    pub text: String,
    pub sentences: Vec<(usize, usize)>,
}

impl RedactedNarrative {
    pub fn sentence_text(&self, index: usize) -> Option<&str> {
        self.sentences
            .get(index)
            .map(|&(s, e)| &self.text[s..e])
    }
}

const ABBREVIATIONS: [&str; 16] = [
    "mr", "mrs", "ms", "dr", "lt", "sgt", "det", "ofc", "jr", "sr", "st", "ave", "rd", "blvd",
    "approx", "no",
];

/// OCR character fixes plus sentence-case normalization for uppercase-only
/// narratives. `|` becomes `I`; placeholders and `V`/`S`/`W` shorthand keep
/// their case. Mixed-case input passes through with only the character fixes.
pub fn normalize_ocr(text: &str) -> String {
    let fixed = text.replace('|', "I");
    let has_lower = fixed.chars().any(|c| c.is_lowercase());
    let has_alpha = fixed.chars().any(|c| c.is_alphabetic());
    if has_lower || !has_alpha {
        return fixed;
    }
    sentence_case(&fixed)
}

fn placeholder_re() -> &'static Regex {
    static RE: std::sync::OnceLock<Regex> = std::sync::OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\[[A-Z]+_\d+\]").unwrap())
}

fn shorthand_re() -> &'static Regex {
    static RE: std::sync::OnceLock<Regex> = std::sync::OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\b([VSW])(\d*)\b").unwrap())
}

fn protected_spans(text: &str) -> Vec<(usize, usize)> {
    let mut spans: Vec<(usize, usize)> = placeholder_re()
        .find_iter(text)
        .chain(shorthand_re().find_iter(text))
        .map(|m| (m.start(), m.end()))
        .collect();
    spans.sort_unstable();
    spans
}

fn in_spans(spans: &[(usize, usize)], pos: usize) -> bool {
    spans.iter().any(|&(s, e)| pos >= s && pos < e)
}

fn sentence_case(upper: &str) -> String {
    let spans = split_sentences(upper);
    let sentence_starts: BTreeSet<usize> = spans
        .iter()
        .filter_map(|&(s, e)| {
            upper[s..e]
                .char_indices()
                .find(|(_, c)| c.is_alphabetic())
                .map(|(i, _)| s + i)
        })
        .collect();
    let keep = protected_spans(upper);
    let mut out = String::with_capacity(upper.len());
    for (i, c) in upper.char_indices() {
        if in_spans(&keep, i) || sentence_starts.contains(&i) {
            out.push(c);
        } else {
            out.extend(c.to_lowercase());
        }
    }
    out
}

/// Split redacted text into sentence spans. Boundaries are terminal
/// punctuation (`.` `!` `?`) followed by whitespace and a capital letter or a
/// placeholder, with an abbreviation exception list. Placeholders are never
/// split.
pub fn split_sentences(text: &str) -> Vec<(usize, usize)> {
    let bytes = text.as_bytes();
    let mut boundaries = Vec::new();
    let mut depth = 0usize; // bracket depth, placeholders stay whole
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'[' => depth += 1,
            b']' => depth = depth.saturating_sub(1),
            // placeholders never contain whitespace; a stray `[` must not
            // disable splitting for the rest of the text
            b' ' | b'\n' | b'\t' => depth = 0,
            b'.' | b'!' | b'?' if depth == 0 => {
                if bytes[i] == b'.' && is_abbreviation(text, i) {
                    i += 1;
                    continue;
                }
                // consume any run of closing punctuation
                let mut j = i + 1;
                while j < bytes.len() && matches!(bytes[j], b'.' | b'!' | b'?' | b'"' | b')') {
                    j += 1;
                }
                let mut k = j;
                while k < bytes.len() && (bytes[k] as char).is_whitespace() {
                    k += 1;
                }
                if k > j && k < bytes.len() {
                    let next = text[k..].chars().next().unwrap();
                    if next.is_uppercase() || next == '[' || next.is_ascii_digit() {
                        boundaries.push((j, k));
                    }
                }
                i = j;
                continue;
            }
            _ => {}
        }
        i += 1;
    }

    let mut spans = Vec::new();
    let mut start = 0;
    for (end, next_start) in boundaries {
        push_trimmed(text, start, end, &mut spans);
        start = next_start;
    }
    push_trimmed(text, start, text.len(), &mut spans);
    spans
}

fn push_trimmed(text: &str, start: usize, end: usize, spans: &mut Vec<(usize, usize)>) {
    let slice = &text[start..end];
    let lead = slice.len() - slice.trim_start().len();
    let trail = slice.len() - slice.trim_end().len();
    let (s, e) = (start + lead, end - trail);
    if s < e {
        spans.push((s, e));
    }
}

fn is_abbreviation(text: &str, dot: usize) -> bool {
    let before = &text[..dot];
    let word: String = before
        .chars()
        .rev()
        .take_while(|c| c.is_ascii_alphanumeric())
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    if word.is_empty() {
        return false;
    }
    // single-letter initials ("John Q. Public"), but V/S/W shorthand may
    // legitimately end a sentence
    if word.len() == 1 {
        let c = word.chars().next().unwrap();
        return c.is_alphabetic() && !matches!(c, 'V' | 'S' | 'W');
    }
    ABBREVIATIONS.contains(&word.to_ascii_lowercase().as_str())
}

#[derive(Debug, Clone)]
struct Candidate {
    category: Category,
    start: usize,
    end: usize,
    source: MatchSource,
}

fn word_bounded(text: &str, start: usize, end: usize) -> bool {
    let before_ok = start == 0
        || !text[..start]
            .chars()
            .next_back()
            .map(|c| c.is_alphanumeric())
            .unwrap_or(false);
    let after_ok = end == text.len()
        || !text[end..]
            .chars()
            .next()
            .map(|c| c.is_alphanumeric())
            .unwrap_or(false);
    before_ok && after_ok
}

fn find_ci(text: &str, needle: &str, out: &mut Vec<(usize, usize)>) {
    if needle.len() < 2 {
        return;
    }
    let hay = text.to_ascii_lowercase();
    let needle = needle.to_ascii_lowercase();
    let mut from = 0;
    while let Some(pos) = hay[from..].find(&needle) {
        let (s, e) = (from + pos, from + pos + needle.len());
        if word_bounded(text, s, e) {
            out.push((s, e));
        }
        from = s + 1;
    }
}

/// Redact one narrative. Returns the redacted text with sentence spans and
/// the audit log (substitutions in ascending span order plus the pseudonym
/// map).
pub fn redact(
    case_id: &str,
    text: &str,
    metadata: &BTreeMap<String, String>,
    rules: &RedactionRuleSet,
) -> (RedactedNarrative, RedactionAudit) {
    let shielded = protected_spans(text);
    let mut candidates = Vec::new();

    for (cat, re) in &rules.patterns {
        for m in re.find_iter(text) {
            candidates.push(Candidate {
                category: *cat,
                start: m.start(),
                end: m.end(),
                source: MatchSource::Pattern,
            });
        }
    }
    for (cat, phrases) in &rules.dictionary {
        for phrase in phrases {
            let mut hits = Vec::new();
            find_ci(text, phrase, &mut hits);
            for (s, e) in hits {
                candidates.push(Candidate {
                    category: *cat,
                    start: s,
                    end: e,
                    source: MatchSource::Dictionary,
                });
            }
        }
    }
    for (cat, field) in &rules.metadata_fields {
        if let Some(value) = metadata.get(field) {
            let mut hits = Vec::new();
            find_ci(text, value.trim(), &mut hits);
            for (s, e) in hits {
                candidates.push(Candidate {
                    category: *cat,
                    start: s,
                    end: e,
                    source: MatchSource::Metadata,
                });
            }
        }
    }

    candidates.retain(|c| {
        !shielded
            .iter()
            .any(|&(s, e)| c.start < e && s < c.end)
    });
    // longest match wins, ties by category priority, then source stability
    candidates.sort_by(|a, b| {
        a.start
            .cmp(&b.start)
            .then(b.end.cmp(&a.end))
            .then(a.category.priority().cmp(&b.category.priority()))
    });
    let mut accepted: Vec<Candidate> = Vec::new();
    for c in candidates {
        if accepted
            .iter()
            .all(|a| c.start >= a.end || c.end <= a.start)
        {
            accepted.push(c);
        }
    }
    accepted.sort_by_key(|c| c.start);

    // stable labels: same surface + category => same label, in order of
    // first appearance per category
    let mut counters: BTreeMap<Category, usize> = BTreeMap::new();
    let mut labels: BTreeMap<(Category, String), String> = BTreeMap::new();
    let mut substitutions = Vec::new();
    let mut redacted = String::with_capacity(text.len());
    let mut cursor = 0;
    for c in &accepted {
        let surface = &text[c.start..c.end];
        let key = (c.category, surface.to_ascii_lowercase());
        let label = labels
            .entry(key)
            .or_insert_with(|| {
                let n = counters.entry(c.category).or_insert(0);
                *n += 1;
                format!("[{}_{}]", c.category.label(), n)
            })
            .clone();
        redacted.push_str(&text[cursor..c.start]);
        redacted.push_str(&label);
        cursor = c.end;
        substitutions.push(Substitution {
            category: c.category,
            placeholder_label: label,
            original_span_start: c.start,
            original_span_end: c.end,
            original_text: surface.to_string(),
            source: c.source,
        });
    }
    redacted.push_str(&text[cursor..]);

    let pseudonym_map = build_pseudonyms(&redacted, metadata, rules, &substitutions);
    let sentences = split_sentences(&redacted);

    (
        RedactedNarrative {
            case_id: case_id.to_string(),
            text: redacted,
            sentences,
        },
        RedactionAudit {
            case_id: case_id.to_string(),
            substitutions,
            pseudonym_map,
        },
    )
}

fn build_pseudonyms(
    redacted: &str,
    metadata: &BTreeMap<String, String>,
    rules: &RedactionRuleSet,
    substitutions: &[Substitution],
) -> BTreeMap<String, String> {
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    let mut family_counts: BTreeMap<String, usize> = BTreeMap::new();
    let assign = |map: &mut BTreeMap<String, String>,
                      counts: &mut BTreeMap<String, usize>,
                      key: &str,
                      family: &str,
                      number: Option<usize>| {
        if map.contains_key(key) {
            return;
        }
        let role = match (family, number) {
            ("Officer", _) => "Officer".to_string(),
            ("Suspect_Unknown", n) | ("Victim", n) | ("Witness", n) | ("Suspect", n)
            | ("Unknown_Person", n) => {
                let n = n.unwrap_or_else(|| {
                    let c = counts.entry(family.to_string()).or_insert(0);
                    *c += 1;
                    *c
                });
                counts
                    .entry(family.to_string())
                    .and_modify(|c| *c = (*c).max(n))
                    .or_insert(n);
                format!("{family}_{n}")
            }
            (other, _) => other.to_string(),
        };
        map.insert(key.to_string(), role);
    };

    // metadata role hints bind the person placeholder for that field's value
    for (field, family) in &rules.role_hints {
        if let Some(value) = metadata.get(field) {
            let wanted = value.trim().to_ascii_lowercase();
            if let Some(sub) = substitutions
                .iter()
                .find(|s| s.original_text.to_ascii_lowercase() == wanted)
            {
                assign(&mut map, &mut family_counts, &sub.placeholder_label, family, None);
            }
        }
    }

    // shorthand tokens in the redacted text: V/S/W with optional digit
    for cap in shorthand_re().captures_iter(redacted) {
        let token = cap.get(0).unwrap().as_str();
        let family = match &cap[1] {
            "V" => "Victim",
            "S" => "Suspect_Unknown",
            _ => "Witness",
        };
        let number = if cap[2].is_empty() {
            Some(1)
        } else {
            cap[2].parse::<usize>().ok()
        };
        assign(&mut map, &mut family_counts, token, family, number);
    }

    // first-person mentions refer to the reporting officer
    assign(&mut map, &mut family_counts, "I", "Officer", None);

    // shorthand adjacent to a placeholder refines that placeholder's role
    let tokens: Vec<&str> = redacted.split_whitespace().collect();
    for (i, tok) in tokens.iter().enumerate() {
        if let Some(label) = extract_placeholder(tok) {
            if map.contains_key(&label) {
                continue;
            }
            let window = &tokens[i.saturating_sub(2)..(i + 3).min(tokens.len())];
            for tok in window {
                let neighbor = tok.trim_matches(|c: char| !c.is_ascii_alphanumeric());
                if let Some(role) = map.get(neighbor).cloned() {
                    if neighbor.starts_with(['V', 'S', 'W']) && neighbor.len() <= 3 {
                        map.insert(label.clone(), role);
                        break;
                    }
                }
            }
        }
    }

    // everything else is an unresolved person
    for sub in substitutions {
        if sub.category == Category::Person && !map.contains_key(&sub.placeholder_label) {
            assign(
                &mut map,
                &mut family_counts,
                &sub.placeholder_label,
                "Unknown_Person",
                None,
            );
        }
    }
    map
}

fn extract_placeholder(token: &str) -> Option<String> {
    let start = token.find('[')?;
    let end = token[start..].find(']')? + start + 1;
    let inner = &token[start..end];
    let m = placeholder_re().find(inner)?;
    (m.start() == 0 && m.end() == inner.len()).then(|| inner.to_string())
}

/// Rebuild the original text from the redacted text and the audit log.
/// Walks substitutions in span order, verifying each placeholder as it goes.
pub fn reverse_redaction(redacted: &str, audit: &RedactionAudit) -> Result<String, String> {
    let mut original = String::new();
    let mut red_cursor = 0usize;
    let mut orig_cursor = 0usize;
    for sub in &audit.substitutions {
        if sub.original_span_start < orig_cursor {
            return Err(format!(
                "audit spans out of order at {}",
                sub.original_span_start
            ));
        }
        let gap = sub.original_span_start - orig_cursor;
        let label_len = sub.placeholder_label.len();
        if red_cursor + gap + label_len > redacted.len() {
            return Err(format!(
                "audit does not fit the redacted text (needed {} bytes at {red_cursor})",
                gap + label_len
            ));
        }
        original.push_str(&redacted[red_cursor..red_cursor + gap]);
        red_cursor += gap;
        let found = &redacted[red_cursor..red_cursor + label_len];
        if found != sub.placeholder_label {
            return Err(format!(
                "audit mismatch at byte {red_cursor}: expected {}, found {found}",
                sub.placeholder_label
            ));
        }
        original.push_str(&sub.original_text);
        red_cursor += label_len;
        orig_cursor = sub.original_span_end;
    }
    original.push_str(&redacted[red_cursor..]);
    Ok(original)
}

/// Per-category totals and averages across a corpus of audit logs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditSummary {
    pub reports: usize,
    pub rows: Vec<AuditSummaryRow>,
    pub grand_total: usize,
    pub grand_avg_per_report: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditSummaryRow {
    pub category: Category,
    pub total: usize,
    pub avg_per_report: f64,
}

pub fn audit_summary(audits: &[RedactionAudit]) -> AuditSummary {
    let n = audits.len();
    let mut totals: BTreeMap<Category, usize> = BTreeMap::new();
    for audit in audits {
        for sub in &audit.substitutions {
            *totals.entry(sub.category).or_insert(0) += 1;
        }
    }
    let rows: Vec<AuditSummaryRow> = Category::ALL
        .iter()
        .map(|&category| {
            let total = totals.get(&category).copied().unwrap_or(0);
            AuditSummaryRow {
                category,
                total,
                avg_per_report: if n == 0 { 0.0 } else { total as f64 / n as f64 },
            }
        })
        .collect();
    let grand_total: usize = rows.iter().map(|r| r.total).sum();
    AuditSummary {
        reports: n,
        rows,
        grand_total,
        grand_avg_per_report: if n == 0 {
            0.0
        } else {
            grand_total as f64 / n as f64
        },
    }
}

/// Plain-text table of the audit summary: per-category totals and averages
/// with a grand total row.
pub fn audit_summary_text(summary: &AuditSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "Redaction summary over {} report(s)\n",
        summary.reports
    ));
    out.push_str(&format!(
        "{:<10} {:>8} {:>12}\n",
        "Type", "Total", "Avg./report"
    ));
    for row in &summary.rows {
        out.push_str(&format!(
            "{:<10} {:>8} {:>12.2}\n",
            row.category.label(),
            row.total,
            row.avg_per_report
        ));
    }
    out.push_str(&format!(
        "{:<10} {:>8} {:>12.2}\n",
        "Total", summary.grand_total, summary.grand_avg_per_report
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules() -> RedactionRuleSet {
        RedactionRuleSet::from_json(
            include_str!("../assets/config/redaction_rules.json"),
            "test",
        )
        .unwrap()
    }

    fn meta(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn ocr_fix_and_sentence_case() {
        assert_eq!(normalize_ocr("THE V|CTIM CALLED"), "The victim called");
        assert_eq!(normalize_ocr(""), "");
        let mixed = "The victim called. Nothing happened.";
        assert_eq!(normalize_ocr(mixed), mixed);
    }

    #[test]
    fn sentence_case_keeps_placeholders_and_shorthand() {
        let s = normalize_ocr("[PERSON_1] SPOKE WITH V. THEN S FLED.");
        assert_eq!(s, "[PERSON_1] spoke with V. Then S fled.");
    }

    #[test]
    fn ocr_reference_equivalence() {
        // character-level reference: | -> I, then lowercase everything except
        // sentence-initial letters and shorthand, on an uppercase-only input
        let input = "S1 BROKE THE W|NDOW. THE WALLET WAS GONE.";
        let got = normalize_ocr(input);
        assert_eq!(got, "S1 broke the window. The wallet was gone.");
    }

    #[test]
    fn metadata_name_redacts_with_stable_label() {
        let text = "John Doe broke the window and took a wallet. John Doe fled.";
        let (narrative, audit) = redact(
            "C-1",
            text,
            &meta(&[("suspect_name", "John Doe")]),
            &rules(),
        );
        assert_eq!(
            narrative.text,
            "[PERSON_1] broke the window and took a wallet. [PERSON_1] fled."
        );
        assert_eq!(audit.substitutions.len(), 2);
        assert!(audit
            .substitutions
            .iter()
            .all(|s| s.placeholder_label == "[PERSON_1]"));
        assert_eq!(audit.pseudonym_map["[PERSON_1]"], "Suspect_1");
    }

    #[test]
    fn no_pii_is_identity() {
        let text = "The window was broken.";
        let (narrative, audit) = redact("C-1", text, &BTreeMap::new(), &rules());
        assert_eq!(narrative.text, text);
        assert!(audit.substitutions.is_empty());
    }

    #[test]
    fn shorthand_tokens_untouched_and_mapped() {
        let text = "V stated that S1 and S2 fled toward Rochester.";
        let (narrative, audit) = redact("C-1", text, &BTreeMap::new(), &rules());
        assert!(narrative.text.starts_with("V stated that S1 and S2"));
        assert_eq!(audit.pseudonym_map["V"], "Victim_1");
        assert_eq!(audit.pseudonym_map["S1"], "Suspect_Unknown_1");
        assert_eq!(audit.pseudonym_map["S2"], "Suspect_Unknown_2");
        assert_eq!(audit.pseudonym_map["I"], "Officer");
        assert_eq!(audit.substitutions.len(), 1); // Rochester
        assert_eq!(audit.substitutions[0].category, Category::Gpe);
    }

    #[test]
    fn overlap_longest_wins() {
        // the address contains a capitalized word; the full address pattern
        // must win over any shorter overlapping match
        let text = "Burglary at 123 Main Street on 04/12/2024.";
        let (narrative, audit) = redact("C-1", text, &BTreeMap::new(), &rules());
        assert_eq!(narrative.text, "Burglary at [ADDRESS_1] on [DATE_1].");
        assert_eq!(audit.substitutions.len(), 2);
        let starts: Vec<usize> = audit
            .substitutions
            .iter()
            .map(|s| s.original_span_start)
            .collect();
        assert!(starts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn redaction_is_idempotent() {
        let text = "John Doe met Jane Roe near the Genesee River on 04/12/2024.";
        let m = meta(&[("victim_name", "Jane Roe"), ("suspect_name", "John Doe")]);
        let (first, audit1) = redact("C-1", text, &m, &rules());
        let (second, audit2) = redact("C-1", &first.text, &m, &rules());
        assert_eq!(first.text, second.text);
        assert!(audit2.substitutions.is_empty());
        assert_eq!(audit1.substitutions.len(), 4);
    }

    #[test]
    fn reversal_is_byte_exact() {
        let text = "On 04/12/2024 John Doe entered 45 Oak Avenue in Rochester. John Doe fled.";
        let m = meta(&[("suspect_name", "John Doe")]);
        let (narrative, audit) = redact("C-1", text, &m, &rules());
        assert_ne!(narrative.text, text);
        let back = reverse_redaction(&narrative.text, &audit).unwrap();
        assert_eq!(back, text);
    }

    #[test]
    fn split_sentences_basic_and_abbrev() {
        let spans = split_sentences("A happened. Then B happened.");
        assert_eq!(spans.len(), 2);
        let spans = split_sentences("The victim, Mr. [PERSON_1], called.");
        assert_eq!(spans.len(), 1);
        assert!(split_sentences("").is_empty());
    }

    #[test]
    fn stray_bracket_does_not_disable_splitting() {
        let spans = split_sentences("He wore a [sic badge. Then he left.");
        assert_eq!(spans.len(), 2);
    }

    #[test]
    fn reversal_rejects_mismatched_audit() {
        let text = "John Doe fled.";
        let (narrative, mut audit) =
            redact("C-1", text, &meta(&[("suspect_name", "John Doe")]), &rules());
        audit.substitutions[0].placeholder_label = "[PERSON_9]".into();
        assert!(reverse_redaction(&narrative.text, &audit).is_err());
        audit.substitutions[0].placeholder_label = "[PERSON_1]".into();
        audit.substitutions[0].original_span_start = 9999;
        assert!(reverse_redaction(&narrative.text, &audit).is_err());
    }

    #[test]
    fn split_never_breaks_placeholders() {
        let text = "[PERSON_1] called. [PERSON_2] answered.";
        let spans = split_sentences(text);
        assert_eq!(spans.len(), 2);
        for (s, e) in spans {
            let sentence = &text[s..e];
            assert_eq!(
                sentence.matches('[').count(),
                sentence.matches(']').count()
            );
        }
    }

    #[test]
    fn audit_summary_arithmetic() {
        let a1 = RedactionAudit {
            case_id: "C-1".into(),
            substitutions: (0..3)
                .map(|i| Substitution {
                    category: Category::Person,
                    placeholder_label: format!("[PERSON_{}]", i + 1),
                    original_span_start: i * 10,
                    original_span_end: i * 10 + 4,
                    original_text: "name".into(),
                    source: MatchSource::Metadata,
                })
                .collect(),
            pseudonym_map: BTreeMap::new(),
        };
        let mut a2 = a1.clone();
        a2.substitutions.truncate(1);
        let summary = audit_summary(&[a1, a2]);
        let person = summary
            .rows
            .iter()
            .find(|r| r.category == Category::Person)
            .unwrap();
        assert_eq!(person.total, 4);
        assert_eq!(person.avg_per_report, 2.0);
        assert_eq!(summary.grand_total, 4);
        let empty = audit_summary(&[]);
        assert_eq!(empty.grand_total, 0);
    }
}
