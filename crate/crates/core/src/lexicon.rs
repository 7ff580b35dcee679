//! Lexical knowledge: PropBank senses, SemLink sense-to-VerbNet mappings, and
//! WordNet synsets with hypernym traversal.
//!
//! Data loads from either the bundled TSV snapshot (shipped under
//! `assets/lexicon/`, sufficient for all tests) or a native WordNet 3.0
//! database directory (`data.noun`/`data.verb`) for full installs. Loading is
//! deterministic: identical files produce identical in-memory tables.
//!
//! Grounding follows the PropBank -> VerbNet -> WordNet path when SemLink
//! covers the sense, and falls back to lemma-level WordNet retrieval
//! otherwise; the taken path is recorded for the coverage metric.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{LexiconError, UnknownPredicate};

/// A PropBank predicate sense, e.g. `steal.01`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateSense {
    pub lemma: String,
    pub sense_id: String,
    pub roleset: Vec<String>,
}

/// How a predicate was grounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Full,
    LemmaFallback,
}

/// The semantic grounding of one predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticPath {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sense: Option<PredicateSense>,
    pub verbnet_classes: Vec<String>,
    pub wordnet_synsets: Vec<String>,
    pub path_kind: PathKind,
}

/// A WordNet synset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Synset {
    pub id: String,
    pub lemmas: Vec<String>,
    pub pos: char,
    pub hypernyms: Vec<String>,
}

/// Immutable lexical tables plus the configured type anchors.
#[derive(Debug, Default)]
pub struct Lexicon {
    synsets: BTreeMap<String, Synset>,
    /// lemma -> synset ids, insertion-ordered per file order.
    lemma_index: BTreeMap<String, Vec<String>>,
    /// PropBank sense (`steal.01`) -> VerbNet class ids.
    semlink: BTreeMap<String, Vec<String>>,
    /// PropBank sense -> core argument labels.
    propbank: BTreeMap<String, Vec<String>>,
    /// type tag -> anchor synset ids.
    type_anchors: BTreeMap<String, Vec<String>>,
}

fn strip_comment(line: &str) -> Option<&str> {
    let t = line.trim_end();
    if t.is_empty() || t.starts_with('#') {
        None
    } else {
        Some(t)
    }
}

impl Lexicon {
    /// Load the bundled snapshot from TSV text already in memory.
    pub fn from_snapshot_text(
        synsets_tsv: &str,
        hypernyms_tsv: &str,
        semlink_tsv: &str,
        propbank_tsv: &str,
    ) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::default();
        for (i, line) in synsets_tsv.lines().enumerate() {
            let Some(line) = strip_comment(line) else { continue };
            let mut parts = line.split('\t');
            let (id, lemmas, pos) = (parts.next(), parts.next(), parts.next());
            match (id, lemmas, pos) {
                (Some(id), Some(lemmas), Some(pos)) if !pos.is_empty() => {
                    let lemmas: Vec<String> = lemmas
                        .split('|')
                        .map(|l| l.replace('_', " "))
                        .collect();
                    lex.insert_synset(Synset {
                        id: id.to_string(),
                        lemmas,
                        pos: pos.chars().next().unwrap(),
                        hypernyms: Vec::new(),
                    });
                }
                _ => {
                    return Err(LexiconError::Malformed {
                        file: "synsets.tsv".into(),
                        line: i + 1,
                        message: "expected id<TAB>lemmas<TAB>pos".into(),
                    })
                }
            }
        }
        for (i, line) in hypernyms_tsv.lines().enumerate() {
            let Some(line) = strip_comment(line) else { continue };
            let mut parts = line.split('\t');
            match (parts.next(), parts.next()) {
                (Some(child), Some(parent)) => {
                    let child = child.to_string();
                    let parent = parent.to_string();
                    match lex.synsets.get_mut(&child) {
                        Some(s) => s.hypernyms.push(parent),
                        None => {
                            return Err(LexiconError::Malformed {
                                file: "hypernyms.tsv".into(),
                                line: i + 1,
                                message: format!("unknown child synset `{child}`"),
                            })
                        }
                    }
                }
                _ => {
                    return Err(LexiconError::Malformed {
                        file: "hypernyms.tsv".into(),
                        line: i + 1,
                        message: "expected child<TAB>parent".into(),
                    })
                }
            }
        }
        for (i, line) in semlink_tsv.lines().enumerate() {
            let Some(line) = strip_comment(line) else { continue };
            let mut parts = line.split('\t');
            match (parts.next(), parts.next()) {
                (Some(sense), Some(class)) => lex
                    .semlink
                    .entry(sense.to_string())
                    .or_default()
                    .push(class.to_string()),
                _ => {
                    return Err(LexiconError::Malformed {
                        file: "semlink.tsv".into(),
                        line: i + 1,
                        message: "expected pb_sense<TAB>vn_class".into(),
                    })
                }
            }
        }
        for (i, line) in propbank_tsv.lines().enumerate() {
            let Some(line) = strip_comment(line) else { continue };
            let mut parts = line.split('\t');
            match (parts.next(), parts.next()) {
                (Some(sense), Some(args)) => {
                    lex.propbank.insert(
                        sense.to_string(),
                        args.split(',').map(str::to_string).collect(),
                    );
                }
                _ => {
                    return Err(LexiconError::Malformed {
                        file: "propbank.tsv".into(),
                        line: i + 1,
                        message: "expected sense<TAB>arg_labels".into(),
                    })
                }
            }
        }
        lex.check_acyclic()?;
        Ok(lex)
    }

    /// Load the snapshot TSVs from a directory on disk.
    pub fn from_snapshot_dir(dir: &Path) -> Result<Self, LexiconError> {
        let read = |name: &str| -> Result<String, LexiconError> {
            std::fs::read_to_string(dir.join(name)).map_err(|e| LexiconError::Io {
                path: dir.join(name).display().to_string(),
                source: e,
            })
        };
        Self::from_snapshot_text(
            &read("synsets.tsv")?,
            &read("hypernyms.tsv")?,
            &read("semlink.tsv")?,
            &read("propbank.tsv")?,
        )
    }

    /// Load synsets and hypernyms from native WordNet 3.0 database files
    /// (`data.noun`, `data.verb`). Synset ids are offset-based (`n04587648`).
    /// SemLink/PropBank tables stay empty unless merged from TSVs.
    pub fn from_wordnet_db(dir: &Path) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::default();
        for (file, pos) in [("data.noun", 'n'), ("data.verb", 'v')] {
            let path = dir.join(file);
            if !path.exists() {
                continue;
            }
            let content = std::fs::read_to_string(&path).map_err(|e| LexiconError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            for (i, line) in content.lines().enumerate() {
                if line.starts_with("  ") || line.trim().is_empty() {
                    continue; // license header lines
                }
                let data = line.split('|').next().unwrap_or(line);
                let fields: Vec<&str> = data.split_whitespace().collect();
                if fields.len() < 4 {
                    return Err(LexiconError::Malformed {
                        file: file.into(),
                        line: i + 1,
                        message: "short data line".into(),
                    });
                }
                let offset = fields[0];
                let w_cnt = usize::from_str_radix(fields[3], 16).map_err(|_| {
                    LexiconError::Malformed {
                        file: file.into(),
                        line: i + 1,
                        message: format!("bad word count `{}`", fields[3]),
                    }
                })?;
                let mut lemmas = Vec::with_capacity(w_cnt);
                let mut idx = 4;
                for _ in 0..w_cnt {
                    lemmas.push(fields[idx].replace('_', " ").to_lowercase());
                    idx += 2; // skip lex_id
                }
                let p_cnt: usize = fields[idx].parse().map_err(|_| LexiconError::Malformed {
                    file: file.into(),
                    line: i + 1,
                    message: "bad pointer count".into(),
                })?;
                idx += 1;
                let mut hypernyms = Vec::new();
                for _ in 0..p_cnt {
                    let symbol = fields[idx];
                    let tgt_offset = fields[idx + 1];
                    let tgt_pos = fields[idx + 2];
                    if symbol == "@" || symbol == "@i" {
                        hypernyms.push(format!("{tgt_pos}{tgt_offset}"));
                    }
                    idx += 4;
                }
                lex.insert_synset(Synset {
                    id: format!("{pos}{offset}"),
                    lemmas,
                    pos,
                    hypernyms,
                });
            }
        }
        lex.check_acyclic()?;
        Ok(lex)
    }

    fn insert_synset(&mut self, s: Synset) {
        for lemma in &s.lemmas {
            self.lemma_index
                .entry(lemma.clone())
                .or_default()
                .push(s.id.clone());
        }
        self.synsets.insert(s.id.clone(), s);
    }

    /// Attach type anchors (tag -> synset ids).
    pub fn with_type_anchors(mut self, anchors: BTreeMap<String, Vec<String>>) -> Self {
        self.type_anchors = anchors;
        self
    }

    pub fn type_tags(&self) -> impl Iterator<Item = &str> {
        self.type_anchors.keys().map(String::as_str)
    }

    fn check_acyclic(&self) -> Result<(), LexiconError> {
        // colors: 0 unvisited, 1 on stack, 2 done
        let mut color: BTreeMap<&str, u8> = BTreeMap::new();
        for id in self.synsets.keys() {
            if color.get(id.as_str()).copied().unwrap_or(0) != 0 {
                continue;
            }
            let mut stack: Vec<(&str, usize)> = vec![(id.as_str(), 0)];
            color.insert(id.as_str(), 1);
            while let Some(&(v, i)) = stack.last() {
                let parents = self.synsets.get(v).map(|s| &s.hypernyms);
                match parents.and_then(|p| p.get(i)) {
                    Some(p) => {
                        stack.last_mut().unwrap().1 += 1;
                        match color.get(p.as_str()).copied().unwrap_or(0) {
                            0 => {
                                color.insert(p.as_str(), 1);
                                stack.push((p.as_str(), 0));
                            }
                            1 => return Err(LexiconError::HypernymCycle(p.clone())),
                            _ => {}
                        }
                    }
                    None => {
                        color.insert(v, 2);
                        stack.pop();
                    }
                }
            }
        }
        Ok(())
    }

    pub fn synset(&self, id: &str) -> Option<&Synset> {
        self.synsets.get(id)
    }

    /// Synsets of a lemma; multiword lookups normalize internal hyphens to
    /// spaces and fall back to the first token.
    pub fn synsets_of(&self, lemma: &str) -> Vec<&Synset> {
        let key = normalize_lemma(lemma);
        let ids = self.lemma_index.get(&key).or_else(|| {
            key.split(' ')
                .next()
                .and_then(|first| self.lemma_index.get(first))
        });
        ids.map(|ids| ids.iter().filter_map(|i| self.synsets.get(i)).collect())
            .unwrap_or_default()
    }

    fn verb_synsets_of(&self, lemma: &str) -> Vec<String> {
        self.synsets_of(lemma)
            .into_iter()
            .filter(|s| s.pos == 'v')
            .map(|s| s.id.clone())
            .collect()
    }

    /// Ground an AMR predicate label (`steal-01`) through PB -> VN -> WN,
    /// or fall back to lemma-level retrieval.
    pub fn ground_predicate(&self, sense_label: &str) -> Result<SemanticPath, UnknownPredicate> {
        let (lemma, sense_id) = split_sense(sense_label);
        let key = format!("{}.{}", normalize_lemma(&lemma), sense_id);
        let classes = self.semlink.get(&key).cloned().unwrap_or_default();
        let wordnet_synsets = self.verb_synsets_of(&lemma);
        if !classes.is_empty() {
            let roleset = self.propbank.get(&key).cloned().unwrap_or_default();
            return Ok(SemanticPath {
                sense: Some(PredicateSense {
                    lemma: normalize_lemma(&lemma),
                    sense_id: key,
                    roleset,
                }),
                verbnet_classes: classes,
                wordnet_synsets,
                path_kind: PathKind::Full,
            });
        }
        if wordnet_synsets.is_empty() && !self.propbank.contains_key(&key) {
            return Err(UnknownPredicate(sense_label.to_string()));
        }
        Ok(SemanticPath {
            sense: self.propbank.get(&key).map(|roleset| PredicateSense {
                lemma: normalize_lemma(&lemma),
                sense_id: key.clone(),
                roleset: roleset.clone(),
            }),
            verbnet_classes: Vec::new(),
            wordnet_synsets,
            path_kind: PathKind::LemmaFallback,
        })
    }

    /// `is_a(x, y)`: some synset of `x` has `y` among its transitive
    /// hypernyms or equals it. The target may be a configured type tag, a
    /// synset id, or a plain word. Unknown words are `false`, not errors.
    pub fn is_a(&self, word_or_synset: &str, target_type: &str) -> bool {
        let sources = self.resolve_synsets(word_or_synset);
        if sources.is_empty() {
            return false;
        }
        let targets: BTreeSet<String> = if let Some(anchors) = self.type_anchors.get(target_type) {
            anchors.iter().cloned().collect()
        } else {
            self.resolve_synsets(target_type).into_iter().collect()
        };
        if targets.is_empty() {
            return false;
        }
        let mut seen = BTreeSet::new();
        let mut stack = sources;
        while let Some(id) = stack.pop() {
            if targets.contains(&id) {
                return true;
            }
            if !seen.insert(id.clone()) {
                continue;
            }
            if let Some(s) = self.synsets.get(&id) {
                stack.extend(s.hypernyms.iter().cloned());
            }
        }
        false
    }

    fn resolve_synsets(&self, word_or_synset: &str) -> Vec<String> {
        if self.synsets.contains_key(word_or_synset) {
            return vec![word_or_synset.to_string()];
        }
        self.synsets_of(word_or_synset)
            .into_iter()
            .map(|s| s.id.clone())
            .collect()
    }

    /// Semantic type tags of a lemma, computed against every configured
    /// anchor. Unknown lemmas give the empty set.
    pub fn type_argument(&self, lemma: &str) -> BTreeSet<String> {
        self.type_anchors
            .keys()
            .filter(|tag| self.is_a(lemma, tag))
            .cloned()
            .collect()
    }

    /// (WordNet synset count, VerbNet sense count) for the predicate's lemma;
    /// zero for unknowns. Uses the same multiword normalization as grounding.
    pub fn ambiguity_counts(&self, sense_label: &str) -> (usize, usize) {
        let (lemma, _) = split_sense(sense_label);
        let key = normalize_lemma(&lemma);
        let (n_syn, counted_lemma) = {
            let direct = self.lemma_index.get(&key).map(|v| v.len()).unwrap_or(0);
            if direct > 0 {
                (direct, key.clone())
            } else {
                let first = key.split(' ').next().unwrap_or(&key).to_string();
                (
                    self.lemma_index.get(&first).map(|v| v.len()).unwrap_or(0),
                    first,
                )
            }
        };
        let prefix = format!("{counted_lemma}.");
        let classes: BTreeSet<&str> = self
            .semlink
            .range(prefix.clone()..)
            .take_while(|(k, _)| k.starts_with(&prefix))
            .flat_map(|(_, v)| v.iter().map(String::as_str))
            .collect();
        (n_syn, classes.len())
    }
}

/// Normalize a lemma for lookup: internal hyphens become spaces, lowercase.
pub fn normalize_lemma(lemma: &str) -> String {
    lemma.replace('-', " ").to_lowercase()
}

/// Split an AMR predicate label `lemma-NN` into (lemma, sense digits).
pub fn split_sense(sense_label: &str) -> (String, String) {
    if sense_label.len() > 3 {
        let (head, tail) = sense_label.split_at(sense_label.len() - 3);
        if tail.starts_with('-') && tail[1..].chars().all(|c| c.is_ascii_digit()) {
            return (head.to_string(), tail[1..].to_string());
        }
    }
    (sense_label.to_string(), String::new())
}
