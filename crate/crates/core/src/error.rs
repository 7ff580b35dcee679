//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by the PENMAN parser and graph queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PenmanError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate variable definition `{var}` at line {line}, column {column}")]
    DuplicateVariable {
        var: String,
        line: usize,
        column: usize,
    },
    #[error("unbalanced parentheses at line {line}, column {column}")]
    UnbalancedParens { line: usize, column: usize },
    #[error("unknown node id `{0}`")]
    UnknownNode(String),
    #[error("graph has no root")]
    EmptyGraph,
}

/// Errors raised while loading lexical resources.
#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("malformed {file} line {line}: {message}")]
    Malformed {
        file: String,
        line: usize,
        message: String,
    },
    #[error("hypernym cycle involving synset `{0}`")]
    HypernymCycle(String),
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// A predicate lemma absent from every lexical resource.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("predicate `{0}` is unknown to all lexical resources")]
pub struct UnknownPredicate(pub String);

/// Errors raised while loading or validating configuration files.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to parse {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid {field}: {message}")]
    Invalid { field: String, message: String },
}

/// Per-case pipeline failures. One case failing never aborts the batch.
#[derive(Debug, Error)]
pub enum CaseError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("PENMAN parse failure in sentence {sentence}: {source}")]
    Penman {
        sentence: usize,
        source: PenmanError,
    },
    #[error("narrative has {sentences} sentences but AMR bundle has {graphs} graphs")]
    SentenceGraphMismatch { sentences: usize, graphs: usize },
    #[error("missing metadata file: {0}")]
    MissingMetadata(String),
    #[error("{0}")]
    Other(String),
}
