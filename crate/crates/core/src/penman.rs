//! AMR graphs in PENMAN notation: parsing, serialization, and the graph
//! queries used by event extraction.
//!
//! The supported subset covers what AMR emits: variable/concept pairs, role
//! edges, string/numeric/symbol constants, inverse (`-of`) roles, and
//! alignment markup (`~e.N`), which is stored but not interpreted. Variable
//! scoping is graph-global, so a bare token resolves to a node reference when
//! a node with that variable exists anywhere in the graph and to a symbol
//! constant otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::PenmanError;

/// A concept or predicate node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmrNode {
    pub variable: String,
    pub concept: String,
    /// Raw alignment markup (`~e.1`) attached to the concept, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alignment: Option<String>,
}

impl AmrNode {
    /// A node is a predicate iff its concept carries a two-digit PropBank
    /// sense suffix (`steal-01`, `be-located-at-91`).
    pub fn is_predicate(&self) -> bool {
        let b = self.concept.as_bytes();
        b.len() > 3
            && b[b.len() - 3] == b'-'
            && b[b.len() - 2].is_ascii_digit()
            && b[b.len() - 1].is_ascii_digit()
    }

    /// Lemma part of a predicate concept (`steal-01` -> `steal`); the whole
    /// concept for non-predicates.
    pub fn lemma(&self) -> &str {
        if self.is_predicate() {
            &self.concept[..self.concept.len() - 3]
        } else {
            &self.concept
        }
    }
}

/// Leaf constants: quoted strings, numbers, and bare symbols such as the
/// `-` polarity marker.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AmrConstant {
    Str(String),
    /// Numeric literal, kept in its source lexical form.
    Num(String),
    Sym(String),
}

impl AmrConstant {
    pub fn as_str(&self) -> &str {
        match self {
            AmrConstant::Str(s) | AmrConstant::Num(s) | AmrConstant::Sym(s) => s,
        }
    }
}

/// An edge target: another node or a constant leaf.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AmrTarget {
    Node(String),
    Const(AmrConstant),
}

impl AmrTarget {
    pub fn node(&self) -> Option<&str> {
        match self {
            AmrTarget::Node(v) => Some(v),
            AmrTarget::Const(_) => None,
        }
    }
}

/// A labeled role edge. Labels always begin with `:`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmrEdge {
    pub source: String,
    pub label: String,
    pub target: AmrTarget,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alignment: Option<String>,
}

/// A rooted AMR graph for one sentence.
///
/// Nodes are stored in document order (definition order in the PENMAN text),
/// which makes every derived ordering deterministic. Re-entrant nodes are
/// represented once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmrGraph {
    pub root: String,
    pub nodes: Vec<AmrNode>,
    pub edges: Vec<AmrEdge>,
    pub source_text: String,
    pub sentence_index: usize,
    #[serde(skip)]
    node_index: BTreeMap<String, usize>,
}

impl AmrGraph {
    pub fn node(&self, var: &str) -> Option<&AmrNode> {
        self.node_index.get(var).map(|&i| &self.nodes[i])
    }

    pub fn contains(&self, var: &str) -> bool {
        self.node_index.contains_key(var)
    }

    /// All predicate nodes in document order (depth-first from the root).
    pub fn predicate_nodes(&self) -> Vec<&AmrNode> {
        self.nodes.iter().filter(|n| n.is_predicate()).collect()
    }

    /// Outgoing role edges of `var`, with `-of` edges normalized to the
    /// forward direction: `:R-of(a, b)` is query-equivalent to `:R(b, a)`.
    ///
    /// When the same normalized role appears more than once the first edge in
    /// document order wins.
    pub fn arguments_of(&self, var: &str) -> Result<BTreeMap<String, AmrTarget>, PenmanError> {
        if !self.contains(var) {
            return Err(PenmanError::UnknownNode(var.to_string()));
        }
        let mut args = BTreeMap::new();
        for edge in &self.edges {
            if edge.source == var && !is_inverse_role(&edge.label) {
                args.entry(edge.label.clone())
                    .or_insert_with(|| edge.target.clone());
            } else if is_inverse_role(&edge.label) && edge.target.node() == Some(var) {
                let forward = forward_role(&edge.label);
                args.entry(forward)
                    .or_insert_with(|| AmrTarget::Node(edge.source.clone()));
            }
        }
        Ok(args)
    }

    /// Targets of every edge labelled `role` out of `var` (forward-normalized),
    /// in document order. Unlike [`AmrGraph::arguments_of`] this keeps
    /// duplicates.
    pub fn targets_of(&self, var: &str, role: &str) -> Vec<AmrTarget> {
        let mut out = Vec::new();
        for edge in &self.edges {
            if edge.source == var && edge.label == role {
                out.push(edge.target.clone());
            } else if is_inverse_role(&edge.label)
                && forward_role(&edge.label) == role
                && edge.target.node() == Some(var)
            {
                out.push(AmrTarget::Node(edge.source.clone()));
            }
        }
        out
    }

    /// True iff the predicate has a `:polarity -` edge.
    pub fn is_negated(&self, var: &str) -> bool {
        self.edges.iter().any(|e| {
            e.source == var
                && e.label == ":polarity"
                && matches!(&e.target, AmrTarget::Const(AmrConstant::Sym(s)) if s == "-")
        })
    }

    /// Variables of the nodes that point at `var` through a given role,
    /// following the forward-normalized direction (`a :R b` makes `a` the
    /// `:R`-parent of `b`). `w :part-of v` means `v :part w`, so `v` is the
    /// `:part`-parent of `w`.
    pub fn role_parents(&self, var: &str, role: &str) -> Vec<&str> {
        let mut out = Vec::new();
        for edge in &self.edges {
            if !is_inverse_role(&edge.label) && edge.label == role && edge.target.node() == Some(var)
            {
                out.push(edge.source.as_str());
            } else if edge.source == var
                && is_inverse_role(&edge.label)
                && forward_role(&edge.label) == role
            {
                if let AmrTarget::Node(p) = &edge.target {
                    out.push(p.as_str());
                }
            }
        }
        out
    }

    /// Check structural invariants: one root, unique variables (by
    /// construction), and every node reachable from the root ignoring edge
    /// direction.
    pub fn validate(&self) -> Result<(), PenmanError> {
        if self.nodes.is_empty() {
            return Err(PenmanError::EmptyGraph);
        }
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut stack = vec![self.root.as_str()];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            for e in &self.edges {
                if e.source == v {
                    if let AmrTarget::Node(t) = &e.target {
                        stack.push(t);
                    }
                } else if e.target.node() == Some(v) {
                    stack.push(&e.source);
                }
            }
        }
        for n in &self.nodes {
            if !seen.contains(n.variable.as_str()) {
                return Err(PenmanError::UnknownNode(n.variable.clone()));
            }
        }
        Ok(())
    }
}

pub fn is_inverse_role(label: &str) -> bool {
    label.ends_with("-of") && label.len() > 4
}

fn forward_role(label: &str) -> String {
    label[..label.len() - 3].to_string()
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

/// Intermediate tree produced before bare tokens are resolved into node
/// references or symbol constants.
enum RawTarget {
    Nested(RawNode),
    Token(String, Option<String>),
    Str(String, Option<String>),
}

struct RawNode {
    var: String,
    var_line: usize,
    var_col: usize,
    concept: String,
    alignment: Option<String>,
    edges: Vec<(String, Option<String>, RawTarget)>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, message: impl Into<String>) -> PenmanError {
        PenmanError::Syntax {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.bump();
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PenmanError> {
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => Err(self.err(format!("expected `{}`, found `{}`", c as char, x as char))),
            None => Err(PenmanError::UnbalancedParens {
                line: self.line,
                column: self.col,
            }),
        }
    }

    fn is_token_byte(c: u8) -> bool {
        !matches!(c, b'(' | b')' | b'/' | b'~' | b'"' | b' ' | b'\t' | b'\r' | b'\n')
    }

    fn token(&mut self) -> Result<String, PenmanError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if Self::is_token_byte(c) {
                self.bump();
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.err("expected token"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    /// Optional `~...` alignment suffix, captured raw.
    fn alignment(&mut self) -> Option<String> {
        if self.peek() != Some(b'~') {
            return None;
        }
        let start = self.pos;
        self.bump();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'.' || c == b',' {
                self.bump();
            } else {
                break;
            }
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn quoted(&mut self) -> Result<String, PenmanError> {
        self.expect(b'"')?;
        let mut s = String::new();
        loop {
            match self.bump() {
                Some(b'"') => return Ok(s),
                Some(b'\\') => match self.bump() {
                    Some(c) => s.push(c as char),
                    None => return Err(self.err("unterminated string escape")),
                },
                Some(c) => s.push(c as char),
                None => return Err(self.err("unterminated string literal")),
            }
        }
    }

    fn node(&mut self) -> Result<RawNode, PenmanError> {
        self.expect(b'(')?;
        self.skip_ws();
        let (var_line, var_col) = (self.line, self.col);
        let var = self.token()?;
        self.skip_ws();
        self.expect(b'/')?;
        self.skip_ws();
        let concept = self.token()?;
        let alignment = self.alignment();
        let mut edges = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b')') => {
                    self.bump();
                    break;
                }
                Some(b':') => {
                    let role = self.token()?;
                    let role_align = self.alignment();
                    self.skip_ws();
                    let target = match self.peek() {
                        Some(b'(') => RawTarget::Nested(self.node()?),
                        Some(b'"') => {
                            let s = self.quoted()?;
                            let a = self.alignment();
                            RawTarget::Str(s, a)
                        }
                        Some(c) if Parser::is_token_byte(c) => {
                            let t = self.token()?;
                            let a = self.alignment();
                            RawTarget::Token(t, a)
                        }
                        Some(c) => {
                            return Err(self.err(format!(
                                "expected edge target after `{role}`, found `{}`",
                                c as char
                            )))
                        }
                        None => {
                            return Err(PenmanError::UnbalancedParens {
                                line: self.line,
                                column: self.col,
                            })
                        }
                    };
                    edges.push((role, role_align, target));
                }
                Some(c) => {
                    return Err(self.err(format!(
                        "expected role or `)`, found `{}`",
                        c as char
                    )))
                }
                None => {
                    return Err(PenmanError::UnbalancedParens {
                        line: self.line,
                        column: self.col,
                    })
                }
            }
        }
        Ok(RawNode {
            var,
            var_line,
            var_col,
            concept,
            alignment,
            edges,
        })
    }
}

fn collect_vars(
    raw: &RawNode,
    vars: &mut BTreeMap<String, (usize, usize)>,
) -> Result<(), PenmanError> {
    if vars.contains_key(&raw.var) {
        return Err(PenmanError::DuplicateVariable {
            var: raw.var.clone(),
            line: raw.var_line,
            column: raw.var_col,
        });
    }
    vars.insert(raw.var.clone(), (raw.var_line, raw.var_col));
    for (_, _, t) in &raw.edges {
        if let RawTarget::Nested(n) = t {
            collect_vars(n, vars)?;
        }
    }
    Ok(())
}

fn looks_numeric(tok: &str) -> bool {
    let t = tok.strip_prefix('-').unwrap_or(tok);
    !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '.') && t != "."
}

fn flatten(
    raw: RawNode,
    vars: &BTreeSet<String>,
    nodes: &mut Vec<AmrNode>,
    edges: &mut Vec<AmrEdge>,
) {
    let var = raw.var.clone();
    nodes.push(AmrNode {
        variable: raw.var,
        concept: raw.concept,
        alignment: raw.alignment,
    });
    for (role, role_align, target) in raw.edges {
        match target {
            RawTarget::Nested(n) => {
                edges.push(AmrEdge {
                    source: var.clone(),
                    label: role,
                    target: AmrTarget::Node(n.var.clone()),
                    alignment: role_align,
                });
                flatten(n, vars, nodes, edges);
            }
            RawTarget::Str(s, _a) => edges.push(AmrEdge {
                source: var.clone(),
                label: role,
                target: AmrTarget::Const(AmrConstant::Str(s)),
                alignment: role_align,
            }),
            RawTarget::Token(t, _a) => {
                let target = if vars.contains(&t) {
                    AmrTarget::Node(t)
                } else if looks_numeric(&t) {
                    AmrTarget::Const(AmrConstant::Num(t))
                } else {
                    AmrTarget::Const(AmrConstant::Sym(t))
                };
                edges.push(AmrEdge {
                    source: var.clone(),
                    label: role,
                    target,
                    alignment: role_align,
                });
            }
        }
    }
}

/// Parse one PENMAN block into an [`AmrGraph`].
///
/// The original text is preserved verbatim in `source_text`. Bare tokens in
/// target position resolve to node references when the variable is defined
/// anywhere in the graph (forward references are fine) and to constants
/// otherwise.
pub fn parse_penman(text: &str, sentence_index: usize) -> Result<AmrGraph, PenmanError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    if p.peek().is_none() {
        return Err(PenmanError::EmptyGraph);
    }
    let raw = p.node()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.err("trailing input after graph"));
    }

    let mut var_positions = BTreeMap::new();
    collect_vars(&raw, &mut var_positions)?;
    let vars: BTreeSet<String> = var_positions.keys().cloned().collect();

    let root = raw.var.clone();
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    flatten(raw, &vars, &mut nodes, &mut edges);

    let node_index = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.variable.clone(), i))
        .collect();

    let g = AmrGraph {
        root,
        nodes,
        edges,
        source_text: text.to_string(),
        sentence_index,
        node_index,
    };
    g.validate()?;
    Ok(g)
}

/// Serialize a graph back to PENMAN text.
///
/// Depth-first from the root, defining each node at its first encounter and
/// emitting bare variable references afterwards, so re-entrant nodes appear
/// once. `parse_penman(serialize_penman(g))` is graph-isomorphic to `g` with
/// variable names preserved.
pub fn serialize_penman(g: &AmrGraph) -> String {
    let mut out = String::new();
    let mut defined = BTreeSet::new();
    write_node(g, &g.root, &mut defined, &mut out);
    out
}

fn write_node(g: &AmrGraph, var: &str, defined: &mut BTreeSet<String>, out: &mut String) {
    defined.insert(var.to_string());
    let node = g.node(var).expect("node exists");
    let _ = write!(out, "({} / {}", var, node.concept);
    if let Some(a) = &node.alignment {
        out.push_str(a);
    }
    for edge in g.edges.iter().filter(|e| e.source == var) {
        let _ = write!(out, " {}", edge.label);
        if let Some(a) = &edge.alignment {
            out.push_str(a);
        }
        out.push(' ');
        match &edge.target {
            AmrTarget::Node(t) => {
                if defined.contains(t) {
                    out.push_str(t);
                } else {
                    write_node(g, t, defined, out);
                }
            }
            AmrTarget::Const(AmrConstant::Str(s)) => {
                let _ = write!(out, "\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
            }
            AmrTarget::Const(AmrConstant::Num(n)) => out.push_str(n),
            AmrTarget::Const(AmrConstant::Sym(s)) => out.push_str(s),
        }
    }
    out.push(')');
}

/// Read a per-case AMR bundle: one PENMAN block per sentence, blank-line
/// separated. Lines starting with `#` are comments/metadata and ignored.
pub fn read_amr_bundle(content: &str) -> Result<Vec<AmrGraph>, PenmanError> {
    let mut graphs = Vec::new();
    let mut block = String::new();
    let flush = |block: &mut String, graphs: &mut Vec<AmrGraph>| -> Result<(), PenmanError> {
        if !block.trim().is_empty() {
            let idx = graphs.len();
            graphs.push(parse_penman(block.trim(), idx)?);
        }
        block.clear();
        Ok(())
    };
    for line in content.lines() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        if line.trim().is_empty() {
            flush(&mut block, &mut graphs)?;
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    flush(&mut block, &mut graphs)?;
    Ok(graphs)
}

/// Two graphs are isomorphic for our purposes when they share the root, the
/// (variable, concept) node set, and the edge multiset after forward
/// normalization is ignored (labels kept as written).
pub fn isomorphic(a: &AmrGraph, b: &AmrGraph) -> bool {
    if a.root != b.root {
        return false;
    }
    let nodes = |g: &AmrGraph| -> BTreeSet<(String, String)> {
        g.nodes
            .iter()
            .map(|n| (n.variable.clone(), n.concept.clone()))
            .collect()
    };
    let edges = |g: &AmrGraph| -> Vec<(String, String, AmrTarget)> {
        let mut v: Vec<_> = g
            .edges
            .iter()
            .map(|e| (e.source.clone(), e.label.clone(), e.target.clone()))
            .collect();
        v.sort();
        v
    };
    nodes(a) == nodes(b) && edges(a) == edges(b)
}
