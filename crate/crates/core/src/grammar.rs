//! Non-recursive generative grammars and the row-per-atom compiler.
//!
//! A compiled grammar has a start rule listing every atom, and one rule per
//! atom that lists the states valuing it true, a separator `br`, the states
//! valuing it false, and a line break `n`:
//!
//! ```text
//! v_logic --> a,b,c,d,e.
//! a --> s1,s2,br,s3,s4,s5,n.
//! ```
//!
//! [`derive`] expands any grammar of this crate (not only compiled ones) and
//! [`check_incidence`] verifies that each derived row puts a state left of the
//! separator exactly when the state makes the row's atom true.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{PartitionLogic, Separation, StateSet};

pub const SEPARATOR: &str = "br";
pub const LINEBREAK: &str = "n";
pub const DEFAULT_RENDERING_MAP: &str = "default";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("the state set is empty")]
    EmptyStateSet,
    #[error("states do not separate atoms `{first}` and `{second}`")]
    NotSeparating { first: String, second: String },
    #[error("nonterminal `{0}` has more than one production")]
    DuplicateProduction(String),
    #[error("start symbol `{0}` has no production")]
    MissingStart(String),
    #[error("nonterminal `{0}` has no production")]
    UndefinedNonterminal(String),
    #[error("terminal `{0}` is not declared")]
    UndeclaredTerminal(String),
    #[error("symbol `{0}` is used both as a nonterminal and a terminal or layout symbol")]
    SymbolClash(String),
    #[error("layout symbol `{0}` is not one of br, n")]
    BadLayout(String),
    #[error("the grammar is recursive: {}", .0.join(" -> "))]
    CyclicGrammar(Vec<String>),
    #[error("line {line}: {message}")]
    Listing { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymbolKind {
    Nonterminal,
    StateTerminal,
    Separator,
    Linebreak,
}

impl SymbolKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SymbolKind::Nonterminal => "nonterminal",
            SymbolKind::StateTerminal => "state-terminal",
            SymbolKind::Separator => "separator",
            SymbolKind::Linebreak => "linebreak",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub name: String,
}

impl Symbol {
    pub fn nonterminal(name: impl Into<String>) -> Self {
        Self {
            kind: SymbolKind::Nonterminal,
            name: name.into(),
        }
    }

    pub fn state(name: impl Into<String>) -> Self {
        Self {
            kind: SymbolKind::StateTerminal,
            name: name.into(),
        }
    }

    pub fn separator() -> Self {
        Self {
            kind: SymbolKind::Separator,
            name: SEPARATOR.into(),
        }
    }

    pub fn linebreak() -> Self {
        Self {
            kind: SymbolKind::Linebreak,
            name: LINEBREAK.into(),
        }
    }

    pub fn is_linebreak(&self) -> bool {
        self.kind == SymbolKind::Linebreak
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub head: String,
    pub body: Vec<Symbol>,
}

impl Production {
    pub fn body_names(&self) -> Vec<&str> {
        self.body.iter().map(|s| s.name.as_str()).collect()
    }
}

/// A grammar `(V, Σ, P, S, M, L)`; the rendering map `M` is referenced by id
/// and the layout symbols `L` are always `br` and `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    start: String,
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    productions: Vec<Production>,
    rendering_map_id: String,
}

impl Grammar {
    /// Checks that every nonterminal has exactly one production and that every
    /// body symbol is declared. Recursion is only detected by [`derive`].
    pub fn new(
        start: impl Into<String>,
        terminals: Vec<String>,
        productions: Vec<Production>,
        rendering_map_id: impl Into<String>,
    ) -> Result<Self, GrammarError> {
        let start = start.into();
        let mut heads = BTreeSet::new();
        for p in &productions {
            if !heads.insert(p.head.as_str()) {
                return Err(GrammarError::DuplicateProduction(p.head.clone()));
            }
        }
        if !heads.contains(start.as_str()) {
            return Err(GrammarError::MissingStart(start));
        }
        let declared: BTreeSet<&str> = terminals.iter().map(String::as_str).collect();
        for t in &terminals {
            if heads.contains(t.as_str()) || t == SEPARATOR || t == LINEBREAK {
                return Err(GrammarError::SymbolClash(t.clone()));
            }
        }
        for layout in [SEPARATOR, LINEBREAK] {
            if heads.contains(layout) {
                return Err(GrammarError::SymbolClash(layout.into()));
            }
        }
        for symbol in productions.iter().flat_map(|p| &p.body) {
            let name = symbol.name.as_str();
            match symbol.kind {
                SymbolKind::Nonterminal if !heads.contains(name) => {
                    return Err(GrammarError::UndefinedNonterminal(symbol.name.clone()))
                }
                SymbolKind::StateTerminal if !declared.contains(name) => {
                    return Err(GrammarError::UndeclaredTerminal(symbol.name.clone()))
                }
                SymbolKind::Separator if name != SEPARATOR => {
                    return Err(GrammarError::BadLayout(symbol.name.clone()))
                }
                SymbolKind::Linebreak if name != LINEBREAK => {
                    return Err(GrammarError::BadLayout(symbol.name.clone()))
                }
                _ => {}
            }
        }
        Ok(Self {
            start,
            nonterminals: productions.iter().map(|p| p.head.clone()).collect(),
            terminals,
            productions,
            rendering_map_id: rendering_map_id.into(),
        })
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn layout(&self) -> [&'static str; 2] {
        [SEPARATOR, LINEBREAK]
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn rendering_map_id(&self) -> &str {
        &self.rendering_map_id
    }

    pub fn production(&self, head: &str) -> Option<&Production> {
        self.productions.iter().find(|p| p.head == head)
    }

    /// `(head, body names)` pairs in production order.
    pub fn production_list(&self) -> Vec<(String, Vec<String>)> {
        self.productions
            .iter()
            .map(|p| {
                (
                    p.head.clone(),
                    p.body.iter().map(|s| s.name.clone()).collect(),
                )
            })
            .collect()
    }

    /// Plain listing in arrow notation, one production per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.productions {
            out.push_str(&p.head);
            out.push_str(" --> ");
            out.push_str(&p.body_names().join(","));
            out.push_str(".\n");
        }
        out
    }

    /// `{head: [body symbols]}` in production order.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .productions
            .iter()
            .map(|p| (p.head.clone(), serde_json::json!(p.body_names())))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Builds the row grammar of a logic: `start --> x1,...,xm.` followed by
/// `xj --> T(xj),br,F(xj),n.` for every atom. The start symbol is the
/// logic's name and the terminals are the state labels.
pub fn compile_grammar(logic: &PartitionLogic, states: &StateSet) -> Result<Grammar, GrammarError> {
    if states.is_empty() {
        return Err(GrammarError::EmptyStateSet);
    }
    if let Separation::Collision { first, second } = states.separation(logic) {
        return Err(GrammarError::NotSeparating { first, second });
    }
    let mut productions = Vec::with_capacity(logic.atom_count() + 1);
    productions.push(Production {
        head: logic.name().to_string(),
        body: logic.atoms().iter().map(Symbol::nonterminal).collect(),
    });
    for support in states.supports(logic).rows {
        let mut body: Vec<Symbol> = support.truthy.into_iter().map(Symbol::state).collect();
        body.push(Symbol::separator());
        body.extend(support.falsy.into_iter().map(Symbol::state));
        body.push(Symbol::linebreak());
        productions.push(Production {
            head: support.atom,
            body,
        });
    }
    let terminals = states.labels().map(str::to_string).collect();
    Grammar::new(logic.name(), terminals, productions, DEFAULT_RENDERING_MAP)
}

/// Fully expanded token stream of a grammar, split into rows at line breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    /// Terminals and layout symbols, left to right.
    pub tokens: Vec<Symbol>,
    /// Token indices of the line breaks.
    pub row_boundaries: Vec<usize>,
    /// For every row, the nonterminal whose production emitted its first token.
    pub row_atoms: Vec<String>,
}

impl Derivation {
    /// Rows without their line breaks. A trailing line break does not open
    /// an extra row.
    pub fn rows(&self) -> Vec<&[Symbol]> {
        let mut rows = Vec::with_capacity(self.row_atoms.len());
        let mut begin = 0;
        for &end in &self.row_boundaries {
            rows.push(&self.tokens[begin..end]);
            begin = end + 1;
        }
        if begin < self.tokens.len() {
            rows.push(&self.tokens[begin..]);
        }
        rows
    }

    pub fn row_count(&self) -> usize {
        self.row_atoms.len()
    }

    /// Tokens that are not line breaks.
    pub fn cell_count(&self) -> usize {
        self.tokens.len() - self.row_boundaries.len()
    }
}

/// Leftmost expansion of the start symbol down to terminals and layout
/// symbols.
pub fn derive(grammar: &Grammar) -> Result<Derivation, GrammarError> {
    let by_head: BTreeMap<&str, &Production> = grammar
        .productions
        .iter()
        .map(|p| (p.head.as_str(), p))
        .collect();
    let mut tokens = Vec::new();
    let mut emitters = Vec::new();
    let mut path = Vec::new();
    expand(
        grammar.start(),
        &by_head,
        &mut path,
        &mut tokens,
        &mut emitters,
    )?;

    let row_boundaries: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_linebreak())
        .map(|(i, _)| i)
        .collect();
    let mut row_atoms = Vec::new();
    let mut begin = 0;
    for &end in &row_boundaries {
        row_atoms.push(emitters[begin].to_string());
        begin = end + 1;
    }
    if begin < tokens.len() {
        row_atoms.push(emitters[begin].to_string());
    }
    Ok(Derivation {
        tokens,
        row_boundaries,
        row_atoms,
    })
}

fn expand<'g>(
    head: &'g str,
    by_head: &BTreeMap<&'g str, &'g Production>,
    path: &mut Vec<&'g str>,
    tokens: &mut Vec<Symbol>,
    emitters: &mut Vec<&'g str>,
) -> Result<(), GrammarError> {
    if let Some(i) = path.iter().position(|&h| h == head) {
        let mut cycle: Vec<String> = path[i..].iter().map(|h| h.to_string()).collect();
        cycle.push(head.to_string());
        return Err(GrammarError::CyclicGrammar(cycle));
    }
    let production = by_head
        .get(head)
        .ok_or_else(|| GrammarError::UndefinedNonterminal(head.to_string()))?;
    path.push(head);
    for symbol in &production.body {
        if symbol.kind == SymbolKind::Nonterminal {
            expand(&symbol.name, by_head, path, tokens, emitters)?;
        } else {
            tokens.push(symbol.clone());
            emitters.push(head);
        }
    }
    path.pop();
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IncidenceViolation {
    RowCount {
        expected: usize,
        found: usize,
    },
    UnknownAtom {
        row: usize,
        atom: String,
    },
    SeparatorCount {
        row: usize,
        count: usize,
    },
    StateCount {
        row: usize,
        state: String,
        count: usize,
    },
    WrongSide {
        row: usize,
        atom: String,
        state: String,
        /// Whether the state values the atom 1.
        value: bool,
    },
}

impl IncidenceViolation {
    pub fn row(&self) -> Option<usize> {
        match self {
            IncidenceViolation::RowCount { .. } => None,
            IncidenceViolation::UnknownAtom { row, .. }
            | IncidenceViolation::SeparatorCount { row, .. }
            | IncidenceViolation::StateCount { row, .. }
            | IncidenceViolation::WrongSide { row, .. } => Some(*row),
        }
    }
}

impl fmt::Display for IncidenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncidenceViolation::RowCount { expected, found } => {
                write!(f, "{found} rows for {expected} atoms")
            }
            IncidenceViolation::UnknownAtom { row, atom } => {
                write!(f, "row {row}: `{atom}` is not an atom")
            }
            IncidenceViolation::SeparatorCount { row, count } => {
                write!(f, "row {row}: {count} separators")
            }
            IncidenceViolation::StateCount { row, state, count } => {
                write!(f, "row {row}: {state} occurs {count} times")
            }
            IncidenceViolation::WrongSide {
                row,
                atom,
                state,
                value,
            } => {
                let side = if *value { "right" } else { "left" };
                write!(
                    f,
                    "row {row} ({atom}): {state} is {side} of the separator but {state}({atom}) = {}",
                    u8::from(*value)
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IncidenceReport {
    pub violations: Vec<IncidenceViolation>,
}

impl IncidenceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violating_rows(&self) -> BTreeSet<usize> {
        self.violations.iter().filter_map(|v| v.row()).collect()
    }
}

/// Checks that in every row the states left of `br` are exactly those that
/// value the row's atom 1, each state occurring once.
pub fn check_incidence(
    derivation: &Derivation,
    logic: &PartitionLogic,
    states: &StateSet,
) -> IncidenceReport {
    let mut violations = Vec::new();
    let rows = derivation.rows();
    if rows.len() != logic.atom_count() {
        violations.push(IncidenceViolation::RowCount {
            expected: logic.atom_count(),
            found: rows.len(),
        });
    }
    for (r, (row, atom_name)) in rows.iter().zip(&derivation.row_atoms).enumerate() {
        let Some(atom) = logic.atom_index(atom_name) else {
            violations.push(IncidenceViolation::UnknownAtom {
                row: r,
                atom: atom_name.clone(),
            });
            continue;
        };
        let separators: Vec<usize> = row
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == SymbolKind::Separator)
            .map(|(i, _)| i)
            .collect();
        if separators.len() != 1 {
            violations.push(IncidenceViolation::SeparatorCount {
                row: r,
                count: separators.len(),
            });
            continue;
        }
        let split = separators[0];
        for state in states.states() {
            let positions: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, s)| s.kind == SymbolKind::StateTerminal && s.name == state.label)
                .map(|(i, _)| i)
                .collect();
            if positions.len() != 1 {
                violations.push(IncidenceViolation::StateCount {
                    row: r,
                    state: state.label.clone(),
                    count: positions.len(),
                });
                continue;
            }
            let value = state.value(atom);
            if (positions[0] < split) != value {
                violations.push(IncidenceViolation::WrongSide {
                    row: r,
                    atom: atom_name.clone(),
                    state: state.label.clone(),
                    value,
                });
            }
        }
    }
    IncidenceReport { violations }
}

/// Parses productions written as `head --> x,y,z.` (one per line, blank lines
/// and `%` comments skipped). Names may be single-quoted. Lines whose body is
/// a bracketed terminal list or that are not grammar rules are ignored.
pub fn parse_productions(text: &str) -> Result<Vec<(String, Vec<String>)>, GrammarError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let Some((head, body)) = line.split_once("-->") else {
            continue;
        };
        let body = body.trim();
        if body.starts_with('[') {
            continue;
        }
        let err = |message: &str| GrammarError::Listing {
            line: i + 1,
            message: message.into(),
        };
        let body = body
            .strip_suffix('.')
            .ok_or_else(|| err("missing trailing period"))?;
        let head = unquote(head.trim()).map_err(&err)?;
        let symbols = split_symbols(body)
            .map_err(&err)?
            .into_iter()
            .map(|s| unquote(&s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        out.push((head, symbols));
    }
    Ok(out)
}

fn split_symbols(body: &str) -> Result<Vec<String>, &'static str> {
    let mut parts = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    let mut chars = body.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' if quoted => {
                current.push(c);
                current.push(chars.next().ok_or("dangling escape")?);
            }
            '\'' => {
                quoted = !quoted;
                current.push(c);
            }
            ',' if !quoted => parts.push(std::mem::take(&mut current).trim().to_string()),
            _ => current.push(c),
        }
    }
    if quoted {
        return Err("unterminated quote");
    }
    parts.push(current.trim().to_string());
    if parts.iter().any(String::is_empty) {
        return Err("empty symbol");
    }
    Ok(parts)
}

fn unquote(raw: &str) -> Result<String, &'static str> {
    let Some(inner) = raw.strip_prefix('\'') else {
        return if raw.is_empty() {
            Err("empty symbol")
        } else {
            Ok(raw.to_string())
        };
    };
    let inner = inner.strip_suffix('\'').ok_or("unterminated quote")?;
    let mut out = String::with_capacity(inner.len());
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next().ok_or("dangling escape")? {
                'n' => out.push('\n'),
                other => out.push(other),
            }
        } else {
            out.push(c);
        }
    }
    Ok(out)
}
