//! Logic spec files (UTF-8 JSON).
//!
//! Two mutually exclusive shapes are accepted:
//!
//! ```json
//! {"name": "v_logic", "atoms": ["a","b","c","d","e"],
//!  "contexts": [["a","b","c"],["c","d","e"]],
//!  "states": [[1,0,0,0,1], ...], "palette": {"s1": "#008000"}}
//! ```
//!
//! ```json
//! {"name": "horizontal_sum", "base_set": [1,2,3],
//!  "partitions": [[[1],[2,3]], [[2],[1,3]], [[3],[1,2]]],
//!  "block_names": [["p","¬p"], ["q","¬q"], ["r","¬r"]]}
//! ```
//!
//! `states` and `palette` are optional; `name` defaults to `q`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::logic::{LogicError, PartitionLogic, StateSet};
use crate::partitions::{logic_from_partitions, BaseSetSpec, Block, PartitionError, Point};
use crate::render::Rgb;

pub const DEFAULT_NAME: &str = "q";

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Mode(&'static str),
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    #[error("{location}: {source}")]
    Logic {
        location: String,
        source: LogicError,
    },
    #[error("{location}: {source}")]
    Partition {
        location: String,
        source: PartitionError,
    },
}

/// What a spec file describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogicSpec {
    /// Atoms and contexts given directly, with an optional pinned state order.
    Hypergraph {
        logic: PartitionLogic,
        states: Option<StateSet>,
    },
    /// Partitions of a base set.
    BaseSet(BaseSetSpec),
}

/// A parsed spec file: the logic description plus palette overrides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub spec: LogicSpec,
    pub palette: BTreeMap<String, Rgb>,
}

impl SpecFile {
    pub fn name(&self) -> &str {
        match &self.spec {
            LogicSpec::Hypergraph { logic, .. } => logic.name(),
            LogicSpec::BaseSet(b) => b.name(),
        }
    }

    /// The logic and the state set the artifacts are built from: pinned
    /// states if present, point-induced states for base sets, the full
    /// enumeration otherwise.
    pub fn resolve(&self) -> Result<(PartitionLogic, StateSet), SpecError> {
        match &self.spec {
            LogicSpec::Hypergraph { logic, states } => {
                let states = states.clone().unwrap_or_else(|| logic.enumerate_states());
                Ok((logic.clone(), states))
            }
            LogicSpec::BaseSet(spec) => {
                logic_from_partitions(spec).map_err(|source| SpecError::Partition {
                    location: "partitions".into(),
                    source,
                })
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypergraph {
    name: Option<String>,
    atoms: Vec<String>,
    contexts: Vec<Vec<String>>,
    states: Option<Vec<Vec<u8>>>,
    palette: Option<BTreeMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBaseSet {
    name: Option<String>,
    base_set: Vec<Point>,
    partitions: Vec<Vec<Block>>,
    block_names: Option<Vec<Vec<String>>>,
    palette: Option<BTreeMap<String, String>>,
}

fn syntax(err: serde_json::Error) -> SpecError {
    SpecError::Syntax {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Invalid {
        location: location.into(),
        message: message.into(),
    }
}

fn logic_location(err: &LogicError) -> String {
    match err {
        LogicError::NoAtoms | LogicError::DuplicateAtom(_) | LogicError::EmptyAtomName(_) => {
            "atoms".into()
        }
        LogicError::AtomInNoContext(_) | LogicError::NoContexts => "contexts".into(),
        LogicError::UnknownAtomIndex { context, .. }
        | LogicError::RepeatedAtom { context, .. }
        | LogicError::ContextTooSmall { context, .. }
        | LogicError::NotAPartition { context, .. } => format!("contexts[{context}]"),
        LogicError::NestedContext { inner, .. } => format!("contexts[{inner}]"),
        LogicError::StateArity { state, .. } | LogicError::Inadmissible { state, .. } => {
            format!("states[{state}]")
        }
        LogicError::DuplicateState { second, .. } => format!("states[{second}]"),
    }
}

fn logic_err(err: LogicError) -> SpecError {
    SpecError::Logic {
        location: logic_location(&err),
        source: err,
    }
}

fn parse_name(name: Option<String>) -> Result<String, SpecError> {
    match name {
        None => Ok(DEFAULT_NAME.to_string()),
        Some(n) if n.trim().is_empty() => Err(invalid("name", "must not be empty")),
        Some(n) => Ok(n),
    }
}

fn parse_palette(
    raw: Option<BTreeMap<String, String>>,
) -> Result<BTreeMap<String, Rgb>, SpecError> {
    raw.unwrap_or_default()
        .into_iter()
        .map(|(label, hex)| {
            let color = hex
                .parse::<Rgb>()
                .map_err(|e| invalid(format!("palette.{label}"), e.to_string()))?;
            Ok((label, color))
        })
        .collect()
}

/// Parses spec-file text. Syntax errors carry line and column, semantic
/// errors a path into the document (`contexts[1]`, `states[4]`, ...).
pub fn parse_logic_spec(text: &str) -> Result<SpecFile, SpecError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(syntax)?;
    let object = value
        .as_object()
        .ok_or(SpecError::Mode("a spec file must be a JSON object"))?;
    match (
        object.contains_key("atoms"),
        object.contains_key("base_set"),
    ) {
        (true, true) => Err(SpecError::Mode(
            "`atoms` and `base_set` are mutually exclusive",
        )),
        (false, false) => Err(SpecError::Mode(
            "a spec file needs either `atoms`/`contexts` or `base_set`/`partitions`",
        )),
        (true, false) => {
            let raw: RawHypergraph = serde_json::from_str(text).map_err(syntax)?;
            parse_hypergraph(raw)
        }
        (false, true) => {
            let raw: RawBaseSet = serde_json::from_str(text).map_err(syntax)?;
            let spec = BaseSetSpec::new(
                parse_name(raw.name)?,
                raw.base_set,
                raw.partitions,
                raw.block_names,
            )
            .map_err(|source| SpecError::Partition {
                location: partition_location(&source),
                source,
            })?;
            Ok(SpecFile {
                spec: LogicSpec::BaseSet(spec),
                palette: parse_palette(raw.palette)?,
            })
        }
    }
}

fn partition_location(err: &PartitionError) -> String {
    match err {
        PartitionError::EmptyBaseSet | PartitionError::DuplicatePoint(_) => "base_set".into(),
        PartitionError::EmptyBlock { partition, block } => {
            format!("partitions[{partition}][{block}]")
        }
        PartitionError::UnknownPoint { partition, .. }
        | PartitionError::Overlap { partition, .. }
        | PartitionError::Uncovered { partition, .. } => format!("partitions[{partition}]"),
        PartitionError::NameShape { partition, .. } => format!("block_names[{partition}]"),
        PartitionError::NameCount { .. } => "block_names".into(),
        _ => "partitions".into(),
    }
}

fn parse_hypergraph(raw: RawHypergraph) -> Result<SpecFile, SpecError> {
    let name = parse_name(raw.name)?;
    let mut index = BTreeMap::new();
    for (i, atom) in raw.atoms.iter().enumerate() {
        if index.insert(atom.as_str(), i).is_some() {
            return Err(logic_err(LogicError::DuplicateAtom(atom.clone())));
        }
    }
    let mut contexts = Vec::with_capacity(raw.contexts.len());
    for (c, context) in raw.contexts.iter().enumerate() {
        let mut row = Vec::with_capacity(context.len());
        for (k, atom) in context.iter().enumerate() {
            let &i = index.get(atom.as_str()).ok_or_else(|| {
                invalid(
                    format!("contexts[{c}][{k}]"),
                    format!("unknown atom `{atom}`"),
                )
            })?;
            row.push(i);
        }
        contexts.push(row);
    }
    let logic = PartitionLogic::new(name, raw.atoms.clone(), contexts).map_err(logic_err)?;

    let states = match raw.states {
        None => None,
        Some(rows) => {
            let mut valuations = Vec::with_capacity(rows.len());
            for (s, row) in rows.into_iter().enumerate() {
                if let Some(k) = row.iter().position(|&v| v > 1) {
                    return Err(invalid(
                        format!("states[{s}][{k}]"),
                        "values must be 0 or 1",
                    ));
                }
                valuations.push(row.into_iter().map(|v| v == 1).collect());
            }
            Some(StateSet::pinned(&logic, valuations).map_err(logic_err)?)
        }
    };

    let palette = parse_palette(raw.palette)?;
    if let Some(states) = &states {
        let labels: BTreeSet<&str> = states.labels().collect();
        if let Some(label) = palette.keys().find(|l| !labels.contains(l.as_str())) {
            return Err(invalid(
                format!("palette.{label}"),
                "no state has this label",
            ));
        }
    }
    Ok(SpecFile {
        spec: LogicSpec::Hypergraph { logic, states },
        palette,
    })
}

pub fn load_logic_spec(path: impl AsRef<Path>) -> Result<SpecFile, SpecError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_logic_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::StateOrder;

    #[test]
    fn l12_without_name() {
        let file = parse_logic_spec(
            r#"{"atoms":["a","b","c","d","e"],"contexts":[["a","b","c"],["c","d","e"]]}"#,
        )
        .unwrap();
        let LogicSpec::Hypergraph { logic, states } = &file.spec else {
            panic!("expected hypergraph mode");
        };
        assert_eq!(logic.name(), DEFAULT_NAME);
        assert_eq!(logic.contexts(), [vec![0, 1, 2], vec![2, 3, 4]]);
        assert!(states.is_none());
        let (_, states) = file.resolve().unwrap();
        assert_eq!(states.len(), 5);
        assert_eq!(states.order(), StateOrder::Canonical);
    }

    #[test]
    fn smallest_input() {
        let file = parse_logic_spec(r#"{"atoms":["x","y"],"contexts":[["x","y"]]}"#).unwrap();
        let (logic, states) = file.resolve().unwrap();
        assert_eq!(logic.atom_count(), 2);
        assert_eq!(states.len(), 2);
    }

    #[test]
    fn base_set_mode() {
        let file = parse_logic_spec(
            r#"{"base_set":[1,2,3],"partitions":[[[1],[2,3]],[[2],[1,3]],[[3],[1,2]]]}"#,
        )
        .unwrap();
        let LogicSpec::BaseSet(spec) = &file.spec else {
            panic!("expected base-set mode");
        };
        assert_eq!(spec.partitions().len(), 3);
        let (logic, states) = file.resolve().unwrap();
        assert_eq!(logic.atom_count(), 6);
        assert_eq!(states.order(), StateOrder::PointInduced);
    }

    #[test]
    fn syntax_errors_have_a_position() {
        let err = parse_logic_spec("{\n  \"atoms\": [\"a\",\n}").unwrap_err();
        assert!(matches!(err, SpecError::Syntax { line: 3, .. }), "{err}");
    }

    #[test]
    fn semantic_errors_have_a_path() {
        let err = parse_logic_spec(r#"{"atoms":["x","x"],"contexts":[["x"]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "atoms: duplicate atom name `x`");
        let err = parse_logic_spec(r#"{"atoms":["x","y","z"],"contexts":[["x","y"],["z"]]}"#)
            .unwrap_err();
        assert_eq!(
            err.to_string(),
            "contexts[1]: context 1 has 1 atom(s), at least 2 are required"
        );
        let err = parse_logic_spec(r#"{"atoms":["x","y"],"contexts":[["x","w"]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "contexts[0][1]: unknown atom `w`");
        let err = parse_logic_spec(r#"{"base_set":[1,2,3],"partitions":[[[1],[2]]]}"#).unwrap_err();
        assert_eq!(
            err.to_string(),
            "partitions[0]: partition 0 does not cover point 3"
        );
        let err =
            parse_logic_spec(r#"{"atoms":["x","y"],"contexts":[["x","y"]],"states":[[1,1]]}"#)
                .unwrap_err();
        assert!(err.to_string().starts_with("states[0]:"), "{err}");
    }

    #[test]
    fn modes_are_exclusive() {
        assert!(matches!(
            parse_logic_spec(r#"{"atoms":[],"base_set":[]}"#).unwrap_err(),
            SpecError::Mode(_)
        ));
        assert!(matches!(
            parse_logic_spec(r#"{"name":"x"}"#).unwrap_err(),
            SpecError::Mode(_)
        ));
        assert!(matches!(
            parse_logic_spec(r#"{"atoms":["x","y"],"contexts":[["x","y"]],"extra":1}"#)
                .unwrap_err(),
            SpecError::Syntax { .. }
        ));
    }

    #[test]
    fn palette_is_checked() {
        let err = parse_logic_spec(
            r##"{"atoms":["x","y"],"contexts":[["x","y"]],"palette":{"s1":"#12345"}}"##,
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("palette.s1:"), "{err}");
        let file = parse_logic_spec(
            r##"{"atoms":["x","y"],"contexts":[["x","y"]],"palette":{"s2":"#ABCDEF"}}"##,
        )
        .unwrap();
        assert_eq!(file.palette["s2"].to_string(), "#ABCDEF");
    }
}
