//! Partition logics given as several partitions of one base set.
//!
//! Every block becomes an atom and every partition a context. Blocks that are
//! equal as sets are pasted into one atom. Each point of the base set induces
//! the two-valued state that makes exactly the blocks containing it true.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{LogicError, PartitionLogic, StateOrder, StateSet};

/// A point of the base set; spec files may use integers or strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Int(i64),
    Name(String),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Int(i) => write!(f, "{i}"),
            Point::Name(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Point {
    fn from(i: i64) -> Self {
        Point::Int(i)
    }
}

impl From<&str> for Point {
    fn from(s: &str) -> Self {
        Point::Name(s.to_string())
    }
}

pub type Block = Vec<Point>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("the base set is empty")]
    EmptyBaseSet,
    #[error("point {0} occurs twice in the base set")]
    DuplicatePoint(Point),
    #[error("no partitions given")]
    NoPartitions,
    #[error("partition {partition}, block {block} is empty")]
    EmptyBlock { partition: usize, block: usize },
    #[error("partition {partition} uses point {point}, which is not in the base set")]
    UnknownPoint { partition: usize, point: Point },
    #[error("partition {partition} puts point {point} in more than one block")]
    Overlap { partition: usize, point: Point },
    #[error("partition {partition} does not cover point {point}")]
    Uncovered { partition: usize, point: Point },
    #[error("block_names has {names} entries for partition {partition} with {blocks} blocks")]
    NameShape {
        partition: usize,
        names: usize,
        blocks: usize,
    },
    #[error("block_names has {names} partitions but {partitions} partitions are given")]
    NameCount { names: usize, partitions: usize },
    #[error("block {{{block}}} is named both `{first}` and `{second}`")]
    AmbiguousPasting {
        block: String,
        first: String,
        second: String,
    },
    #[error("name `{name}` is used for different blocks {{{first}}} and {{{second}}}")]
    NameReused {
        name: String,
        first: String,
        second: String,
    },
    #[error("points {first} and {second} lie in the same block of every partition")]
    IndistinguishablePoints { first: Point, second: Point },
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// A base set with a family of partitions of it, optionally naming the blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseSetSpec {
    name: String,
    base_set: Vec<Point>,
    partitions: Vec<Vec<Block>>,
    block_names: Option<Vec<Vec<String>>>,
}

impl BaseSetSpec {
    pub fn new(
        name: impl Into<String>,
        base_set: Vec<Point>,
        partitions: Vec<Vec<Block>>,
        block_names: Option<Vec<Vec<String>>>,
    ) -> Result<Self, PartitionError> {
        if base_set.is_empty() {
            return Err(PartitionError::EmptyBaseSet);
        }
        let mut points = BTreeSet::new();
        for p in &base_set {
            if !points.insert(p) {
                return Err(PartitionError::DuplicatePoint(p.clone()));
            }
        }
        if partitions.is_empty() {
            return Err(PartitionError::NoPartitions);
        }
        for (pi, partition) in partitions.iter().enumerate() {
            let mut used = BTreeSet::new();
            for (bi, block) in partition.iter().enumerate() {
                if block.is_empty() {
                    return Err(PartitionError::EmptyBlock {
                        partition: pi,
                        block: bi,
                    });
                }
                for p in block {
                    if !points.contains(p) {
                        return Err(PartitionError::UnknownPoint {
                            partition: pi,
                            point: p.clone(),
                        });
                    }
                    if !used.insert(p) {
                        return Err(PartitionError::Overlap {
                            partition: pi,
                            point: p.clone(),
                        });
                    }
                }
            }
            if let Some(p) = base_set.iter().find(|p| !used.contains(p)) {
                return Err(PartitionError::Uncovered {
                    partition: pi,
                    point: p.clone(),
                });
            }
        }
        if let Some(names) = &block_names {
            if names.len() != partitions.len() {
                return Err(PartitionError::NameCount {
                    names: names.len(),
                    partitions: partitions.len(),
                });
            }
            for (pi, (n, p)) in names.iter().zip(&partitions).enumerate() {
                if n.len() != p.len() {
                    return Err(PartitionError::NameShape {
                        partition: pi,
                        names: n.len(),
                        blocks: p.len(),
                    });
                }
            }
        }
        Ok(Self {
            name: name.into(),
            base_set,
            partitions,
            block_names,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base_set(&self) -> &[Point] {
        &self.base_set
    }

    pub fn partitions(&self) -> &[Vec<Block>] {
        &self.partitions
    }

    pub fn block_names(&self) -> Option<&[Vec<String>]> {
        self.block_names.as_deref()
    }
}

fn show_block(block: &BTreeSet<&Point>) -> String {
    block
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Pastes the partitions into a hypergraph logic and returns it with the
/// point-induced states, one per base-set point in base-set order.
///
/// Unnamed blocks are called `p<i>b<j>` after their first occurrence
/// (1-based partition and block index).
pub fn logic_from_partitions(
    spec: &BaseSetSpec,
) -> Result<(PartitionLogic, StateSet), PartitionError> {
    let mut atoms: Vec<String> = Vec::new();
    let mut blocks: Vec<BTreeSet<&Point>> = Vec::new();
    let mut by_set: BTreeMap<BTreeSet<&Point>, usize> = BTreeMap::new();
    let mut contexts = Vec::with_capacity(spec.partitions.len());

    for (pi, partition) in spec.partitions.iter().enumerate() {
        let mut context = Vec::with_capacity(partition.len());
        for (bi, block) in partition.iter().enumerate() {
            let set: BTreeSet<&Point> = block.iter().collect();
            let given = spec.block_names.as_ref().map(|n| n[pi][bi].clone());
            let index = match by_set.get(&set) {
                Some(&existing) => {
                    if let Some(name) = given {
                        if name != atoms[existing] {
                            return Err(PartitionError::AmbiguousPasting {
                                block: show_block(&set),
                                first: atoms[existing].clone(),
                                second: name,
                            });
                        }
                    }
                    existing
                }
                None => {
                    let name = given.unwrap_or_else(|| format!("p{}b{}", pi + 1, bi + 1));
                    if let Some(other) = atoms.iter().position(|a| *a == name) {
                        return Err(PartitionError::NameReused {
                            name,
                            first: show_block(&blocks[other]),
                            second: show_block(&set),
                        });
                    }
                    atoms.push(name);
                    blocks.push(set.clone());
                    by_set.insert(set, atoms.len() - 1);
                    atoms.len() - 1
                }
            };
            context.push(index);
        }
        contexts.push(context);
    }

    let logic = PartitionLogic::new(spec.name.clone(), atoms, contexts)?;
    let valuations: Vec<Vec<bool>> = spec
        .base_set
        .iter()
        .map(|p| blocks.iter().map(|b| b.contains(p)).collect())
        .collect();
    for (j, v) in valuations.iter().enumerate() {
        if let Some(i) = valuations[..j].iter().position(|u| u == v) {
            return Err(PartitionError::IndistinguishablePoints {
                first: spec.base_set[i].clone(),
                second: spec.base_set[j].clone(),
            });
        }
    }
    let states = StateSet::with_order(&logic, valuations, StateOrder::PointInduced)?;
    Ok((logic, states))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks(raw: &[&[i64]]) -> Vec<Block> {
        raw.iter()
            .map(|b| b.iter().map(|&p| Point::Int(p)).collect())
            .collect()
    }

    fn points(n: i64) -> Vec<Point> {
        (1..=n).map(Point::Int).collect()
    }

    fn names(raw: &[&[&str]]) -> Vec<Vec<String>> {
        raw.iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn example_a_supports() {
        let spec = BaseSetSpec::new(
            "horizontal_sum",
            points(3),
            vec![
                blocks(&[&[1], &[2, 3]]),
                blocks(&[&[2], &[1, 3]]),
                blocks(&[&[3], &[1, 2]]),
            ],
            Some(names(&[&["p", "¬p"], &["q", "¬q"], &["r", "¬r"]])),
        )
        .unwrap();
        let (logic, states) = logic_from_partitions(&spec).unwrap();
        assert_eq!(logic.atoms(), ["p", "¬p", "q", "¬q", "r", "¬r"]);
        assert_eq!(states.order(), StateOrder::PointInduced);
        let table = states.supports(&logic);
        assert_eq!(table.get("p").unwrap().truthy, ["s1"]);
        assert_eq!(table.get("¬p").unwrap().truthy, ["s2", "s3"]);
        assert_eq!(table.get("¬q").unwrap().truthy, ["s1", "s3"]);
        assert_eq!(table.get("¬r").unwrap().truthy, ["s1", "s2"]);
        // point-induced states are 3 of the 8 admissible ones
        let all = logic.enumerate_states();
        assert_eq!(all.len(), 8);
        assert!(states
            .states()
            .iter()
            .all(|s| logic.is_admissible(&s.values)));
    }

    #[test]
    fn unnamed_equal_blocks_are_pasted() {
        let spec = BaseSetSpec::new(
            "v",
            points(5),
            vec![
                blocks(&[&[1, 2], &[3, 4], &[5]]),
                blocks(&[&[5], &[2, 4], &[1, 3]]),
            ],
            None,
        )
        .unwrap();
        let (logic, _) = logic_from_partitions(&spec).unwrap();
        assert_eq!(logic.atoms(), ["p1b1", "p1b2", "p1b3", "p2b2", "p2b3"]);
        assert_eq!(logic.contexts(), [vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn conflicting_names_for_one_block() {
        let spec = BaseSetSpec::new(
            "v",
            points(5),
            vec![
                blocks(&[&[1, 2], &[3, 4], &[5]]),
                blocks(&[&[5], &[2, 4], &[1, 3]]),
            ],
            Some(names(&[&["a", "b", "c"], &["z", "d", "e"]])),
        )
        .unwrap();
        let err = logic_from_partitions(&spec).unwrap_err();
        assert!(
            matches!(err, PartitionError::AmbiguousPasting { ref first, ref second, .. }
            if first == "c" && second == "z")
        );
    }

    #[test]
    fn one_name_for_two_blocks() {
        let spec = BaseSetSpec::new(
            "v",
            points(3),
            vec![blocks(&[&[1], &[2, 3]]), blocks(&[&[2], &[1, 3]])],
            Some(names(&[&["x", "y"], &["x", "w"]])),
        )
        .unwrap();
        assert!(matches!(
            logic_from_partitions(&spec).unwrap_err(),
            PartitionError::NameReused { .. }
        ));
    }

    #[test]
    fn singleton_partition_is_rejected() {
        let spec = BaseSetSpec::new("d", points(1), vec![blocks(&[&[1]])], None).unwrap();
        let err = logic_from_partitions(&spec).unwrap_err();
        assert_eq!(
            err,
            PartitionError::Logic(LogicError::ContextTooSmall {
                context: 0,
                size: 1
            })
        );
    }

    #[test]
    fn malformed_partitions() {
        let err = BaseSetSpec::new("x", points(3), vec![blocks(&[&[1], &[2]])], None).unwrap_err();
        assert_eq!(
            err,
            PartitionError::Uncovered {
                partition: 0,
                point: Point::Int(3)
            }
        );
        let err =
            BaseSetSpec::new("x", points(2), vec![blocks(&[&[1, 2], &[2]])], None).unwrap_err();
        assert!(matches!(err, PartitionError::Overlap { .. }));
        let err =
            BaseSetSpec::new("x", points(2), vec![blocks(&[&[1], &[2, 7]])], None).unwrap_err();
        assert!(matches!(err, PartitionError::UnknownPoint { .. }));
    }

    #[test]
    fn indistinguishable_points() {
        let spec = BaseSetSpec::new("x", points(3), vec![blocks(&[&[1], &[2, 3]])], None).unwrap();
        assert!(matches!(
            logic_from_partitions(&spec).unwrap_err(),
            PartitionError::IndistinguishablePoints { .. }
        ));
    }
}
