//! Finite partition logics given as hypergraphs of contexts, together with
//! their two-valued states, atom supports and partition representations.
//!
//! A [`PartitionLogic`] is a list of named atoms and a list of contexts, each
//! context being a list of atom indices. A two-valued state assigns `1` to
//! exactly one atom of every context.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("a logic needs at least one atom")]
    NoAtoms,
    #[error("a logic needs at least one context")]
    NoContexts,
    #[error("empty atom name at position {0}")]
    EmptyAtomName(usize),
    #[error("duplicate atom name `{0}`")]
    DuplicateAtom(String),
    #[error("context {context} refers to unknown atom index {index}")]
    UnknownAtomIndex { context: usize, index: usize },
    #[error("context {context} lists atom `{atom}` more than once")]
    RepeatedAtom { context: usize, atom: String },
    #[error("context {context} has {size} atom(s), at least 2 are required")]
    ContextTooSmall { context: usize, size: usize },
    #[error("atom `{0}` belongs to no context")]
    AtomInNoContext(String),
    #[error("context {inner} is contained in context {outer}")]
    NestedContext { inner: usize, outer: usize },
    #[error("state {state} has {arity} values but the logic has {atoms} atoms")]
    StateArity {
        state: usize,
        arity: usize,
        atoms: usize,
    },
    #[error("state {state} is not admissible: context {context} has {ones} true atoms")]
    Inadmissible {
        state: usize,
        context: usize,
        ones: usize,
    },
    #[error("states {first} and {second} are the same valuation")]
    DuplicateState { first: usize, second: usize },
    #[error("context {context} is not represented by a partition of the states: {reason}")]
    NotAPartition { context: usize, reason: String },
}

/// A finite pasting of Boolean contexts over a shared list of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionLogic {
    name: String,
    atoms: Vec<String>,
    contexts: Vec<Vec<usize>>,
}

impl PartitionLogic {
    /// Validates and builds a logic. Atom and context order is kept as given.
    pub fn new(
        name: impl Into<String>,
        atoms: Vec<String>,
        contexts: Vec<Vec<usize>>,
    ) -> Result<Self, LogicError> {
        if atoms.is_empty() {
            return Err(LogicError::NoAtoms);
        }
        if contexts.is_empty() {
            return Err(LogicError::NoContexts);
        }
        let mut seen = BTreeSet::new();
        for (i, atom) in atoms.iter().enumerate() {
            if atom.is_empty() {
                return Err(LogicError::EmptyAtomName(i));
            }
            if !seen.insert(atom.as_str()) {
                return Err(LogicError::DuplicateAtom(atom.clone()));
            }
        }

        let mut covered = vec![false; atoms.len()];
        let mut sets = Vec::with_capacity(contexts.len());
        for (c, context) in contexts.iter().enumerate() {
            let mut set = BTreeSet::new();
            for &index in context {
                if index >= atoms.len() {
                    return Err(LogicError::UnknownAtomIndex { context: c, index });
                }
                if !set.insert(index) {
                    return Err(LogicError::RepeatedAtom {
                        context: c,
                        atom: atoms[index].clone(),
                    });
                }
                covered[index] = true;
            }
            if set.len() < 2 {
                return Err(LogicError::ContextTooSmall {
                    context: c,
                    size: set.len(),
                });
            }
            sets.push(set);
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            return Err(LogicError::AtomInNoContext(atoms[i].clone()));
        }
        for (i, inner) in sets.iter().enumerate() {
            for (j, outer) in sets.iter().enumerate() {
                if i != j && inner.is_subset(outer) && (inner.len() < outer.len() || i > j) {
                    return Err(LogicError::NestedContext { inner: i, outer: j });
                }
            }
        }

        Ok(Self {
            name: name.into(),
            atoms,
            contexts,
        })
    }

    /// Builds a logic from contexts spelled with atom names, atoms taken in
    /// order of first appearance.
    pub fn from_named_contexts<S: AsRef<str>>(
        name: impl Into<String>,
        contexts: &[Vec<S>],
    ) -> Result<Self, LogicError> {
        let mut atoms: Vec<String> = Vec::new();
        let mut index = BTreeMap::new();
        let mut indexed = Vec::with_capacity(contexts.len());
        for context in contexts {
            let mut row = Vec::with_capacity(context.len());
            for atom in context {
                let atom = atom.as_ref();
                let i = *index.entry(atom.to_string()).or_insert_with(|| {
                    atoms.push(atom.to_string());
                    atoms.len() - 1
                });
                row.push(i);
            }
            indexed.push(row);
        }
        Self::new(name, atoms, indexed)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// True when the two atoms occur together in some context.
    pub fn share_context(&self, x: usize, y: usize) -> bool {
        self.contexts
            .iter()
            .any(|c| c.contains(&x) && c.contains(&y))
    }

    /// Index of the first context violating the exactly-one rule for
    /// `values`, with the number of true atoms it holds.
    pub fn first_violation(&self, values: &[bool]) -> Option<(usize, usize)> {
        self.contexts.iter().enumerate().find_map(|(c, context)| {
            let ones = context.iter().filter(|&&a| values[a]).count();
            (ones != 1).then_some((c, ones))
        })
    }

    pub fn is_admissible(&self, values: &[bool]) -> bool {
        values.len() == self.atoms.len() && self.first_violation(values).is_none()
    }

    /// All two-valued states, in descending lexicographic order over the
    /// atom declaration order (true sorts before false).
    pub fn enumerate_states(&self) -> StateSet {
        let mut found = Vec::new();
        let mut values = vec![false; self.atoms.len()];
        // contexts containing each atom
        let mut membership = vec![Vec::new(); self.atoms.len()];
        for (c, context) in self.contexts.iter().enumerate() {
            for &a in context {
                membership[a].push(c);
            }
        }
        let mut ones = vec![0usize; self.contexts.len()];
        let mut open = self.contexts.iter().map(Vec::len).collect::<Vec<_>>();
        self.search(
            0,
            &membership,
            &mut values,
            &mut ones,
            &mut open,
            &mut found,
        );
        StateSet::from_valuations(found, StateOrder::Canonical)
    }

    fn search(
        &self,
        atom: usize,
        membership: &[Vec<usize>],
        values: &mut Vec<bool>,
        ones: &mut [usize],
        open: &mut [usize],
        found: &mut Vec<Vec<bool>>,
    ) {
        if atom == values.len() {
            found.push(values.clone());
            return;
        }
        let contexts = &membership[atom];
        for choice in [true, false] {
            let feasible = contexts.iter().all(|&c| {
                if choice {
                    ones[c] == 0
                } else {
                    // the last unassigned atom of a context with no true atom must be true
                    !(ones[c] == 0 && open[c] == 1)
                }
            });
            if !feasible {
                continue;
            }
            values[atom] = choice;
            for &c in contexts {
                open[c] -= 1;
                ones[c] += usize::from(choice);
            }
            self.search(atom + 1, membership, values, ones, open, found);
            for &c in contexts {
                open[c] += 1;
                ones[c] -= usize::from(choice);
            }
        }
        values[atom] = false;
    }
}

/// Where the order of a [`StateSet`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateOrder {
    /// Full enumeration, descending lexicographic.
    Canonical,
    /// Order given explicitly in a spec file.
    Pinned,
    /// One state per point of a base set, in base-set order.
    PointInduced,
}

/// A 0/1 valuation of the atoms, with its label `s1`, `s2`, ...
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoValuedState {
    pub label: String,
    pub values: Vec<bool>,
}

impl TwoValuedState {
    pub fn value(&self, atom: usize) -> bool {
        self.values[atom]
    }

    /// The valuation as a string of `0`/`1` digits.
    pub fn bits(&self) -> String {
        self.values
            .iter()
            .map(|&v| if v { '1' } else { '0' })
            .collect()
    }
}

/// Ordered, labelled list of distinct two-valued states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSet {
    states: Vec<TwoValuedState>,
    order: StateOrder,
}

impl StateSet {
    fn from_valuations(valuations: Vec<Vec<bool>>, order: StateOrder) -> Self {
        let states = valuations
            .into_iter()
            .enumerate()
            .map(|(i, values)| TwoValuedState {
                label: state_label(i),
                values,
            })
            .collect();
        Self { states, order }
    }

    /// Checks that every valuation is admissible for `logic` and that no two
    /// coincide, then labels them in the given order.
    pub fn with_order(
        logic: &PartitionLogic,
        valuations: Vec<Vec<bool>>,
        order: StateOrder,
    ) -> Result<Self, LogicError> {
        for (s, values) in valuations.iter().enumerate() {
            if values.len() != logic.atom_count() {
                return Err(LogicError::StateArity {
                    state: s,
                    arity: values.len(),
                    atoms: logic.atom_count(),
                });
            }
            if let Some((context, ones)) = logic.first_violation(values) {
                return Err(LogicError::Inadmissible {
                    state: s,
                    context,
                    ones,
                });
            }
        }
        for second in 0..valuations.len() {
            if let Some(first) = valuations[..second]
                .iter()
                .position(|v| *v == valuations[second])
            {
                return Err(LogicError::DuplicateState { first, second });
            }
        }
        Ok(Self::from_valuations(valuations, order))
    }

    pub fn pinned(logic: &PartitionLogic, valuations: Vec<Vec<bool>>) -> Result<Self, LogicError> {
        Self::with_order(logic, valuations, StateOrder::Pinned)
    }

    pub fn states(&self) -> &[TwoValuedState] {
        &self.states
    }

    pub fn order(&self) -> StateOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.states.iter().map(|s| s.label.as_str())
    }

    /// Same valuations as `other`, ignoring order and labels.
    pub fn same_valuations(&self, other: &StateSet) -> bool {
        let mine: BTreeSet<_> = self.states.iter().map(|s| &s.values).collect();
        let theirs: BTreeSet<_> = other.states.iter().map(|s| &s.values).collect();
        mine == theirs
    }

    /// Support set of an atom as state indices (ascending).
    pub fn support_indices(&self, atom: usize) -> Vec<usize> {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.value(atom))
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether distinct atoms have distinct supports. On failure the first
    /// colliding pair (in declaration order) is returned.
    pub fn separation(&self, logic: &PartitionLogic) -> Separation {
        let supports: Vec<_> = (0..logic.atom_count())
            .map(|a| self.support_indices(a))
            .collect();
        for y in 0..supports.len() {
            if let Some(x) = supports[..y].iter().position(|s| *s == supports[y]) {
                return Separation::Collision {
                    first: logic.atoms()[x].clone(),
                    second: logic.atoms()[y].clone(),
                };
            }
        }
        Separation::Separating
    }

    pub fn is_separating(&self, logic: &PartitionLogic) -> bool {
        self.separation(logic) == Separation::Separating
    }

    pub fn supports(&self, logic: &PartitionLogic) -> SupportTable {
        let rows = logic
            .atoms()
            .iter()
            .enumerate()
            .map(|(a, atom)| {
                let (truthy, falsy): (Vec<_>, Vec<_>) =
                    self.states.iter().partition(|s| s.value(a));
                AtomSupport {
                    atom: atom.clone(),
                    truthy: truthy.into_iter().map(|s| s.label.clone()).collect(),
                    falsy: falsy.into_iter().map(|s| s.label.clone()).collect(),
                }
            })
            .collect();
        SupportTable { rows }
    }

    /// For every context, the supports of its atoms in context order. Each
    /// context must induce a partition of the state labels into nonempty,
    /// pairwise disjoint blocks.
    pub fn partition_representation(
        &self,
        logic: &PartitionLogic,
    ) -> Result<Vec<Vec<Vec<String>>>, LogicError> {
        let mut out = Vec::with_capacity(logic.contexts().len());
        for (c, context) in logic.contexts().iter().enumerate() {
            let mut hits = vec![0usize; self.len()];
            let mut blocks = Vec::with_capacity(context.len());
            for &atom in context {
                let support = self.support_indices(atom);
                if support.is_empty() {
                    return Err(LogicError::NotAPartition {
                        context: c,
                        reason: format!("atom `{}` is true in no state", logic.atoms()[atom]),
                    });
                }
                for &s in &support {
                    hits[s] += 1;
                }
                blocks.push(
                    support
                        .into_iter()
                        .map(|s| self.states[s].label.clone())
                        .collect::<Vec<_>>(),
                );
            }
            if let Some(s) = hits.iter().position(|&h| h != 1) {
                let reason = if hits[s] == 0 {
                    format!("state {} is in no block", self.states[s].label)
                } else {
                    format!("state {} is in {} blocks", self.states[s].label, hits[s])
                };
                return Err(LogicError::NotAPartition { context: c, reason });
            }
            out.push(blocks);
        }
        Ok(out)
    }
}

/// Label of the state at zero-based position `i`.
pub fn state_label(i: usize) -> String {
    format!("s{}", i + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    Separating,
    /// Two atoms with identical supports.
    Collision {
        first: String,
        second: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSupport {
    pub atom: String,
    /// T(x): labels of states valuing the atom 1, ascending.
    pub truthy: Vec<String>,
    /// F(x): the complement, ascending.
    pub falsy: Vec<String>,
}

/// T/F sets for every atom, in atom declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportTable {
    pub rows: Vec<AtomSupport>,
}

impl SupportTable {
    pub fn get(&self, atom: &str) -> Option<&AtomSupport> {
        self.rows.iter().find(|r| r.atom == atom)
    }
}

impl fmt::Display for SupportTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(
                f,
                "T({}) = {{{}}}  F({}) = {{{}}}",
                row.atom,
                row.truthy.join(","),
                row.atom,
                row.falsy.join(",")
            )?;
        }
        Ok(())
    }
}
