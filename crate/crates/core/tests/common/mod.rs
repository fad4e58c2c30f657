//! Test oracles and random logic generators. Nothing here calls into the
//! enumeration or support code under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use quantum_square::{
    logic_from_partitions, parse_logic_spec, BaseSetSpec, PartitionLogic, Point, StateSet,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every 0/1 vector over the atoms with exactly one true atom per context,
/// by filtering all 2^m assignments.
pub fn brute_force_states(atoms: usize, contexts: &[Vec<usize>]) -> BTreeSet<Vec<bool>> {
    assert!(atoms <= 20, "oracle is exponential");
    (0u32..1 << atoms)
        .map(|mask| {
            (0..atoms)
                .map(|i| mask & (1 << i) != 0)
                .collect::<Vec<bool>>()
        })
        .filter(|v| {
            contexts
                .iter()
                .all(|c| c.iter().filter(|&&a| v[a]).count() == 1)
        })
        .collect()
}

pub fn valuations(states: &StateSet) -> BTreeSet<Vec<bool>> {
    states.states().iter().map(|s| s.values.clone()).collect()
}

/// Supports recomputed column by column from raw valuations.
pub fn oracle_supports(atoms: usize, states: &[Vec<bool>]) -> Vec<BTreeSet<usize>> {
    (0..atoms)
        .map(|a| (0..states.len()).filter(|&s| states[s][a]).collect())
        .collect()
}

/// Whether all supports are pairwise distinct.
pub fn oracle_separating(atoms: usize, states: &[Vec<bool>]) -> bool {
    let supports = oracle_supports(atoms, states);
    let distinct: BTreeSet<_> = supports.iter().collect();
    distinct.len() == supports.len()
}

pub fn bits(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}

pub fn resolve(text: &str) -> (PartitionLogic, StateSet) {
    parse_logic_spec(text).unwrap().resolve().unwrap()
}

/// A random hypergraph logic with `2..=max_atoms` atoms, or `None` when the
/// draw is not a valid logic (nested or duplicate contexts).
pub fn random_hypergraph<R: Rng>(rng: &mut R, max_atoms: usize) -> Option<PartitionLogic> {
    let m = rng.gen_range(2..=max_atoms);
    let k = rng.gen_range(1..=4);
    let atoms: Vec<usize> = (0..m).collect();
    let mut contexts: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            let size = rng.gen_range(2..=m.min(4));
            let mut c: Vec<usize> = atoms.choose_multiple(rng, size).copied().collect();
            c.sort_unstable();
            c
        })
        .collect();
    for a in 0..m {
        if !contexts.iter().any(|c| c.contains(&a)) {
            let i = rng.gen_range(0..contexts.len());
            contexts[i].push(a);
        }
    }
    let names = (0..m).map(|i| format!("x{i}")).collect();
    PartitionLogic::new("random", names, contexts).ok()
}

/// A random partition logic over 2..=6 points with its point-induced
/// states, or `None` when the draw is degenerate or has more than
/// `max_atoms` atoms.
pub fn random_partition_logic<R: Rng>(
    rng: &mut R,
    max_atoms: usize,
) -> Option<(PartitionLogic, StateSet)> {
    let n = rng.gen_range(2..=6);
    let k = rng.gen_range(1..=3);
    let base: Vec<Point> = (1..=n as i64).map(Point::Int).collect();
    let partitions = (0..k)
        .map(|_| {
            let blocks = rng.gen_range(2..=n);
            let mut assigned: Vec<Vec<Point>> = vec![Vec::new(); blocks];
            for p in &base {
                assigned[rng.gen_range(0..blocks)].push(p.clone());
            }
            assigned.retain(|b| !b.is_empty());
            assigned
        })
        .collect();
    let spec = BaseSetSpec::new("random", base, partitions, None).ok()?;
    let (logic, states) = logic_from_partitions(&spec).ok()?;
    (logic.atom_count() <= max_atoms).then_some((logic, states))
}
