//! Shared fixtures for the criterion benchmarks.

use ncreduce::circuits::Circuit;
use ncreduce::random::{random_circuit, rng};
use ncreduce::{Field, TableRef, VarTable};

pub fn table(vars: usize) -> TableRef {
    VarTable::shared((1..=vars).map(|i| format!("x{i}")))
}

/// Seeded circuits of the size used by the completeness checks.
pub fn circuits(count: u64) -> Vec<Circuit> {
    (0..count)
        .map(|seed| random_circuit(&mut rng(seed), &table(3), 4, 6, Field::Rational))
        .collect()
}
