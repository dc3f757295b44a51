use std::collections::BTreeMap;

use crate::algebra::{Scalar, TableRef, Var, Word};
use crate::automata::SubstAutomaton;
use crate::error::{Error, Result};

/// Builds a layered automaton of a fixed length `len`, naming states by a
/// key and a layer. Layer 0 with key `start_key` is the start state and layer
/// `len` with key `accept_key` is the accept state; every other
/// `(layer, key)` is created on first use.
pub(crate) struct Layered<K: Ord + Clone + std::fmt::Debug> {
    pub a: SubstAutomaton,
    len: usize,
    start_key: K,
    accept_key: K,
    ids: BTreeMap<(usize, K), usize>,
    budget: usize,
}

impl<K: Ord + Clone + std::fmt::Debug> Layered<K> {
    pub fn new(
        source: &TableRef,
        target: &TableRef,
        len: usize,
        start_key: K,
        accept_key: K,
        budget: usize,
    ) -> Self {
        let same = len == 0 && start_key == accept_key;
        Layered {
            a: SubstAutomaton::new(source, target, same),
            len,
            start_key,
            accept_key,
            ids: BTreeMap::new(),
            budget,
        }
    }

    pub fn state(&mut self, layer: usize, key: &K) -> Result<usize> {
        if layer == 0 && *key == self.start_key {
            return Ok(self.a.start());
        }
        if layer == self.len && *key == self.accept_key {
            return Ok(self.a.accept());
        }
        if let Some(&id) = self.ids.get(&(layer, key.clone())) {
            return Ok(id);
        }
        if self.a.state_count() >= self.budget {
            return Err(Error::StateBudget(self.budget));
        }
        let id = self.a.add_state(format!("{key:?}@{layer}").replace(' ', ""));
        self.ids.insert((layer, key.clone()), id);
        Ok(id)
    }

    /// Adds `(layer, from) --v--> (layer + 1, to)`.
    pub fn edge(&mut self, layer: usize, from: &K, v: Var, to: &K, coeff: Scalar, word: Word) -> Result<()> {
        if layer >= self.len {
            return Ok(());
        }
        let f = self.state(layer, from)?;
        let t = self.state(layer + 1, to)?;
        self.a.add_transition(f, v, t, coeff, word)
    }

    pub fn finish(self) -> SubstAutomaton {
        self.a
    }
}
