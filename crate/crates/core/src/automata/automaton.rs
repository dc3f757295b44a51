use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::substitution::MatrixSubstitution;
use crate::algebra::{NCPoly, Scalar, TableRef, Var, Word};
use crate::error::{Error, Result};

/// Output of a transition: a scalar times a word over the target table.
#[derive(Clone, Debug, PartialEq)]
pub struct Transition {
    pub to: usize,
    pub coeff: Scalar,
    pub word: Word,
}

/// Deterministic finite substitution automaton. Missing transitions are
/// dead: any word that needs one is mapped to 0.
#[derive(Clone, Debug)]
pub struct SubstAutomaton {
    source: TableRef,
    target: TableRef,
    names: Vec<String>,
    start: usize,
    accept: usize,
    trans: BTreeMap<(usize, Var), Transition>,
}

impl SubstAutomaton {
    /// Creates an automaton with a start and an accept state (the same state
    /// if `start_is_accept`).
    pub fn new(source: &TableRef, target: &TableRef, start_is_accept: bool) -> Self {
        let mut names = vec!["s".to_string()];
        if !start_is_accept {
            names.push("t".to_string());
        }
        SubstAutomaton {
            source: source.clone(),
            target: target.clone(),
            start: 0,
            accept: names.len() - 1,
            names,
            trans: BTreeMap::new(),
        }
    }

    /// Builds from explicit state names; used by the text parser.
    pub fn with_states(
        source: &TableRef,
        target: &TableRef,
        names: Vec<String>,
        start: usize,
        accept: usize,
    ) -> Result<Self> {
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::Precondition("duplicate state names".into()));
        }
        if start >= names.len() || accept >= names.len() {
            return Err(Error::Precondition("start/accept state out of range".into()));
        }
        Ok(SubstAutomaton {
            source: source.clone(),
            target: target.clone(),
            names,
            start,
            accept,
            trans: BTreeMap::new(),
        })
    }

    pub fn source(&self) -> &TableRef {
        &self.source
    }

    pub fn target(&self) -> &TableRef {
        &self.target
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn add_transition(
        &mut self,
        from: usize,
        var: Var,
        to: usize,
        coeff: Scalar,
        word: Word,
    ) -> Result<()> {
        if from >= self.names.len() || to >= self.names.len() {
            return Err(Error::Precondition(
                "transition references an unknown state".into(),
            ));
        }
        if var.index() >= self.source.len() || word.letters().iter().any(|v| v.index() >= self.target.len()) {
            return Err(Error::UnknownVar(format!(
                "in transition from {}",
                self.names[from]
            )));
        }
        if self.trans.contains_key(&(from, var)) {
            return Err(Error::Nondeterministic {
                state: self.names[from].clone(),
                var: self.source.name(var).to_string(),
            });
        }
        self.trans.insert((from, var), Transition { to, coeff, word });
        Ok(())
    }

    pub fn transition(&self, from: usize, var: Var) -> Option<&Transition> {
        self.trans.get(&(from, var))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Var, &Transition)> {
        self.trans.iter().map(|(&(f, v), t)| (f, v, t))
    }

    /// The unique run on `w`: `Some((scalar, output))` if it ends in the
    /// accept state.
    pub fn run(&self, w: &Word) -> Option<(Scalar, Word)> {
        let mut s = self.start;
        let mut c = Scalar::one();
        let mut out = Vec::new();
        for v in w.letters() {
            let t = self.trans.get(&(s, *v))?;
            c = &c * &t.coeff;
            out.extend_from_slice(t.word.letters());
            s = t.to;
        }
        (s == self.accept).then_some((c, Word(out)))
    }

    /// Whether the state graph admits a layering with every transition
    /// going from one layer to the next.
    pub fn is_layered(&self) -> bool {
        let mut layer: BTreeMap<usize, usize> = BTreeMap::from([(self.start, 0)]);
        let mut queue = VecDeque::from([self.start]);
        while let Some(s) = queue.pop_front() {
            for (_, t) in self.trans.range((s, Var(0))..=(s, Var(u32::MAX))) {
                let want = layer[&s] + 1;
                match layer.get(&t.to) {
                    Some(&l) if l != want => return false,
                    Some(_) => {}
                    None => {
                        layer.insert(t.to, want);
                        queue.push_back(t.to);
                    }
                }
            }
        }
        true
    }

    /// States on some start-to-accept path, start first, then breadth-first
    /// order (successors by variable id), accept last.
    pub fn useful_states(&self) -> Vec<usize> {
        let mut order = Vec::new();
        let mut seen = vec![false; self.names.len()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for (_, t) in self.trans.range((s, Var(0))..=(s, Var(u32::MAX))) {
                if !seen[t.to] {
                    seen[t.to] = true;
                    queue.push_back(t.to);
                }
            }
        }
        let mut live = vec![false; self.names.len()];
        live[self.accept] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for (&(f, _), t) in &self.trans {
                if live[t.to] && !live[f] {
                    live[f] = true;
                    changed = true;
                }
            }
        }
        let mut out: Vec<usize> = order
            .into_iter()
            .filter(|&s| live[s] && s != self.accept)
            .collect();
        if seen[self.accept] && live[self.start] {
            out.push(self.accept);
        } else {
            // nothing is accepted: keep start and accept so the shape is valid
            out.clear();
            out.push(self.start);
            if self.accept != self.start {
                out.push(self.accept);
            }
        }
        out
    }
}

/// `M_x(i, j)` = output of the transition `(i, x) -> j`, over the useful
/// states (start is row 0, accept the last column).
pub fn automaton_to_substitution(a: &SubstAutomaton) -> Result<MatrixSubstitution> {
    compile(a, Some(3))
}

/// Compilation without the output-degree bound.
pub fn compile_unbounded(a: &SubstAutomaton) -> Result<MatrixSubstitution> {
    compile(a, None)
}

fn compile(a: &SubstAutomaton, max_degree: Option<usize>) -> Result<MatrixSubstitution> {
    let order = a.useful_states();
    let mut index = vec![usize::MAX; a.state_count()];
    for (i, &s) in order.iter().enumerate() {
        index[s] = i;
    }
    let mut m = MatrixSubstitution::new(a.source(), a.target(), order.len())?;
    for (from, var, t) in a.transitions() {
        if let Some(d) = max_degree {
            if t.word.degree() > d {
                return Err(Error::OutputDegree(t.word.degree()));
            }
        }
        let (i, j) = (index[from], index[t.to]);
        if i == usize::MAX || j == usize::MAX || t.coeff.is_zero() {
            continue;
        }
        m.accumulate(
            var,
            i,
            j,
            &NCPoly::monomial(a.target(), t.word.clone(), t.coeff.clone()),
        );
    }
    Ok(m)
}

/// `Σ_{w accepted} f(w) w` for an automaton whose transitions copy the read
/// letter with coefficient 1.
pub fn filter_by_automaton(f: &NCPoly, a: &SubstAutomaton) -> Result<NCPoly> {
    for (from, v, t) in a.transitions() {
        let copies = t.coeff.is_one()
            && t.word.degree() == 1
            && a.target().name(t.word.letters()[0]) == a.source().name(v);
        if !copies {
            return Err(Error::Precondition(format!(
                "transition from {} on {} is not an identity output",
                a.state_name(from),
                a.source().name(v)
            )));
        }
    }
    let f = f.retable(a.source())?;
    Ok(NCPoly::from_terms(
        f.table(),
        f.terms()
            .filter(|(w, _)| a.run(w).is_some())
            .map(|(w, c)| (w.clone(), c.clone())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarTable;
    use crate::families::gen_pal;
    use crate::Limits;

    fn letter(v: u32) -> Word {
        Word::letter(Var(v))
    }

    /// Accepts length-`d` words; `first` restricts the first letter.
    fn length_automaton(t: &TableRef, d: usize, first: Option<Var>) -> SubstAutomaton {
        let mut a = SubstAutomaton::new(t, t, d == 0);
        let mut prev = a.start();
        for i in 0..d {
            let next = if i + 1 == d {
                a.accept()
            } else {
                a.add_state(format!("q{}", i + 1))
            };
            for v in t.vars() {
                if i == 0 && first.is_some_and(|f| f != v) {
                    continue;
                }
                a.add_transition(prev, v, next, Scalar::one(), Word::letter(v))
                    .unwrap();
            }
            prev = next;
        }
        a
    }

    #[test]
    fn identity_chain_is_superdiagonal() {
        let t = VarTable::shared(["x0", "x1"]);
        let a = length_automaton(&t, 2, None);
        assert!(a.is_layered());
        let m = automaton_to_substitution(&a).unwrap();
        assert_eq!(m.dim(), 3);
        let mx = m.matrix(Var(0)).unwrap();
        assert_eq!(mx.get(0, 1), NCPoly::var(&t, Var(0)));
        assert_eq!(mx.get(1, 2), NCPoly::var(&t, Var(0)));
        assert_eq!(mx.nnz(), 2);
    }

    #[test]
    fn filtering() {
        let t = VarTable::shared(["x0", "x1"]);
        let lim = Limits::default();
        let pal = gen_pal(2, &lim).unwrap();
        let starts = filter_by_automaton(&pal, &length_automaton(&t, 4, Some(Var(0)))).unwrap();
        assert_eq!(starts.len(), 2);
        assert!(starts.terms().all(|(w, _)| w.letters()[0] == Var(0)));
        assert_eq!(
            filter_by_automaton(&pal, &length_automaton(&t, 4, None)).unwrap(),
            pal
        );
        assert!(filter_by_automaton(&pal, &length_automaton(&t, 3, None))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn nondeterminism_and_degree_checks() {
        let t = VarTable::shared(["x"]);
        let mut a = SubstAutomaton::new(&t, &t, false);
        a.add_transition(0, Var(0), 1, Scalar::one(), letter(0)).unwrap();
        assert!(matches!(
            a.add_transition(0, Var(0), 0, Scalar::one(), letter(0)),
            Err(Error::Nondeterministic { .. })
        ));
        let mut b = SubstAutomaton::new(&t, &t, false);
        b.add_transition(0, Var(0), 1, Scalar::one(), Word(vec![Var(0); 4]))
            .unwrap();
        assert_eq!(automaton_to_substitution(&b).err(), Some(Error::OutputDegree(4)));
    }

    #[test]
    fn dead_sink_gives_zero_rows() {
        let t = VarTable::shared(["x", "y"]);
        let mut a = SubstAutomaton::new(&t, &t, false);
        let sink = a.add_state("dead");
        a.add_transition(0, Var(0), 1, Scalar::one(), letter(0)).unwrap();
        a.add_transition(0, Var(1), sink, Scalar::one(), letter(1))
            .unwrap();
        a.add_transition(sink, Var(1), sink, Scalar::one(), letter(1))
            .unwrap();
        let m = automaton_to_substitution(&a).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.matrix(Var(1)).is_none());
        let y = NCPoly::var(&t, Var(1));
        assert!(m.evaluate(&y, &Limits::default()).unwrap().is_zero());
    }

    #[test]
    fn run_matches_matrices() {
        let t = VarTable::shared(["x0", "x1"]);
        let a = length_automaton(&t, 3, Some(Var(1)));
        let m = automaton_to_substitution(&a).unwrap();
        let lim = Limits::default();
        for bits in 0..8u32 {
            let w = Word((0..3).map(|i| Var((bits >> i) & 1)).collect());
            let g = NCPoly::monomial(&t, w.clone(), Scalar::one());
            let expect = a
                .run(&w)
                .map_or_else(|| NCPoly::zero(&t), |(c, out)| NCPoly::monomial(&t, out, c));
            assert_eq!(m.evaluate(&g, &lim).unwrap(), expect);
        }
    }
}
