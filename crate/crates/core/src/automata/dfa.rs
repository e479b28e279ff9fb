use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

use super::Nfa;

/// Deterministic finite automaton with a total transition function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    // indexed by state * |A| + symbol
    transitions: Vec<usize>,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a flat row-major transition table
    /// (`transitions[q * |A| + a]`).
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        transitions: Vec<usize>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = accepting.len();
        let k = alphabet.len();
        if n == 0 {
            return Err(Error::MalformedAutomaton(
                "an automaton needs at least one state".into(),
            ));
        }
        if initial >= n {
            return Err(Error::MalformedAutomaton(format!(
                "initial state {initial} out of range (states: {n})"
            )));
        }
        if transitions.len() != n * k {
            return Err(Error::NotDeterministic(format!(
                "expected {} transitions, got {}",
                n * k,
                transitions.len()
            )));
        }
        if let Some(bad) = transitions.iter().find(|&&t| t >= n) {
            return Err(Error::MalformedAutomaton(format!(
                "target state {bad} out of range"
            )));
        }
        Ok(Dfa {
            alphabet,
            initial,
            transitions,
            accepting,
        })
    }

    /// Builds a DFA by evaluating `delta` on every pair.
    pub fn from_fn(
        alphabet: Alphabet,
        state_count: usize,
        initial: usize,
        delta: impl Fn(usize, usize) -> usize,
        accepting: impl Fn(usize) -> bool,
    ) -> Result<Self> {
        let k = alphabet.len();
        let transitions = (0..state_count)
            .flat_map(|q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| delta(q, a))
            .collect();
        let accepting = (0..state_count).map(accepting).collect();
        Dfa::new(alphabet, initial, transitions, accepting)
    }

    /// One-state DFA for the empty language.
    pub fn empty_language(alphabet: Alphabet) -> Dfa {
        Dfa::from_fn(alphabet, 1, 0, |_, _| 0, |_| false).expect("valid")
    }

    /// One-state DFA for `A*`.
    pub fn universal(alphabet: Alphabet) -> Dfa {
        Dfa::from_fn(alphabet, 1, 0, |_, _| 0, |_| true).expect("valid")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.transitions[state * self.alphabet.len() + symbol]
    }

    pub fn run(&self, from: usize, word: &[usize]) -> usize {
        word.iter().fold(from, |q, &a| self.next(q, a))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.run(self.initial, word)]
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter_map(|(q, &f)| f.then_some(q))
    }

    pub fn accepting_count(&self) -> usize {
        self.accepting.iter().filter(|&&f| f).count()
    }

    /// Same graph with the accepting set inverted.
    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            transitions: self.transitions.clone(),
            accepting: self.accepting.iter().map(|f| !f).collect(),
        }
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        let mut nfa = Nfa::new(self.alphabet.clone(), self.state_count(), self.initial)
            .expect("dfa is well formed");
        for q in 0..self.state_count() {
            for a in 0..k {
                nfa.add_transition(q, a, self.next(q, a)).expect("in range");
            }
            nfa.set_accepting(q, self.accepting[q]).expect("in range");
        }
        nfa
    }

    /// Converts a deterministic, total NFA.
    pub fn from_nfa(nfa: &Nfa) -> Result<Dfa> {
        if !nfa.is_deterministic_total() {
            return Err(Error::NotDeterministic(
                "some (state, symbol) pair does not have exactly one successor".into(),
            ));
        }
        Dfa::from_fn(
            nfa.alphabet().clone(),
            nfa.state_count(),
            nfa.initial(),
            |q, a| nfa.successors(q, a)[0],
            |q| nfa.is_accepting(q),
        )
    }

    /// Structural totality check; always true for values built through the
    /// public constructors.
    pub fn is_total(&self) -> bool {
        self.transitions.len() == self.state_count() * self.alphabet.len()
            && self.transitions.iter().all(|&t| t < self.state_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_star(al: &Alphabet) -> Dfa {
        // a1* over {a1, a2}: state 0 accepting loop on a1, state 1 sink
        Dfa::from_fn(
            al.clone(),
            2,
            0,
            |q, a| if q == 0 && a == 0 { 0 } else { 1 },
            |q| q == 0,
        )
        .unwrap()
    }

    #[test]
    fn complement_of_empty_is_universal() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let c = Dfa::empty_language(al.clone()).complement();
        assert!(c.accepts(&[]));
        assert!(c.accepts(&[0, 1, 1]));
    }

    #[test]
    fn complement_is_an_involution() {
        let al = Alphabet::new(["a1", "a2"]).unwrap();
        let d = a_star(&al);
        assert_eq!(d.complement().complement(), d);
        assert!(!d.complement().accepts(&[0, 0]));
        assert!(d.complement().accepts(&[0, 1]));
    }

    #[test]
    fn validation() {
        let al = Alphabet::new(["a"]).unwrap();
        assert!(Dfa::new(al.clone(), 0, vec![1], vec![true]).is_err());
        assert!(Dfa::new(al.clone(), 0, vec![], vec![true]).is_err());
        assert!(Dfa::new(al.clone(), 2, vec![0], vec![true]).is_err());
        assert!(Dfa::new(al, 0, vec![0], vec![true]).unwrap().is_total());
    }

    #[test]
    fn nfa_round_trip() {
        let al = Alphabet::new(["a1", "a2"]).unwrap();
        let d = a_star(&al);
        assert_eq!(Dfa::from_nfa(&d.to_nfa()).unwrap(), d);
    }
}
