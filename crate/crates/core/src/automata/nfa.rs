use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Nondeterministic finite automaton without ε-moves.
///
/// Successor sets are kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: usize,
    // indexed by state * |A| + symbol
    transitions: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

impl Nfa {
    /// An automaton with `state_count` states, no transitions and no
    /// accepting states.
    pub fn new(alphabet: Alphabet, state_count: usize, initial: usize) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::MalformedAutomaton(
                "an automaton needs at least one state".into(),
            ));
        }
        if initial >= state_count {
            return Err(Error::MalformedAutomaton(format!(
                "initial state {initial} out of range (states: {state_count})"
            )));
        }
        let k = alphabet.len();
        Ok(Nfa {
            alphabet,
            initial,
            transitions: vec![Vec::new(); state_count * k],
            accepting: vec![false; state_count],
        })
    }

    pub fn add_transition(&mut self, from: usize, symbol: usize, to: usize) -> Result<()> {
        let n = self.state_count();
        if from >= n || to >= n || symbol >= self.alphabet.len() {
            return Err(Error::MalformedAutomaton(format!(
                "transition ({from}, {symbol}) -> {to} out of range"
            )));
        }
        let k = self.alphabet.len();
        let succ = &mut self.transitions[from * k + symbol];
        if let Err(pos) = succ.binary_search(&to) {
            succ.insert(pos, to);
        }
        Ok(())
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) -> Result<()> {
        let slot = self.accepting.get_mut(state).ok_or_else(|| {
            Error::MalformedAutomaton(format!("accepting state {state} out of range"))
        })?;
        *slot = accepting;
        Ok(())
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

    pub fn successors(&self, state: usize, symbol: usize) -> &[usize] {
        &self.transitions[state * self.alphabet.len() + symbol]
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

    /// Set simulation from the initial state.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current = vec![false; self.state_count()];
        current[self.initial] = true;
        for &a in word {
            let mut next = vec![false; self.state_count()];
            for (q, _) in current.iter().enumerate().filter(|(_, &on)| on) {
                for &r in self.successors(q, a) {
                    next[r] = true;
                }
            }
            current = next;
        }
        current.iter().zip(&self.accepting).any(|(&on, &f)| on && f)
    }

    /// True when every `(state, symbol)` pair has exactly one successor.
    pub fn is_deterministic_total(&self) -> bool {
        self.transitions.iter().all(|s| s.len() == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simulation() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        // words ending in "ab"
        let mut n = Nfa::new(al, 3, 0).unwrap();
        n.add_transition(0, 0, 0).unwrap();
        n.add_transition(0, 1, 0).unwrap();
        n.add_transition(0, 0, 1).unwrap();
        n.add_transition(1, 1, 2).unwrap();
        n.set_accepting(2, true).unwrap();
        assert!(n.accepts(&[0, 1]));
        assert!(n.accepts(&[1, 1, 0, 1]));
        assert!(!n.accepts(&[0, 1, 0]));
        assert!(!n.accepts(&[]));
        assert_eq!(n.successors(0, 0), [0, 1]);
        assert!(!n.is_deterministic_total());
    }

    #[test]
    fn range_checks() {
        let al = Alphabet::new(["a"]).unwrap();
        assert!(Nfa::new(al.clone(), 0, 0).is_err());
        assert!(Nfa::new(al.clone(), 1, 1).is_err());
        let mut n = Nfa::new(al, 1, 0).unwrap();
        assert!(n.add_transition(0, 1, 0).is_err());
        assert!(n.add_transition(0, 0, 3).is_err());
        assert!(n.set_accepting(2, true).is_err());
    }
}
