use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

use super::{Dfa, Nfa};

/// Interchange form shared by NFAs and DFAs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonJson {
    pub alphabet: Alphabet,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<TransitionJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionJson {
    pub from: usize,
    pub symbol: String,
    pub to: Vec<usize>,
}

/// An automaton read from JSON, classified by the loader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Nfa(Nfa),
    Dfa(Dfa),
}

impl Automaton {
    /// Parses the JSON schema. The result is a [`Dfa`] when every
    /// `(state, symbol)` pair has exactly one target, an [`Nfa`] otherwise.
    pub fn from_json(text: &str) -> Result<Automaton> {
        let raw: AutomatonJson = serde_json::from_str(text)?;
        let nfa = raw.to_nfa()?;
        Ok(match Dfa::from_nfa(&nfa) {
            Ok(dfa) => Automaton::Dfa(dfa),
            Err(_) => Automaton::Nfa(nfa),
        })
    }

    pub fn to_nfa(&self) -> Nfa {
        match self {
            Automaton::Nfa(n) => n.clone(),
            Automaton::Dfa(d) => d.to_nfa(),
        }
    }
}

impl AutomatonJson {
    pub fn to_nfa(&self) -> Result<Nfa> {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.states, self.initial)?;
        for &q in &self.accepting {
            nfa.set_accepting(q, true)?;
        }
        for t in &self.transitions {
            let a = self
                .alphabet
                .index_of(&t.symbol)
                .ok_or_else(|| Error::UndeclaredSymbol(t.symbol.clone()))?;
            for &to in &t.to {
                nfa.add_transition(t.from, a, to)?;
            }
        }
        Ok(nfa)
    }
}

impl From<&Nfa> for AutomatonJson {
    fn from(nfa: &Nfa) -> Self {
        let al = nfa.alphabet();
        let mut transitions = Vec::new();
        for q in 0..nfa.state_count() {
            for a in 0..al.len() {
                let to = nfa.successors(q, a);
                if !to.is_empty() {
                    transitions.push(TransitionJson {
                        from: q,
                        symbol: al.symbol(a).to_string(),
                        to: to.to_vec(),
                    });
                }
            }
        }
        AutomatonJson {
            alphabet: al.clone(),
            states: nfa.state_count(),
            initial: nfa.initial(),
            accepting: nfa.accepting_states().collect(),
            transitions,
        }
    }
}

impl From<&Dfa> for AutomatonJson {
    fn from(dfa: &Dfa) -> Self {
        AutomatonJson::from(&dfa.to_nfa())
    }
}

impl Nfa {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AutomatonJson::from(self)).expect("serializable")
    }
}

impl Dfa {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AutomatonJson::from(self)).expect("serializable")
    }
}
