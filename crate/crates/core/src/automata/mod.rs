//! Finite automata and the constructions composed by the decision
//! procedures: subset construction, complement and reachable products.

mod determinize;
mod dfa;
mod json;
mod nfa;
mod product;

pub use determinize::{determinize, DEFAULT_MAX_SUBSETS};
pub use dfa::Dfa;
pub use json::{Automaton, AutomatonJson, TransitionJson};
pub use nfa::Nfa;
pub use product::{product, xor_product};

/// Complement of a total DFA.
pub fn complement(d: &Dfa) -> Dfa {
    d.complement()
}
