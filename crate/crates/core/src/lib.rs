//! Decision procedures for equality and almost-equivalence of regular
//! languages over an explicitly declared alphabet.
//!
//! Languages are given as regular expressions, NFAs or DFAs and are
//! normalized to total DFAs (Thompson construction, ε-elimination, subset
//! construction). On top of that the crate decides
//!
//! * equality, by emptiness of the XOR automaton,
//! * p-equivalence, i.e. whether the symmetric difference has asymptotic
//!   density zero, via a sink-SCC condition on the XOR automaton,
//! * f-equivalence (finite symmetric difference) and E-equivalence
//!   (symmetric difference contained in a given regular language),
//! * the zero-one problem (is a language almost empty or almost full).
//!
//! It also computes exact word densities and generates reduction instances
//! from graph reachability, 3-SAT and linear-bounded Turing machines.

pub mod alphabet;
pub mod analysis;
pub mod automata;
pub mod density;
pub mod equivalence;
pub mod error;
pub mod oracle;
pub mod reductions;
pub mod regex;

pub use alphabet::Alphabet;
pub use automata::{Automaton, Dfa, Nfa};
pub use equivalence::{DecisionReport, Language, Limits, Relation, Witness};
pub use error::{Error, Result};
pub use regex::Regex;
