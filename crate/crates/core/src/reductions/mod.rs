//! Instance generators for the hardness reductions, each paired with an
//! independent oracle: graph reachability, 3-SAT and acceptance by
//! linear-bounded Turing machines.

mod gap;
mod sat;
mod tm;

pub use gap::{bfs_reachable, gap_to_dfa, gap_to_dfa_zero_one, Digraph};
pub use sat::{
    brute_sat, encode_assignment, prime, sat3_to_unary_regex, Cnf3, Literal, MAX_BRUTE_VARIABLES,
    MAX_CLAUSE_PERIOD,
};
pub use tm::{
    simulate_tm, tm_to_regex, Cell, Direction, Move, TmInstance, TmJson, TmSpec, TransitionSpec,
    SEPARATOR,
};
