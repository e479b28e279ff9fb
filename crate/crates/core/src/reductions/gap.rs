use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::automata::Dfa;
use crate::error::{Error, Result};

/// Directed graph on nodes `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Digraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Digraph> {
        let g = Digraph { n, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Digraph> {
        let g: Digraph = serde_json::from_str(text)?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidInput(format!(
                "graph needs at least 2 nodes, got {}",
                self.n
            )));
        }
        for &(i, j) in &self.edges {
            if !(1..=self.n).contains(&i) || !(1..=self.n).contains(&j) {
                return Err(Error::InvalidInput(format!(
                    "edge ({i}, {j}) outside 1..={}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    fn has_edge(&self) -> Vec<bool> {
        let mut adj = vec![false; (self.n + 1) * (self.n + 1)];
        for &(i, j) in &self.edges {
            adj[i * (self.n + 1) + j] = true;
        }
        adj
    }
}

fn node_symbols(n: usize) -> impl Iterator<Item = String> {
    (1..=n).map(|i| i.to_string())
}

/// DFA over `{1, …, n}` that follows edges of `g` from node 1 and accepts
/// once node `n` is reached; every other move falls into a dead state.
///
/// State `i` is node `i` and state 0 is the dead state. The language has
/// non-zero density exactly when `n` is reachable from 1.
pub fn gap_to_dfa(g: &Digraph) -> Dfa {
    let n = g.n;
    let alphabet = Alphabet::new(node_symbols(n)).expect("distinct numerals");
    let adj = g.has_edge();
    // symbol index a is node a + 1
    Dfa::from_fn(
        alphabet,
        n + 1,
        1,
        |q, a| match q {
            0 => 0,
            q if q == n => n,
            q if adj[q * (n + 1) + a + 1] => a + 1,
            _ => 0,
        },
        |q| q == n,
    )
    .expect("well-formed")
}

/// Variant of [`gap_to_dfa`] over `{e, 1, …, n}`: `e` leads from every
/// node except `n` to the dead state 0 and loops on `n`. No word starting
/// with `e` is accepted, so the language is never almost full.
pub fn gap_to_dfa_zero_one(g: &Digraph) -> Dfa {
    let n = g.n;
    let alphabet = Alphabet::new(std::iter::once("e".to_string()).chain(node_symbols(n)))
        .expect("distinct symbols");
    let adj = g.has_edge();
    // symbol 0 is e, symbol j ≥ 1 is node j
    Dfa::from_fn(
        alphabet,
        n + 1,
        1,
        |q, a| match (q, a) {
            (0, _) => 0,
            (q, _) if q == n => n,
            (_, 0) => 0,
            (q, j) if adj[q * (n + 1) + j] => j,
            _ => 0,
        },
        |q| q == n,
    )
    .expect("well-formed")
}

/// Breadth-first search from node 1 to node `n`.
pub fn bfs_reachable(g: &Digraph) -> bool {
    let mut out = vec![Vec::new(); g.n + 1];
    for &(i, j) in &g.edges {
        out[i].push(j);
    }
    let mut seen = vec![false; g.n + 1];
    seen[1] = true;
    let mut queue = VecDeque::from([1]);
    while let Some(u) = queue.pop_front() {
        if u == g.n {
            return true;
        }
        for &v in &out[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    false
}
