//! Graph predicates over DFAs.
//!
//! Everything here looks only at the part of the automaton reachable from
//! the initial state.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::automata::Dfa;

/// Strongly connected components of the reachable subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Component of each state; `None` for unreachable states.
    pub component: Vec<Option<usize>>,
    /// Member states of each component. Components are listed in reverse
    /// topological order: every edge leaving component `i` enters some
    /// component `j < i`.
    pub components: Vec<Vec<usize>>,
    /// No edge leaves the component.
    pub is_sink: Vec<bool>,
    /// The component contains at least one internal edge (so it carries a
    /// cycle).
    pub is_cyclic: Vec<bool>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Tarjan's algorithm, iterative, restricted to reachable states.
pub fn sccs(d: &Dfa) -> SccDecomposition {
    let n = d.state_count();
    let k = d.alphabet().len();
    const UNSEEN: usize = usize::MAX;
    let mut order = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut component = vec![None; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;

    // (state, next symbol to explore)
    let mut call: Vec<(usize, usize)> = vec![(d.initial(), 0)];
    order[d.initial()] = counter;
    low[d.initial()] = counter;
    counter += 1;
    stack.push(d.initial());
    on_stack[d.initial()] = true;

    while let Some(top) = call.last_mut() {
        let q = top.0;
        if top.1 < k {
            let r = d.next(q, top.1);
            top.1 += 1;
            if order[r] == UNSEEN {
                order[r] = counter;
                low[r] = counter;
                counter += 1;
                stack.push(r);
                on_stack[r] = true;
                call.push((r, 0));
            } else if on_stack[r] {
                low[q] = low[q].min(order[r]);
            }
            continue;
        }
        call.pop();
        if let Some(&(parent, _)) = call.last() {
            low[parent] = low[parent].min(low[q]);
        }
        if low[q] == order[q] {
            let id = components.len();
            let mut members = Vec::new();
            loop {
                let r = stack.pop().expect("tarjan stack");
                on_stack[r] = false;
                component[r] = Some(id);
                members.push(r);
                if r == q {
                    break;
                }
            }
            members.sort_unstable();
            components.push(members);
        }
    }

    let mut is_sink = vec![true; components.len()];
    let mut is_cyclic = vec![false; components.len()];
    for (id, members) in components.iter().enumerate() {
        for &q in members {
            for a in 0..k {
                match component[d.next(q, a)] {
                    Some(c) if c == id => is_cyclic[id] = true,
                    _ => is_sink[id] = false,
                }
            }
        }
    }
    SccDecomposition {
        component,
        components,
        is_sink,
        is_cyclic,
    }
}

/// Breadth-first search tree from the initial state: for every reachable
/// state, the predecessor and symbol on a shortest access path.
fn access_tree(d: &Dfa) -> Vec<Option<(usize, usize)>> {
    let n = d.state_count();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[d.initial()] = true;
    let mut queue = VecDeque::from([d.initial()]);
    while let Some(q) = queue.pop_front() {
        for a in 0..d.alphabet().len() {
            let r = d.next(q, a);
            if !seen[r] {
                seen[r] = true;
                parent[r] = Some((q, a));
                queue.push_back(r);
            }
        }
    }
    parent
}

fn path_to(d: &Dfa, parent: &[Option<(usize, usize)>], mut q: usize) -> Vec<usize> {
    let mut word = Vec::new();
    while q != d.initial() {
        let (p, a) = parent[q].expect("state is reachable");
        word.push(a);
        q = p;
    }
    word.reverse();
    word
}

/// States reachable from the initial state, in breadth-first order.
pub fn reachable_states(d: &Dfa) -> Vec<usize> {
    let mut seen = vec![false; d.state_count()];
    seen[d.initial()] = true;
    let mut out = vec![d.initial()];
    let mut i = 0;
    while i < out.len() {
        let q = out[i];
        i += 1;
        for a in 0..d.alphabet().len() {
            let r = d.next(q, a);
            if !seen[r] {
                seen[r] = true;
                out.push(r);
            }
        }
    }
    out
}

/// Shortest word from `from` to any state satisfying `target`, breadth
/// first with symbols tried in alphabet order.
fn shortest_word_to(d: &Dfa, from: usize, target: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let n = d.state_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        if target(q) {
            let mut word = Vec::new();
            let mut cur = q;
            while cur != from {
                let (p, a) = parent[cur].expect("on the search tree");
                word.push(a);
                cur = p;
            }
            word.reverse();
            return Some(word);
        }
        for a in 0..d.alphabet().len() {
            let r = d.next(q, a);
            if !seen[r] {
                seen[r] = true;
                parent[r] = Some((q, a));
                queue.push_back(r);
            }
        }
    }
    None
}

/// An accepting state in a reachable sink component together with a
/// shortest word leading to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuWitness {
    pub state: usize,
    pub access: Vec<usize>,
}

impl MuWitness {
    /// Replays the access word and re-checks the sink condition.
    pub fn validate(&self, d: &Dfa) -> bool {
        if self.state >= d.state_count()
            || d.run(d.initial(), &self.access) != self.state
            || !d.is_accepting(self.state)
        {
            return false;
        }
        let scc = sccs(d);
        scc.component[self.state].is_some_and(|c| scc.is_sink[c])
    }
}

/// Witness for the sink-SCC condition: some reachable accepting state lies in
/// a sink component. Its existence is equivalent to the density of `L(d)`
/// not converging to zero (either no limit, or a positive one).
///
/// Among all candidates the one with the shortest access word is returned,
/// ties broken by breadth-first discovery order.
pub fn mu_witness(d: &Dfa) -> Option<MuWitness> {
    let scc = sccs(d);
    let parent = access_tree(d);
    reachable_states(d)
        .into_iter()
        .find(|&q| d.is_accepting(q) && scc.component[q].is_some_and(|c| scc.is_sink[c]))
        .map(|q| MuWitness {
            state: q,
            access: path_to(d, &parent, q),
        })
}

pub fn mu_is_nonzero(d: &Dfa) -> bool {
    mu_witness(d).is_some()
}

pub fn is_empty(d: &Dfa) -> bool {
    shortest_accepted(d).is_none()
}

pub fn is_universal(d: &Dfa) -> bool {
    is_empty(&d.complement())
}

/// Shortest accepted word, breadth first in alphabet order.
pub fn shortest_accepted(d: &Dfa) -> Option<Vec<usize>> {
    shortest_word_to(d, d.initial(), |q| d.is_accepting(q))
}

/// An accepted word `prefix · cycle · suffix` such that
/// `prefix · cycleⁱ · suffix` is accepted for every `i ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PumpWitness {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
    pub suffix: Vec<usize>,
}

impl PumpWitness {
    pub fn pumped(&self, times: usize) -> Vec<usize> {
        let mut w = self.prefix.clone();
        for _ in 0..times {
            w.extend_from_slice(&self.cycle);
        }
        w.extend_from_slice(&self.suffix);
        w
    }
}

/// States from which an accepting state is reachable.
fn co_reachable(d: &Dfa) -> Vec<bool> {
    let n = d.state_count();
    let mut preds = vec![Vec::new(); n];
    for q in 0..n {
        for a in 0..d.alphabet().len() {
            preds[d.next(q, a)].push(q);
        }
    }
    let mut live = vec![false; n];
    let mut stack: Vec<usize> = d.accepting_states().collect();
    for &q in &stack {
        live[q] = true;
    }
    while let Some(q) = stack.pop() {
        for &p in &preds[q] {
            if !live[p] {
                live[p] = true;
                stack.push(p);
            }
        }
    }
    live
}

/// A witness that `L(d)` is infinite: a reachable state on a cycle from
/// which an accepting state is reachable.
pub fn pump_witness(d: &Dfa) -> Option<PumpWitness> {
    let scc = sccs(d);
    let live = co_reachable(d);
    let parent = access_tree(d);
    let q = reachable_states(d)
        .into_iter()
        .find(|&q| live[q] && scc.component[q].is_some_and(|c| scc.is_cyclic[c]))?;
    let c = scc.component[q].expect("reachable");
    // shortest non-empty loop q -> q inside the component
    let cycle = (0..d.alphabet().len())
        .filter(|&a| scc.component[d.next(q, a)] == Some(c))
        .filter_map(|a| {
            shortest_word_to(d, d.next(q, a), |r| r == q).map(|mut w| {
                w.insert(0, a);
                w
            })
        })
        .min_by_key(Vec::len)
        .expect("cyclic component has a loop through every member");
    let suffix = shortest_word_to(d, q, |r| d.is_accepting(r)).expect("live state");
    Some(PumpWitness {
        prefix: path_to(d, &parent, q),
        cycle,
        suffix,
    })
}

/// No reachable state that lies on a cycle can reach an accepting state.
pub fn is_finite_language(d: &Dfa) -> bool {
    pump_witness(d).is_none()
}
