use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

use super::{Dfa, Nfa};

/// Default cap on the number of subsets materialized by [`determinize`].
pub const DEFAULT_MAX_SUBSETS: usize = 1 << 20;

/// Subset construction.
///
/// DFA states are numbered in breadth-first discovery order from the initial
/// subset, trying symbols in alphabet order. Each subset is stored as a
/// sorted state list after two language-preserving normalizations:
///
/// * states that cannot reach an accepting state are dropped, so the empty
///   subset plays the role of the rejecting sink;
/// * a subset holding a state from which every word is accepted is
///   replaced by the singleton of the smallest such state of the NFA.
///
/// Fails with [`Error::LimitExceeded`] once more than `max_subsets` subsets
/// are discovered.
pub fn determinize(nfa: &Nfa, max_subsets: usize) -> Result<Dfa> {
    let k = nfa.alphabet().len();
    let live = co_reachable(nfa);
    let universal = universal_states(nfa);
    let representative = universal.iter().position(|&u| u);
    let normalize = |mut set: Vec<usize>| -> Vec<usize> {
        set.retain(|&q| live[q]);
        match representative {
            Some(u) if set.iter().any(|&q| universal[q]) => vec![u],
            _ => set,
        }
    };

    let start = normalize(vec![nfa.initial()]);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets = vec![start.clone()];
    index.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut transitions = Vec::new();
    let mut mark = vec![false; nfa.state_count()];

    while let Some(id) = queue.pop_front() {
        for a in 0..k {
            let mut next = Vec::new();
            for &q in &subsets[id] {
                for &r in nfa.successors(q, a) {
                    if !mark[r] {
                        mark[r] = true;
                        next.push(r);
                    }
                }
            }
            for &r in &next {
                mark[r] = false;
            }
            next.sort_unstable();
            let next = normalize(next);
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = subsets.len();
                    if t >= max_subsets {
                        return Err(Error::LimitExceeded {
                            what: "determinization subsets",
                            limit: max_subsets as u64,
                            actual: t as u64 + 1,
                        });
                    }
                    index.insert(next.clone(), t);
                    subsets.push(next);
                    queue.push_back(t);
                    t
                }
            };
            transitions.push(target);
        }
    }

    let accepting = subsets
        .iter()
        .map(|s| s.iter().any(|&q| nfa.is_accepting(q)))
        .collect();
    Dfa::new(nfa.alphabet().clone(), 0, transitions, accepting)
}

/// States from which some accepting state is reachable.
fn co_reachable(nfa: &Nfa) -> Vec<bool> {
    let n = nfa.state_count();
    let k = nfa.alphabet().len();
    let mut preds = vec![Vec::new(); n];
    for q in 0..n {
        for a in 0..k {
            for &r in nfa.successors(q, a) {
                preds[r].push(q);
            }
        }
    }
    let mut live = vec![false; n];
    let mut stack: Vec<usize> = nfa.accepting_states().collect();
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

/// Greatest set U of accepting states such that every state of U has, for
/// every symbol, a successor in U. Every word is accepted from a state of U.
fn universal_states(nfa: &Nfa) -> Vec<bool> {
    let n = nfa.state_count();
    let k = nfa.alphabet().len();
    let mut inside: Vec<bool> = (0..n).map(|q| nfa.is_accepting(q)).collect();
    // support[q * k + a] = |succ(q, a) ∩ U|
    let mut support = vec![0usize; n * k];
    let mut preds = vec![Vec::new(); n];
    for q in 0..n {
        for a in 0..k {
            for &r in nfa.successors(q, a) {
                preds[r].push((q, a));
                if inside[r] {
                    support[q * k + a] += 1;
                }
            }
        }
    }
    let mut removed: Vec<usize> = (0..n)
        .filter(|&q| inside[q] && (0..k).any(|a| support[q * k + a] == 0))
        .collect();
    for &q in &removed {
        inside[q] = false;
    }
    while let Some(r) = removed.pop() {
        for &(p, a) in &preds[r] {
            let s = &mut support[p * k + a];
            *s -= 1;
            if *s == 0 && inside[p] {
                inside[p] = false;
                removed.push(p);
            }
        }
    }
    inside
}
