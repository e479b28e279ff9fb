use std::collections::{HashMap, VecDeque};

use crate::error::Result;

use super::Dfa;

/// Product automaton over pairs reachable from `(q1⁰, q2⁰)`, numbered in
/// breadth-first order. A pair accepts when `combiner` maps the two
/// acceptance bits to true.
pub fn product(d1: &Dfa, d2: &Dfa, combiner: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
    d1.alphabet().ensure_same(d2.alphabet())?;
    let k = d1.alphabet().len();
    let start = (d1.initial(), d2.initial());
    let mut index = HashMap::from([(start, 0usize)]);
    let mut pairs = vec![start];
    let mut queue = VecDeque::from([0usize]);
    let mut transitions = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (p, q) = pairs[id];
        for a in 0..k {
            let next = (d1.next(p, a), d2.next(q, a));
            let target = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            transitions.push(target);
        }
    }
    let accepting = pairs
        .iter()
        .map(|&(p, q)| combiner(d1.is_accepting(p), d2.is_accepting(q)))
        .collect();
    Dfa::new(d1.alphabet().clone(), 0, transitions, accepting)
}

/// The XOR automaton: accepts exactly the symmetric difference.
pub fn xor_product(d1: &Dfa, d2: &Dfa) -> Result<Dfa> {
    product(d1, d2, |x, y| x ^ y)
}
