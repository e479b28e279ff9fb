//! Shared generators and reference implementations for integration tests.
//!
//! Everything here is written against the public types only and avoids the
//! library's own algorithms, so it can serve as ground truth.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use peq_core::reductions::{Cell, Direction, TmJson, TmSpec, TransitionSpec};
use peq_core::{Alphabet, Dfa, Nfa, Regex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn letters(k: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c", "d"].into_iter().take(k)).unwrap()
}

/// Uniform random total DFA; each state accepts with probability 1/2.
pub fn random_dfa(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let k = alphabet.len();
    let table: Vec<usize> = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
    let accepting: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::from_fn(
        alphabet.clone(),
        n,
        0,
        |q, a| table[q * k + a],
        |q| accepting[q],
    )
    .unwrap()
}

/// Random NFA where each possible transition is present with probability
/// `p`.
pub fn random_nfa(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize, p: f64) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let mut nfa = Nfa::new(alphabet.clone(), n, 0).unwrap();
    for q in 0..n {
        for a in 0..alphabet.len() {
            for r in 0..n {
                if rng.gen_bool(p) {
                    nfa.add_transition(q, a, r).unwrap();
                }
            }
        }
        if rng.gen_bool(0.4) {
            nfa.set_accepting(q, true).unwrap();
        }
    }
    nfa
}

/// Random syntax tree of depth at most `depth` over `k` symbols.
pub fn random_regex(rng: &mut impl Rng, k: usize, depth: usize) -> Regex {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..10) {
            0 => Regex::Empty,
            1 => Regex::Epsilon,
            _ => Regex::Literal(rng.gen_range(0..k)),
        };
    }
    match rng.gen_range(0..3) {
        0 => Regex::concat(
            random_regex(rng, k, depth - 1),
            random_regex(rng, k, depth - 1),
        ),
        1 => Regex::union(
            random_regex(rng, k, depth - 1),
            random_regex(rng, k, depth - 1),
        ),
        _ => Regex::star(random_regex(rng, k, depth - 1)),
    }
}

pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..k {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn run(d: &Dfa, w: &[usize]) -> bool {
    let mut q = d.initial();
    for &a in w {
        q = d.next(q, a);
    }
    d.is_accepting(q)
}

/// `μₙ(L(d1) △ L(d2))` for `n = 0..=horizon`, by pushing word counts
/// through pairs of states of the two input DFAs.
pub fn pair_density(d1: &Dfa, d2: &Dfa, horizon: usize) -> Vec<BigRational> {
    let k = d1.alphabet().len();
    let mut counts: HashMap<(usize, usize), BigInt> = HashMap::new();
    counts.insert((d1.initial(), d2.initial()), BigInt::from(1));
    let mut total = BigInt::from(1);
    let mut out = Vec::with_capacity(horizon + 1);
    for n in 0..=horizon {
        if n > 0 {
            let mut next: HashMap<(usize, usize), BigInt> = HashMap::new();
            for (&(p, q), c) in &counts {
                for a in 0..k {
                    *next.entry((d1.next(p, a), d2.next(q, a))).or_default() += c;
                }
            }
            counts = next;
            total *= k;
        }
        let hits: BigInt = counts
            .iter()
            .filter(|(&(p, q), _)| d1.is_accepting(p) != d2.is_accepting(q))
            .map(|(_, c)| c.clone())
            .sum();
        out.push(BigRational::new(hits, total.clone()));
    }
    out
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

// ---- Turing machines ------------------------------------------------------

fn tm(transitions: &[(&str, &str, &str, &str, Direction)]) -> TmSpec {
    TmSpec::try_from(TmJson {
        states: vec!["q0".into(), "qa".into()],
        tape_alphabet: vec!["_".into(), "a".into(), "b".into()],
        blank: "_".into(),
        initial: "q0".into(),
        accepting: "qa".into(),
        transitions: transitions
            .iter()
            .map(|&(state, read, next, write, direction)| TransitionSpec {
                state: state.into(),
                read: read.into(),
                next: next.into(),
                write: write.into(),
                direction,
            })
            .collect(),
    })
    .unwrap()
}

/// Moves right into the accepting state from any first symbol.
pub fn accept_all() -> TmSpec {
    tm(&[
        ("q0", "_", "qa", "_", Direction::R),
        ("q0", "a", "qa", "a", Direction::R),
        ("q0", "b", "qa", "b", Direction::R),
    ])
}

/// Walks right over the input and falls off the end.
pub fn reject_all() -> TmSpec {
    tm(&[
        ("q0", "_", "q0", "_", Direction::R),
        ("q0", "a", "q0", "a", Direction::R),
        ("q0", "b", "q0", "b", Direction::R),
    ])
}

/// Accepts iff the first input symbol is `a`.
pub fn first_is_a() -> TmSpec {
    tm(&[("q0", "a", "qa", "a", Direction::R)])
}

/// Walks right to the last cell, then back left, accepting on reaching
/// the first cell again. Accepts every input, with a longer run.
pub fn bounce() -> TmSpec {
    TmSpec::try_from(TmJson {
        states: vec!["q0".into(), "qb".into(), "qa".into()],
        tape_alphabet: vec!["_".into(), "a".into()],
        blank: "_".into(),
        initial: "q0".into(),
        accepting: "qa".into(),
        transitions: vec![
            t("q0", "a", "q0", "a", Direction::R),
            t("q0", "_", "qb", "_", Direction::L),
            t("qb", "a", "qb", "a", Direction::L),
            t("qb", "a", "qa", "a", Direction::R),
        ],
    })
    .unwrap()
}

fn t(state: &str, read: &str, next: &str, write: &str, direction: Direction) -> TransitionSpec {
    TransitionSpec {
        state: state.into(),
        read: read.into(),
        next: next.into(),
        write: write.into(),
        direction,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Config {
    pub state: usize,
    pub head: usize,
    pub tape: Vec<usize>,
}

pub fn tm_step(m: &TmSpec, c: &Config) -> Vec<Config> {
    let n = c.tape.len();
    let mut out = Vec::new();
    for mv in m.moves(c.state, c.tape[c.head]) {
        let head = match mv.direction {
            Direction::L if c.head > 0 => c.head - 1,
            Direction::R if c.head + 1 < n => c.head + 1,
            _ => continue,
        };
        let mut tape = c.tape.clone();
        tape[c.head] = mv.write;
        out.push(Config {
            state: mv.next,
            head,
            tape,
        });
    }
    out
}

/// `#` followed by the cells of the configuration.
pub fn encode(m: &TmSpec, c: &Config) -> Vec<usize> {
    let mut w = vec![m.cell_index(Cell::Separator)];
    for (i, &a) in c.tape.iter().enumerate() {
        w.push(m.cell_index(if i == c.head {
            Cell::Head(c.state, a)
        } else {
            Cell::Tape(a)
        }));
    }
    w
}

fn decode(m: &TmSpec, block: &[usize]) -> Option<Config> {
    if m.cell(block[0]) != Cell::Separator {
        return None;
    }
    let mut head = None;
    let mut tape = Vec::new();
    for (i, &c) in block[1..].iter().enumerate() {
        match m.cell(c) {
            Cell::Tape(a) => tape.push(a),
            Cell::Head(q, a) if head.is_none() => {
                head = Some((q, i));
                tape.push(a);
            }
            _ => return None,
        }
    }
    let (state, head) = head?;
    Some(Config { state, head, tape })
}

/// Whether `word` begins with an accepting run of `m` on `input`: cut the
/// word after its first accepting head symbol, split that prefix into
/// blocks of `n + 1` symbols, require the first block to be the initial
/// configuration and every later block to be (a prefix of, for the last
/// one) the encoding of a successor of the block before it.
pub fn starts_with_accepting_run(m: &TmSpec, input: &[usize], word: &[usize]) -> bool {
    let Some(end) = word
        .iter()
        .position(|&c| matches!(m.cell(c), Cell::Head(q, _) if q == m.accepting()))
    else {
        return false;
    };
    let prefix = &word[..=end];
    let width = input.len() + 1;
    let start = Config {
        state: m.initial(),
        head: 0,
        tape: input.to_vec(),
    };
    let first = encode(m, &start);
    let blocks: Vec<&[usize]> = prefix.chunks(width).collect();
    if !first.starts_with(blocks[0]) {
        return false;
    }
    let mut current = start;
    for block in &blocks[1..] {
        let successors = tm_step(m, &current);
        let Some(next) = successors
            .into_iter()
            .find(|s| encode(m, s).starts_with(block))
        else {
            return false;
        };
        if block.len() < width {
            break;
        }
        if decode(m, block).as_ref() != Some(&next) {
            return false;
        }
        current = next;
    }
    true
}

/// Run strings of every accepting run with at most `max_steps` moves
/// (breadth first over configurations, each configuration expanded once).
pub fn accepting_runs(m: &TmSpec, input: &[usize], max_steps: usize) -> Vec<Vec<usize>> {
    let start = Config {
        state: m.initial(),
        head: 0,
        tape: input.to_vec(),
    };
    let mut out = Vec::new();
    let mut frontier = vec![vec![start]];
    for _ in 0..=max_steps {
        let mut next = Vec::new();
        for path in frontier {
            let last = path.last().unwrap();
            if last.state == m.accepting() {
                let mut w: Vec<usize> = path.iter().flat_map(|c| encode(m, c)).collect();
                let cut = w
                    .iter()
                    .position(|&c| matches!(m.cell(c), Cell::Head(q, _) if q == m.accepting()));
                w.truncate(cut.unwrap() + 1);
                out.push(w);
                continue;
            }
            for s in tm_step(m, last) {
                if !path.contains(&s) {
                    let mut p = path.clone();
                    p.push(s);
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    out
}
