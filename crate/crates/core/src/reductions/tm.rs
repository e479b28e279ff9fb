//! Linear-bounded nondeterministic Turing machines and the regular
//! expression whose complement encodes their accepting runs.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::regex::Regex;

/// Separator between configurations in run strings.
pub const SEPARATOR: &str = "#";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    L,
    R,
}

/// One entry of the transition relation, by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpec {
    pub state: String,
    pub read: String,
    pub next: String,
    pub write: String,
    #[serde(rename = "move")]
    pub direction: Direction,
}

/// JSON form of a machine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TmJson {
    pub states: Vec<String>,
    pub tape_alphabet: Vec<String>,
    pub blank: String,
    pub initial: String,
    pub accepting: String,
    pub transitions: Vec<TransitionSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub next: usize,
    pub write: usize,
    pub direction: Direction,
}

/// A validated machine with states and tape symbols as indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TmJson", into = "TmJson")]
pub struct TmSpec {
    states: Vec<String>,
    tape: Vec<String>,
    blank: usize,
    initial: usize,
    accepting: usize,
    /// `delta[q * |tape| + a]`
    delta: Vec<Vec<Move>>,
}

fn position(list: &[String], name: &str, what: &str) -> Result<usize> {
    list.iter()
        .position(|s| s == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown {what} `{name}`")))
}

fn check_names(list: &[String], what: &str) -> Result<()> {
    if list.is_empty() {
        return Err(Error::InvalidInput(format!("no {what}s")));
    }
    let mut seen = HashSet::new();
    for s in list {
        if s.is_empty() || s.contains('@') || s == SEPARATOR || !seen.insert(s) {
            return Err(Error::InvalidInput(format!("bad or repeated {what} `{s}`")));
        }
    }
    Ok(())
}

impl TryFrom<TmJson> for TmSpec {
    type Error = Error;

    fn try_from(j: TmJson) -> Result<TmSpec> {
        check_names(&j.states, "state")?;
        check_names(&j.tape_alphabet, "tape symbol")?;
        let k = j.tape_alphabet.len();
        let mut delta = vec![Vec::new(); j.states.len() * k];
        let accepting = position(&j.states, &j.accepting, "state")?;
        for t in &j.transitions {
            let q = position(&j.states, &t.state, "state")?;
            let a = position(&j.tape_alphabet, &t.read, "tape symbol")?;
            let mv = Move {
                next: position(&j.states, &t.next, "state")?,
                write: position(&j.tape_alphabet, &t.write, "tape symbol")?,
                direction: t.direction,
            };
            if q == accepting && mv.next != accepting {
                return Err(Error::InvalidInput(format!(
                    "accepting state `{}` is not absorbing",
                    j.accepting
                )));
            }
            if !delta[q * k + a].contains(&mv) {
                delta[q * k + a].push(mv);
            }
        }
        Ok(TmSpec {
            blank: position(&j.tape_alphabet, &j.blank, "tape symbol")?,
            initial: position(&j.states, &j.initial, "state")?,
            accepting,
            states: j.states,
            tape: j.tape_alphabet,
            delta,
        })
    }
}

impl From<TmSpec> for TmJson {
    fn from(m: TmSpec) -> TmJson {
        let k = m.tape.len();
        let transitions = m
            .delta
            .iter()
            .enumerate()
            .flat_map(|(i, moves)| moves.iter().map(move |mv| (i / k, i % k, *mv)))
            .map(|(q, a, mv)| TransitionSpec {
                state: m.states[q].clone(),
                read: m.tape[a].clone(),
                next: m.states[mv.next].clone(),
                write: m.tape[mv.write].clone(),
                direction: mv.direction,
            })
            .collect();
        TmJson {
            blank: m.tape[m.blank].clone(),
            initial: m.states[m.initial].clone(),
            accepting: m.states[m.accepting].clone(),
            states: m.states,
            tape_alphabet: m.tape,
            transitions,
        }
    }
}

impl TmSpec {
    pub fn from_json(text: &str) -> Result<TmSpec> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("machine serializes")
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn tape_size(&self) -> usize {
        self.tape.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> usize {
        self.accepting
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    pub fn moves(&self, state: usize, symbol: usize) -> &[Move] {
        &self.delta[state * self.tape.len() + symbol]
    }

    /// Converts tape symbol names to indices.
    pub fn input<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Vec<usize>> {
        symbols
            .iter()
            .map(|s| position(&self.tape, s.as_ref(), "tape symbol"))
            .collect()
    }

    /// Run-string alphabet: the separator, the tape symbols, then one head
    /// symbol `q@a` per state and tape symbol. See [`Cell`] for the layout.
    pub fn run_alphabet(&self) -> Alphabet {
        let heads = self
            .states
            .iter()
            .flat_map(|q| self.tape.iter().map(move |a| format!("{q}@{a}")));
        Alphabet::new(
            std::iter::once(SEPARATOR.to_string())
                .chain(self.tape.iter().cloned())
                .chain(heads),
        )
        .expect("names validated")
    }

    pub fn cell_index(&self, cell: Cell) -> usize {
        let k = self.tape.len();
        match cell {
            Cell::Separator => 0,
            Cell::Tape(a) => 1 + a,
            Cell::Head(q, a) => 1 + k + q * k + a,
        }
    }

    pub fn cell(&self, index: usize) -> Cell {
        let k = self.tape.len();
        match index {
            0 => Cell::Separator,
            i if i <= k => Cell::Tape(i - 1),
            i => Cell::Head((i - 1 - k) / k, (i - 1 - k) % k),
        }
    }

    /// States that some move in direction `d` enters.
    fn entering_states(&self, d: Direction) -> Vec<usize> {
        let mut states: Vec<usize> = self
            .delta
            .iter()
            .flatten()
            .filter(|mv| mv.direction == d)
            .map(|mv| mv.next)
            .collect();
        states.sort_unstable();
        states.dedup();
        states
    }

    fn is_accepting_head(&self, index: usize) -> bool {
        matches!(self.cell(index), Cell::Head(q, _) if q == self.accepting)
    }
}

/// A symbol of the run alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Separator,
    Tape(usize),
    /// Head in state `q` over tape symbol `a`.
    Head(usize, usize),
}

/// Whether the machine can reach its accepting state from the initial
/// configuration on `input`, with the head confined to the input cells.
/// Explores the whole configuration graph.
pub fn simulate_tm(m: &TmSpec, input: &[usize]) -> bool {
    let n = input.len();
    let start = (m.initial, 0usize, input.to_vec());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((q, head, tape)) = queue.pop_front() {
        if q == m.accepting {
            return true;
        }
        for mv in m.moves(q, tape[head]) {
            let next_head = match mv.direction {
                Direction::L => head.checked_sub(1),
                Direction::R => Some(head + 1).filter(|&h| h < n),
            };
            let Some(next_head) = next_head else { continue };
            let mut next_tape = tape.clone();
            next_tape[head] = mv.write;
            let config = (mv.next, next_head, next_tape);
            if seen.insert(config.clone()) {
                queue.push_back(config);
            }
        }
    }
    false
}

/// Generated instance: `L(regex)` misses exactly the strings that start
/// with an accepting run of the machine on the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmInstance {
    pub alphabet: Alphabet,
    pub regex: Regex,
}

/// Builds `α = α1 ∪ α2 ∪ α3` over the run alphabet.
///
/// A run string is `#C₀#C₁#…` where each configuration `Cᵢ` lists the `n`
/// tape cells and marks the head cell with its state. Let the *checked
/// prefix* of a string end at its first accepting head symbol. Then
///
/// * `α1` (input error): the string deviates from `#C₀#` within the
///   checked prefix,
/// * `α2` (acceptance error): no accepting head symbol occurs,
/// * `α3` (transition error): some window `c₁c₂c₃` free of accepting heads
///   is followed `n − 2` such symbols later by symbols that leave every
///   legal successor of the window (cut after its first accepting head).
///   The match ends at the first deviating symbol.
///
/// Everything after the first accepting head is unconstrained, so any
/// extension of a string outside `L(α)` is again outside `L(α)`.
pub fn tm_to_regex(m: &TmSpec, input: &[usize]) -> Result<TmInstance> {
    let n = input.len();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "input must have at least 2 symbols, got {n}"
        )));
    }
    if let Some(&a) = input.iter().find(|&&a| a >= m.tape_size()) {
        return Err(Error::InvalidInput(format!(
            "input symbol {a} outside the tape alphabet"
        )));
    }
    let alphabet = m.run_alphabet();
    let all: Vec<usize> = (0..alphabet.len()).collect();
    let plain: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&c| !m.is_accepting_head(c))
        .collect();
    let any = Regex::any_of(all.iter().copied());
    let any_plain = Regex::any_of(plain.iter().copied());

    let alpha1 = Regex::concat(input_error(m, input, &all), Regex::star(any.clone()));
    let alpha2 = Regex::star(any_plain.clone());

    let middle = any_plain.power(n - 2);
    let mut windows = Vec::new();
    for &c1 in &plain {
        for &c2 in &plain {
            for &c3 in &plain {
                let window = [c1, c2, c3];
                let allowed: Vec<Vec<usize>> = successors(m, window)
                    .into_iter()
                    .map(|t| truncate_after_accept(m, &t))
                    .collect();
                let errors = complement_of_prefixes(&allowed, &all);
                if errors == Regex::Empty {
                    continue;
                }
                windows.push(Regex::concat_all([
                    Regex::concat_all(window.map(Regex::literal)),
                    middle.clone(),
                    errors,
                ]));
            }
        }
    }
    let alpha3 = Regex::concat_all([
        Regex::star(any_plain),
        Regex::union_all(windows),
        Regex::star(any),
    ]);
    Ok(TmInstance {
        alphabet,
        regex: Regex::union_all([alpha1, alpha2, alpha3]),
    })
}

/// `#(q⁰,s₁)s₂…sₙ#`, cut after its first accepting head symbol.
fn initial_block(m: &TmSpec, input: &[usize]) -> Vec<usize> {
    let mut w = vec![m.cell_index(Cell::Separator)];
    w.push(m.cell_index(Cell::Head(m.initial, input[0])));
    w.extend(input[1..].iter().map(|&a| m.cell_index(Cell::Tape(a))));
    w.push(m.cell_index(Cell::Separator));
    truncate_after_accept(m, &w)
}

/// Words that deviate from the initial block somewhere: the first
/// mismatching symbol, preceded by a correct prefix.
fn input_error(m: &TmSpec, input: &[usize], all: &[usize]) -> Regex {
    let w = initial_block(m, input);
    let mut tail = Regex::Empty;
    for &expected in w.iter().rev() {
        let wrong = Regex::any_of(all.iter().copied().filter(|&c| c != expected));
        tail = Regex::union(wrong, Regex::concat(Regex::literal(expected), tail));
    }
    tail
}

fn truncate_after_accept(m: &TmSpec, cells: &[usize]) -> Vec<usize> {
    match cells.iter().position(|&c| m.is_accepting_head(c)) {
        Some(i) => cells[..=i].to_vec(),
        None => cells.to_vec(),
    }
}

/// All triples that can occupy the positions of `window` one configuration
/// later.
///
/// Every head in the window independently applies one of its moves: it
/// writes its symbol and, if the neighbour it moves to lies inside the
/// window, that neighbour must be a tape cell and becomes the new head.
/// Moving onto a separator, onto another head or onto a cell already
/// claimed by another head is not possible. In addition a tape cell on the
/// border of the window that no head inside claims may be entered by a head
/// from outside (from the left by a right move, from the right by a left
/// move). Everything else stays unchanged.
///
/// Only the middle cell is pinned down by the window alone; the border
/// cells are pinned down by the overlapping windows centred on them.
fn successors(m: &TmSpec, window: [usize; 3]) -> Vec<[usize; 3]> {
    let cells = window.map(|c| m.cell(c));
    let heads: Vec<usize> = (0..3)
        .filter(|&i| matches!(cells[i], Cell::Head(..)))
        .collect();
    let mut out = vec![window];
    for &i in &heads {
        let Cell::Head(q, a) = cells[i] else {
            unreachable!()
        };
        let mut next = Vec::new();
        for partial in &out {
            for mv in m.moves(q, a) {
                let mut t = *partial;
                t[i] = m.cell_index(Cell::Tape(mv.write));
                let target = match mv.direction {
                    Direction::L => i.checked_sub(1),
                    Direction::R => Some(i + 1).filter(|&j| j < 3),
                };
                if let Some(j) = target {
                    // the neighbour must be an untouched tape cell
                    let Cell::Tape(x) = cells[j] else { continue };
                    if t[j] != window[j] {
                        continue;
                    }
                    t[j] = m.cell_index(Cell::Head(mv.next, x));
                }
                if !next.contains(&t) {
                    next.push(t);
                }
            }
        }
        out = next;
    }
    for (edge, from) in [(0, Direction::R), (2, Direction::L)] {
        let Cell::Tape(x) = cells[edge] else { continue };
        let entering = m.entering_states(from);
        let mut extra = Vec::new();
        for t in &out {
            if t[edge] != window[edge] {
                continue;
            }
            for &q in &entering {
                let mut e = *t;
                e[edge] = m.cell_index(Cell::Head(q, x));
                if !out.contains(&e) && !extra.contains(&e) {
                    extra.push(e);
                }
            }
        }
        out.extend(extra);
    }
    out
}

/// Words `x·a` where `x` is a proper prefix of some word in `allowed` and
/// `x·a` is a prefix of none of them: the first point where a word leaves
/// every allowed prefix.
fn complement_of_prefixes(allowed: &[Vec<usize>], all: &[usize]) -> Regex {
    if allowed.iter().any(Vec::is_empty) {
        return Regex::Empty;
    }
    if allowed.is_empty() {
        return Regex::any_of(all.iter().copied());
    }
    let mut firsts: Vec<usize> = allowed.iter().map(|p| p[0]).collect();
    firsts.sort_unstable();
    firsts.dedup();
    let mut parts = vec![Regex::any_of(
        all.iter().copied().filter(|c| !firsts.contains(c)),
    )];
    for &x in &firsts {
        let rest: Vec<Vec<usize>> = allowed
            .iter()
            .filter(|p| p[0] == x)
            .map(|p| p[1..].to_vec())
            .collect();
        let sub = complement_of_prefixes(&rest, all);
        if sub != Regex::Empty {
            parts.push(Regex::concat(Regex::literal(x), sub));
        }
    }
    Regex::union_all(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::regex_matches;

    pub(crate) fn machine(transitions: &[(&str, &str, &str, &str, Direction)]) -> TmSpec {
        let j = TmJson {
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
        };
        TmSpec::try_from(j).unwrap()
    }

    fn accept_all() -> TmSpec {
        machine(&[
            ("q0", "_", "qa", "_", Direction::R),
            ("q0", "a", "qa", "a", Direction::R),
            ("q0", "b", "qa", "b", Direction::R),
        ])
    }

    #[test]
    fn alphabet_layout() {
        let m = accept_all();
        let al = m.run_alphabet();
        assert_eq!(al.len(), 1 + 3 + 2 * 3);
        assert_eq!(al.symbol(0), "#");
        assert_eq!(al.symbol(m.cell_index(Cell::Head(1, 2))), "qa@b");
        for i in 0..al.len() {
            assert_eq!(m.cell_index(m.cell(i)), i);
        }
    }

    #[test]
    fn simulation() {
        let m = accept_all();
        assert!(simulate_tm(&m, &m.input(&["a", "b"]).unwrap()));
        let first_a = machine(&[("q0", "a", "qa", "a", Direction::R)]);
        assert!(simulate_tm(&first_a, &[1, 2]));
        assert!(!simulate_tm(&first_a, &[2, 1]));
        let runs_off = machine(&[
            ("q0", "a", "q0", "a", Direction::R),
            ("q0", "b", "q0", "b", Direction::R),
        ]);
        assert!(!simulate_tm(&runs_off, &[1, 1, 2]));
    }

    #[test]
    fn validation() {
        let bad = r#"{"states":["q0","qa"],"tape_alphabet":["_"],"blank":"_","initial":"q0",
            "accepting":"qa","transitions":[{"state":"qa","read":"_","next":"q0","write":"_","move":"L"}]}"#;
        assert!(TmSpec::from_json(bad).is_err());
        let m = accept_all();
        assert_eq!(TmSpec::from_json(&m.to_json()).unwrap(), m);
        assert!(tm_to_regex(&m, &[1]).is_err());
    }

    #[test]
    fn window_rules() {
        let m = machine(&[
            ("q0", "a", "qa", "b", Direction::R),
            ("q0", "a", "q0", "_", Direction::L),
        ]);
        let ix = |c| m.cell_index(c);
        let (h, a, b, blank) = (
            ix(Cell::Head(0, 1)),
            ix(Cell::Tape(1)),
            ix(Cell::Tape(2)),
            ix(Cell::Tape(0)),
        );
        let hash = ix(Cell::Separator);
        // head in the middle: both moves
        let s = successors(&m, [a, h, b]);
        assert!(s.contains(&[a, b, ix(Cell::Head(1, 2))]));
        assert!(s.contains(&[ix(Cell::Head(0, 1)), blank, b]));
        // the middle cell is always the written symbol
        assert!(s.iter().all(|t| t[1] == b || t[1] == blank));
        // head next to the separator cannot move onto it
        let s = successors(&m, [hash, h, b]);
        assert_eq!(s, vec![[hash, b, ix(Cell::Head(1, 2))]]);
        // no heads: identity, or a border cell entered from outside
        let s = successors(&m, [a, hash, b]);
        assert!(s.contains(&[a, hash, b]));
        assert!(s.contains(&[ix(Cell::Head(1, 1)), hash, b]));
        assert!(s.contains(&[a, hash, ix(Cell::Head(0, 2))]));
        assert!(s.iter().all(|t| t[1] == hash));
        assert_eq!(
            successors(&m, [a, a, a])
                .iter()
                .filter(|t| t[1] != a)
                .count(),
            0
        );
        // heads of two configurations separated by '#'
        let s = successors(&m, [h, hash, h]);
        assert!(s.contains(&[blank, hash, b]));
        assert!(s.iter().all(|t| t[1] == hash));
    }

    #[test]
    fn accept_all_run_is_outside() {
        let m = accept_all();
        let inst = tm_to_regex(&m, &[1, 2]).unwrap();
        let ix = |c| m.cell_index(c);
        let run = vec![
            ix(Cell::Separator),
            ix(Cell::Head(0, 1)),
            ix(Cell::Tape(2)),
            ix(Cell::Separator),
            ix(Cell::Tape(1)),
            ix(Cell::Head(1, 2)),
        ];
        assert!(!regex_matches(&inst.regex, &run));
        let mut longer = run.clone();
        longer.extend([0, 3, 3]);
        assert!(!regex_matches(&inst.regex, &longer));
        // wrong written symbol
        let mut wrong = run.clone();
        wrong[4] = ix(Cell::Tape(2));
        assert!(regex_matches(&inst.regex, &wrong));
        // '##' prefix is always an input error
        assert!(regex_matches(&inst.regex, &[0, 0]));
    }
}
