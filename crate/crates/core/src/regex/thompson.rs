use crate::alphabet::Alphabet;
use crate::automata::Nfa;

use super::Regex;

/// ε-NFA produced by Thompson's construction.
#[derive(Default)]
struct EpsNfa {
    eps: Vec<Vec<usize>>,
    moves: Vec<Vec<(usize, usize)>>,
}

impl EpsNfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.eps.len() - 1
    }

    /// Returns the (entry, exit) pair of the fragment for `node`.
    fn build(&mut self, node: &Regex) -> (usize, usize) {
        match node {
            Regex::Empty => (self.state(), self.state()),
            Regex::Epsilon => {
                let (s, t) = (self.state(), self.state());
                self.eps[s].push(t);
                (s, t)
            }
            Regex::Literal(a) => {
                let (s, t) = (self.state(), self.state());
                self.moves[s].push((*a, t));
                (s, t)
            }
            Regex::Concat(l, r) => {
                let (ls, le) = self.build(l);
                let (rs, re) = self.build(r);
                self.eps[le].push(rs);
                (ls, re)
            }
            Regex::Union(l, r) => {
                let s = self.state();
                let (ls, le) = self.build(l);
                let (rs, re) = self.build(r);
                let t = self.state();
                self.eps[s].extend([ls, rs]);
                self.eps[le].push(t);
                self.eps[re].push(t);
                (s, t)
            }
            Regex::Star(c) => {
                let s = self.state();
                let (cs, ce) = self.build(c);
                let t = self.state();
                self.eps[s].extend([cs, t]);
                self.eps[ce].extend([cs, t]);
                (s, t)
            }
        }
    }

    fn closure(&self, from: usize, seen: &mut [u32], stamp: u32, out: &mut Vec<usize>) {
        out.clear();
        out.push(from);
        seen[from] = stamp;
        let mut i = 0;
        while i < out.len() {
            let q = out[i];
            i += 1;
            for &r in &self.eps[q] {
                if seen[r] != stamp {
                    seen[r] = stamp;
                    out.push(r);
                }
            }
        }
    }
}

/// Compiles a regular expression into an ε-free NFA.
///
/// Thompson's construction is followed by ε-elimination: each kept state
/// moves on `a` to every `a`-target of its ε-closure and accepts when its
/// closure contains the final state. Only the initial state and targets of
/// symbol moves are kept, numbered in construction order.
///
/// Panics if a literal is outside `alphabet`.
pub fn compile_to_nfa(ast: &Regex, alphabet: &Alphabet) -> Nfa {
    if let Some(max) = ast.max_symbol() {
        assert!(max < alphabet.len(), "literal {max} outside the alphabet");
    }
    let mut eps = EpsNfa::default();
    let (start, end) = eps.build(ast);

    let total = eps.eps.len();
    let mut keep = vec![false; total];
    keep[start] = true;
    for moves in &eps.moves {
        for &(_, t) in moves {
            keep[t] = true;
        }
    }
    let mut renumber = vec![usize::MAX; total];
    let mut count = 0;
    for q in 0..total {
        if keep[q] {
            renumber[q] = count;
            count += 1;
        }
    }

    let mut nfa = Nfa::new(alphabet.clone(), count, renumber[start]).expect("initial state kept");
    let mut seen = vec![0u32; total];
    let mut closure = Vec::new();
    let mut stamp = 0;
    for q in (0..total).filter(|&q| keep[q]) {
        stamp += 1;
        eps.closure(q, &mut seen, stamp, &mut closure);
        let from = renumber[q];
        for &r in &closure {
            if r == end {
                nfa.set_accepting(from, true).expect("in range");
            }
            for &(a, t) in &eps.moves[r] {
                nfa.add_transition(from, a, renumber[t]).expect("in range");
            }
        }
    }
    nfa
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse;

    #[test]
    fn literal_gives_two_states() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let nfa = compile_to_nfa(&Regex::Literal(0), &al);
        assert_eq!(nfa.state_count(), 2);
        assert!(nfa.accepts(&[0]));
        assert!(!nfa.accepts(&[]));
        assert!(!nfa.accepts(&[1]));
        assert!(!nfa.accepts(&[0, 0]));
    }

    #[test]
    fn empty_has_no_accepting_state() {
        let al = Alphabet::new(["a"]).unwrap();
        let nfa = compile_to_nfa(&Regex::Empty, &al);
        assert_eq!(nfa.accepting_states().count(), 0);
        let eps = compile_to_nfa(&Regex::Epsilon, &al);
        assert!(eps.accepts(&[]));
        assert!(!eps.accepts(&[0]));
    }

    #[test]
    fn star_of_union_accepts_everything_short() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let ast = parse("(a|b)*", &al).unwrap();
        let nfa = compile_to_nfa(&ast, &al);
        assert!(nfa.state_count() <= 2 * ast.node_count());
        for len in 0..=8usize {
            for bits in 0..(1usize << len) {
                let w: Vec<usize> = (0..len).map(|i| (bits >> i) & 1).collect();
                assert!(nfa.accepts(&w));
            }
        }
    }

    #[test]
    fn nested_stars() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let nfa = compile_to_nfa(&parse("(a*b*)*a", &al).unwrap(), &al);
        assert!(nfa.accepts(&[0]));
        assert!(nfa.accepts(&[1, 1, 0, 0]));
        assert!(!nfa.accepts(&[0, 1]));
    }
}
