//! Almost-equivalence of unary NFAs by exploring the length window
//! `[2^s, 2^(s+1))`, `s = |Q1| + |Q2|`, with boolean matrix powers.
//!
//! A length `n` in the window is written `1 b₁ … b_s` in binary and
//! `Mⁿ` is reached from `M` by `s` steps, each either squaring (`bᵢ = 0`)
//! or squaring and multiplying by `M` (`bᵢ = 1`). Both choices are explored;
//! pairs of matrices already seen at the same depth are merged.

use std::collections::BTreeMap;

use crate::automata::Nfa;
use crate::error::{Error, Result};

use super::{DecisionReport, Relation, Witness};

/// Cap on `|Q1| + |Q2|`.
pub const MAX_UNARY_STATES: usize = 20;

/// Boolean matrix stored as one bit row per state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct BoolMatrix(Vec<u32>);

impl BoolMatrix {
    fn adjacency(nfa: &Nfa) -> BoolMatrix {
        BoolMatrix(
            (0..nfa.state_count())
                .map(|q| {
                    nfa.successors(q, 0)
                        .iter()
                        .fold(0u32, |row, &r| row | 1 << r)
                })
                .collect(),
        )
    }

    fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        BoolMatrix(
            self.0
                .iter()
                .map(|&row| {
                    let mut out = 0u32;
                    let mut bits = row;
                    while bits != 0 {
                        let j = bits.trailing_zeros() as usize;
                        out |= other.0[j];
                        bits &= bits - 1;
                    }
                    out
                })
                .collect(),
        )
    }

    /// Whether `0ⁿ` is accepted when `self = Aⁿ`.
    fn accepts(&self, initial: usize, accepting: u32) -> bool {
        self.0[initial] & accepting != 0
    }
}

fn accepting_mask(nfa: &Nfa) -> u32 {
    nfa.accepting_states().fold(0, |m, q| m | 1 << q)
}

fn check_unary(nfa: &Nfa) -> Result<()> {
    if nfa.alphabet().len() != 1 {
        return Err(Error::InvalidInput(format!(
            "expected a unary alphabet, got {:?}",
            nfa.alphabet().symbols()
        )));
    }
    Ok(())
}

/// p-equivalence of two unary NFAs.
///
/// The verdict is true exactly when no `n` in the window has `0ⁿ` in the
/// symmetric difference; otherwise the smallest such `n` is the witness.
pub fn unary_p_equiv(n1: &Nfa, n2: &Nfa) -> Result<DecisionReport> {
    check_unary(n1)?;
    check_unary(n2)?;
    n1.alphabet().ensure_same(n2.alphabet())?;
    let s = n1.state_count() + n2.state_count();
    if s > MAX_UNARY_STATES {
        return Err(Error::LimitExceeded {
            what: "unary state total",
            limit: MAX_UNARY_STATES as u64,
            actual: s as u64,
        });
    }
    let (a1, a2) = (BoolMatrix::adjacency(n1), BoolMatrix::adjacency(n2));
    let (f1, f2) = (accepting_mask(n1), accepting_mask(n2));

    // matrix pair -> smallest exponent reaching it at this depth
    let mut layer: BTreeMap<(BoolMatrix, BoolMatrix), u64> = BTreeMap::new();
    layer.insert((a1.clone(), a2.clone()), 1);
    let mut explored = 1usize;
    for _ in 0..s {
        let mut next = BTreeMap::new();
        for ((m1, m2), n) in &layer {
            let (sq1, sq2) = (m1.mul(m1), m2.mul(m2));
            let with = (sq1.mul(&a1), sq2.mul(&a2));
            for (pair, exp) in [((sq1, sq2), 2 * n), (with, 2 * n + 1)] {
                next.entry(pair)
                    .and_modify(|e: &mut u64| *e = (*e).min(exp))
                    .or_insert(exp);
            }
        }
        explored += next.len();
        layer = next;
    }

    let witness = layer
        .iter()
        .filter(|((m1, m2), _)| m1.accepts(n1.initial(), f1) != m2.accepts(n2.initial(), f2))
        .map(|(_, &n)| n)
        .min();
    let mut stats = BTreeMap::new();
    stats.insert("nfa1_states".into(), n1.state_count());
    stats.insert("nfa2_states".into(), n2.state_count());
    stats.insert("matrix_pairs".into(), explored);
    Ok(DecisionReport {
        relation: Relation::PEquiv,
        verdict: witness.is_none(),
        witness: witness.map(|n| Witness::Length {
            n,
            bits: format!("{n:b}"),
        }),
        stats,
        alphabet: n1.alphabet().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn cycle(len: usize, accepting: &[usize]) -> Nfa {
        let mut n = Nfa::new(Alphabet::unary(), len, 0).unwrap();
        for q in 0..len {
            n.add_transition(q, 0, (q + 1) % len).unwrap();
        }
        for &q in accepting {
            n.set_accepting(q, true).unwrap();
        }
        n
    }

    #[test]
    fn identical() {
        let n = cycle(3, &[0, 2]);
        assert!(unary_p_equiv(&n, &n).unwrap().verdict);
    }

    #[test]
    fn even_versus_all() {
        let r = unary_p_equiv(&cycle(2, &[0]), &cycle(1, &[0])).unwrap();
        assert!(!r.verdict);
        let Some(Witness::Length { n, bits }) = r.witness else {
            panic!("expected a length")
        };
        assert!((8..16).contains(&n) && n % 2 == 1);
        assert_eq!(n, 9);
        assert_eq!(bits, "1001");
    }

    #[test]
    fn same_language_different_shape() {
        // (00)* as a 4-cycle accepting the even positions
        let r = unary_p_equiv(&cycle(2, &[0]), &cycle(4, &[0, 2])).unwrap();
        assert!(r.verdict);
    }

    #[test]
    fn limits() {
        let big = cycle(11, &[0]);
        assert!(matches!(
            unary_p_equiv(&big, &big),
            Err(Error::LimitExceeded { .. })
        ));
        let ab = Nfa::new(Alphabet::new(["a", "b"]).unwrap(), 1, 0).unwrap();
        assert!(unary_p_equiv(&ab, &ab).is_err());
    }
}
