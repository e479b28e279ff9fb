//! Slow reference implementations used as ground truth in tests.
//!
//! Nothing here goes through determinization, products or the analysis
//! module: regular expressions are matched directly on the syntax tree,
//! automata are simulated state by state and densities are obtained by
//! enumerating every word.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::automata::{Dfa, Nfa};
use crate::equivalence::Language;
use crate::error::{Error, Result};
use crate::regex::Regex;

/// Whether `ast` denotes a language containing `word`, by dynamic
/// programming over all factors of the word.
pub fn regex_matches(ast: &Regex, word: &[usize]) -> bool {
    factor_table(ast, word)[0][word.len()]
}

/// `t[i][j]` is true when `word[i..j]` is in the language of `ast`.
#[allow(clippy::needless_range_loop)]
fn factor_table(ast: &Regex, word: &[usize]) -> Vec<Vec<bool>> {
    let n = word.len();
    let mut t = vec![vec![false; n + 1]; n + 1];
    match ast {
        Regex::Empty => {}
        Regex::Epsilon => {
            for (i, row) in t.iter_mut().enumerate() {
                row[i] = true;
            }
        }
        Regex::Literal(a) => {
            for i in 0..n {
                t[i][i + 1] = word[i] == *a;
            }
        }
        Regex::Union(l, r) => {
            let (lt, rt) = (factor_table(l, word), factor_table(r, word));
            for i in 0..=n {
                for j in i..=n {
                    t[i][j] = lt[i][j] || rt[i][j];
                }
            }
        }
        Regex::Concat(l, r) => {
            let (lt, rt) = (factor_table(l, word), factor_table(r, word));
            for i in 0..=n {
                for j in i..=n {
                    t[i][j] = (i..=j).any(|k| lt[i][k] && rt[k][j]);
                }
            }
        }
        Regex::Star(c) => {
            let ct = factor_table(c, word);
            for j in 0..=n {
                t[j][j] = true;
                for i in (0..j).rev() {
                    t[i][j] = (i + 1..=j).any(|k| ct[i][k] && t[k][j]);
                }
            }
        }
    }
    t
}

/// Set-of-states simulation of an NFA.
pub fn nfa_accepts(nfa: &Nfa, word: &[usize]) -> bool {
    let mut current = vec![false; nfa.state_count()];
    current[nfa.initial()] = true;
    for &a in word {
        let mut next = vec![false; nfa.state_count()];
        for q in (0..nfa.state_count()).filter(|&q| current[q]) {
            for &r in nfa.successors(q, a) {
                next[r] = true;
            }
        }
        current = next;
    }
    (0..nfa.state_count()).any(|q| current[q] && nfa.is_accepting(q))
}

pub fn dfa_accepts(d: &Dfa, word: &[usize]) -> bool {
    let mut q = d.initial();
    for &a in word {
        q = d.next(q, a);
    }
    d.is_accepting(q)
}

/// Membership without any normalization of the input.
pub fn accepts(lang: &Language, word: &[usize]) -> bool {
    match lang {
        Language::Regex { ast, .. } => regex_matches(ast, word),
        Language::Nfa(n) => nfa_accepts(n, word),
        Language::Dfa(d) => dfa_accepts(d, word),
    }
}

/// Calls `visit` on every word of length `len` over `k` symbols, in
/// lexicographic order of symbol indices.
pub fn for_each_word(k: usize, len: usize, mut visit: impl FnMut(&[usize])) {
    let mut word = vec![0usize; len];
    loop {
        visit(&word);
        // odometer increment from the right
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            word[i] += 1;
            if word[i] < k {
                break;
            }
            word[i] = 0;
        }
    }
}

/// All words of length at most `max_len`, shortest first.
pub fn words_up_to(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        for_each_word(k, len, |w| out.push(w.to_vec()));
    }
    out
}

/// `μₙ` by enumerating all `|A|ⁿ` words. Fails when that exceeds
/// `max_enumeration`.
pub fn brute_density(lang: &Language, n: usize, max_enumeration: u64) -> Result<BigRational> {
    let k = lang.alphabet().len();
    let total = (k as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= max_enumeration);
    let Some(total) = total else {
        return Err(Error::LimitExceeded {
            what: "enumeration",
            limit: max_enumeration,
            actual: (k as f64).powi(n as i32).min(u64::MAX as f64) as u64,
        });
    };
    let mut hits = 0u64;
    for_each_word(k, n, |w| {
        if accepts(lang, w) {
            hits += 1;
        }
    });
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::regex::parse;

    #[test]
    fn matcher_basics() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let re = parse("(ab|b)*a", &al).unwrap();
        assert!(regex_matches(&re, &[0]));
        assert!(regex_matches(&re, &[0, 1, 1, 0]));
        assert!(!regex_matches(&re, &[0, 0]));
        assert!(!regex_matches(&re, &[]));
        assert!(regex_matches(&parse("1", &al).unwrap(), &[]));
        assert!(!regex_matches(&parse("0*a", &al).unwrap(), &[1]));
        assert!(regex_matches(&parse("0*", &al).unwrap(), &[]));
    }

    #[test]
    fn enumeration_order() {
        let mut seen = Vec::new();
        for_each_word(2, 2, |w| seen.push(w.to_vec()));
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut empty = 0;
        for_each_word(3, 0, |_| empty += 1);
        assert_eq!(empty, 1);
        assert_eq!(words_up_to(2, 3).len(), 15);
    }

    #[test]
    fn densities() {
        let al = Alphabet::new(["a1", "a2"]).unwrap();
        let all = Language::regex("(a1|a2)*", &al).unwrap();
        assert_eq!(
            brute_density(&all, 4, 1000).unwrap(),
            BigRational::from_integer(1.into())
        );
        let a1 = Language::regex("a1*", &al).unwrap();
        assert_eq!(
            brute_density(&a1, 4, 1000).unwrap(),
            BigRational::new(1.into(), 16.into())
        );
        assert!(matches!(
            brute_density(&a1, 20, 1000),
            Err(Error::LimitExceeded { .. })
        ));
    }
}
