//! Decision procedures over pairs of regular languages.
//!
//! Every relation reduces to a question about the XOR automaton of the two
//! inputs: emptiness (`equal`), finiteness (`f_equiv`), the sink-component
//! density test (`p_equiv`) and emptiness of its intersection with the
//! complement of `E` (`e_equiv`).

mod report;
mod unary;

use std::collections::BTreeMap;

pub use report::{DecisionReport, Relation, Witness};
pub use unary::{unary_p_equiv, MAX_UNARY_STATES};

use crate::alphabet::Alphabet;
use crate::analysis::{mu_witness, pump_witness, shortest_accepted};
use crate::automata::{determinize, product, xor_product, Dfa, Nfa, DEFAULT_MAX_SUBSETS};
use crate::density::DEFAULT_MAX_HORIZON;
use crate::error::Result;
use crate::regex::{compile_to_nfa, parse, Regex};

/// Resource caps shared by the library and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_dfa_states: usize,
    pub max_horizon: usize,
    pub max_enumeration: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dfa_states: DEFAULT_MAX_SUBSETS,
            max_horizon: DEFAULT_MAX_HORIZON,
            max_enumeration: 10_000_000,
        }
    }
}

/// A language in any of the accepted representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Language {
    Regex { alphabet: Alphabet, ast: Regex },
    Nfa(Nfa),
    Dfa(Dfa),
}

impl Language {
    pub fn regex(text: &str, alphabet: &Alphabet) -> Result<Language> {
        Ok(Language::Regex {
            ast: parse(text, alphabet)?,
            alphabet: alphabet.clone(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Language::Regex { alphabet, .. } => alphabet,
            Language::Nfa(n) => n.alphabet(),
            Language::Dfa(d) => d.alphabet(),
        }
    }

    pub fn to_nfa(&self) -> Nfa {
        match self {
            Language::Regex { alphabet, ast } => compile_to_nfa(ast, alphabet),
            Language::Nfa(n) => n.clone(),
            Language::Dfa(d) => d.to_nfa(),
        }
    }

    /// Normalizes to a total DFA. DFAs are passed through unchanged.
    pub fn to_dfa(&self, limits: &Limits) -> Result<Dfa> {
        self.to_dfa_with_stats(limits, &mut BTreeMap::new(), "")
    }

    fn to_dfa_with_stats(
        &self,
        limits: &Limits,
        stats: &mut BTreeMap<String, usize>,
        tag: &str,
    ) -> Result<Dfa> {
        let nfa = match self {
            Language::Dfa(d) => {
                stats.insert(format!("dfa{tag}_states"), d.state_count());
                return Ok(d.clone());
            }
            Language::Nfa(n) => n.clone(),
            Language::Regex { alphabet, ast } => compile_to_nfa(ast, alphabet),
        };
        stats.insert(format!("nfa{tag}_states"), nfa.state_count());
        let d = determinize(&nfa, limits.max_dfa_states)?;
        stats.insert(format!("dfa{tag}_states"), d.state_count());
        Ok(d)
    }
}

impl From<Dfa> for Language {
    fn from(d: Dfa) -> Self {
        Language::Dfa(d)
    }
}

impl From<Nfa> for Language {
    fn from(n: Nfa) -> Self {
        Language::Nfa(n)
    }
}

struct Prepared {
    xor: Dfa,
    stats: BTreeMap<String, usize>,
}

fn prepare(x1: &Language, x2: &Language, limits: &Limits) -> Result<Prepared> {
    x1.alphabet().ensure_same(x2.alphabet())?;
    let mut stats = BTreeMap::new();
    let d1 = x1.to_dfa_with_stats(limits, &mut stats, "1")?;
    let d2 = x2.to_dfa_with_stats(limits, &mut stats, "2")?;
    let xor = xor_product(&d1, &d2)?;
    stats.insert("xor_states".into(), xor.state_count());
    Ok(Prepared { xor, stats })
}

/// The XOR automaton of two inputs, built exactly as the decision
/// procedures build it. Useful for checking witnesses.
pub fn xor_dfa(x1: &Language, x2: &Language, limits: &Limits) -> Result<Dfa> {
    Ok(prepare(x1, x2, limits)?.xor)
}

/// `L1 = L2`, by emptiness of the XOR automaton. A shortest word of the
/// symmetric difference is the witness.
pub fn equal(x1: &Language, x2: &Language, limits: &Limits) -> Result<DecisionReport> {
    let Prepared { xor, stats } = prepare(x1, x2, limits)?;
    let witness = shortest_accepted(&xor).map(|w| Witness::word(xor.alphabet(), w));
    Ok(DecisionReport {
        relation: Relation::Equal,
        verdict: witness.is_none(),
        witness,
        stats,
        alphabet: xor.alphabet().clone(),
    })
}

/// `μ(L1 △ L2) = 0`: no reachable accepting state of the XOR automaton lies
/// in a sink component.
pub fn p_equiv(x1: &Language, x2: &Language, limits: &Limits) -> Result<DecisionReport> {
    let Prepared { xor, stats } = prepare(x1, x2, limits)?;
    let witness = mu_witness(&xor).map(|mu| Witness::Mu { mu });
    Ok(DecisionReport {
        relation: Relation::PEquiv,
        verdict: witness.is_none(),
        witness,
        stats,
        alphabet: xor.alphabet().clone(),
    })
}

/// `L1 △ L2` is finite.
pub fn f_equiv(x1: &Language, x2: &Language, limits: &Limits) -> Result<DecisionReport> {
    let Prepared { xor, stats } = prepare(x1, x2, limits)?;
    let witness = pump_witness(&xor).map(|pump| Witness::Pump { pump });
    Ok(DecisionReport {
        relation: Relation::FEquiv,
        verdict: witness.is_none(),
        witness,
        stats,
        alphabet: xor.alphabet().clone(),
    })
}

/// `L1 △ L2 ⊆ L(e)`. The witness is a shortest word of the symmetric
/// difference outside `L(e)`.
pub fn e_equiv(
    x1: &Language,
    x2: &Language,
    e: &Language,
    limits: &Limits,
) -> Result<DecisionReport> {
    x1.alphabet().ensure_same(e.alphabet())?;
    let Prepared { xor, mut stats } = prepare(x1, x2, limits)?;
    let de = e.to_dfa_with_stats(limits, &mut stats, "_e")?;
    let outside = product(&xor, &de, |x, y| x && !y)?;
    stats.insert("product_states".into(), outside.state_count());
    let witness = shortest_accepted(&outside).map(|w| Witness::word(xor.alphabet(), w));
    Ok(DecisionReport {
        relation: Relation::EEquiv,
        verdict: witness.is_none(),
        witness,
        stats,
        alphabet: xor.alphabet().clone(),
    })
}

/// Whether `L` is almost empty or almost full. Both disjuncts are always
/// evaluated and reported.
pub fn zero_one(x: &Language, limits: &Limits) -> Result<DecisionReport> {
    let alphabet = x.alphabet().clone();
    let mut stats = BTreeMap::new();
    let d = x.to_dfa_with_stats(limits, &mut stats, "")?;
    let lang = Language::Dfa(d);
    let empty = p_equiv(&lang, &Dfa::empty_language(alphabet.clone()).into(), limits)?;
    let full = p_equiv(&lang, &Dfa::universal(alphabet.clone()).into(), limits)?;
    let mu_of = |r: &DecisionReport| match &r.witness {
        Some(Witness::Mu { mu }) => Some(mu.clone()),
        _ => None,
    };
    stats.insert("xor_empty_states".into(), empty.stats["xor_states"]);
    stats.insert("xor_full_states".into(), full.stats["xor_states"]);
    Ok(DecisionReport {
        relation: Relation::ZeroOne,
        verdict: empty.verdict || full.verdict,
        witness: Some(Witness::ZeroOne {
            almost_empty: empty.verdict,
            almost_full: full.verdict,
            not_almost_empty: mu_of(&empty),
            not_almost_full: mu_of(&full),
        }),
        stats,
        alphabet,
    })
}
