use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::analysis::{MuWitness, PumpWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    PEquiv,
    FEquiv,
    EEquiv,
    ZeroOne,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Equal => "equal",
            Relation::PEquiv => "p_equiv",
            Relation::FEquiv => "f_equiv",
            Relation::EEquiv => "e_equiv",
            Relation::ZeroOne => "zero_one",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A word in the symmetric difference (outside `E` for E-equivalence).
    Word { word: Vec<usize>, rendered: String },
    /// Infinitely many words `prefix · cycleⁱ · suffix` in the symmetric
    /// difference.
    Pump {
        #[serde(flatten)]
        pump: PumpWitness,
    },
    /// Accepting state of a sink component of the XOR automaton.
    Mu {
        #[serde(flatten)]
        mu: MuWitness,
    },
    /// A length `n` with `0ⁿ` in the symmetric difference of two unary NFAs;
    /// `bits` is `n` in binary.
    Length { n: u64, bits: String },
    /// Outcome of both disjuncts of the zero-one test. When a disjunct fails
    /// its sink-component witness is included.
    ZeroOne {
        almost_empty: bool,
        almost_full: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        not_almost_empty: Option<MuWitness>,
        #[serde(skip_serializing_if = "Option::is_none")]
        not_almost_full: Option<MuWitness>,
    },
}

impl Witness {
    pub(crate) fn word(alphabet: &Alphabet, word: Vec<usize>) -> Witness {
        let rendered = alphabet.render(&word);
        Witness::Word { word, rendered }
    }
}

/// Verdict of one query plus a witness and the sizes of the automata built
/// along the way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub relation: Relation,
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub stats: BTreeMap<String, usize>,
    pub alphabet: Alphabet,
}

impl DecisionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line human readable description.
    pub fn summary(&self) -> String {
        let mut s = format!("{}: {}", self.relation, self.verdict);
        match &self.witness {
            None => {}
            Some(Witness::Word { rendered, .. }) => {
                s += &format!(" (witness word: {})", quote(rendered));
            }
            Some(Witness::Pump { pump }) => {
                s += &format!(
                    " (pumpable: {} · ({})* · {})",
                    quote(&self.alphabet.render(&pump.prefix)),
                    self.alphabet.render(&pump.cycle),
                    quote(&self.alphabet.render(&pump.suffix)),
                );
            }
            Some(Witness::Mu { mu }) => {
                s += &format!(
                    " (sink state {} reached by {})",
                    mu.state,
                    quote(&self.alphabet.render(&mu.access))
                );
            }
            Some(Witness::Length { n, .. }) => s += &format!(" (differs at length {n})"),
            Some(Witness::ZeroOne {
                almost_empty,
                almost_full,
                ..
            }) => {
                s += match (almost_empty, almost_full) {
                    (true, _) => " (almost empty)",
                    (false, true) => " (almost full)",
                    (false, false) => " (neither almost empty nor almost full)",
                };
            }
        }
        s
    }
}

fn quote(s: &str) -> String {
    if s.is_empty() {
        "ε".into()
    } else {
        s.into()
    }
}
