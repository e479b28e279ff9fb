use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, ordered alphabet of opaque symbol tokens.
///
/// Symbols are referred to everywhere else by their index in this list, so
/// the order is observable: it fixes the numbering of transitions, the
/// enumeration order of words and the canonical JSON output.
///
/// A token may be any non-empty string without whitespace, commas or single
/// quotes.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty()
                || s.chars()
                    .any(|c| c.is_whitespace() || c == ',' || c == '\'')
            {
                return Err(Error::InvalidAlphabet(format!("bad symbol token {s:?}")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Parses a comma separated list such as `a1,a2,a3`.
    pub fn parse_list(list: &str) -> Result<Self> {
        Alphabet::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    /// The unary alphabet `{0}`.
    pub fn unary() -> Self {
        Alphabet::new(["0"]).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.index.get(symbol).copied()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// Renders a word (a sequence of symbol indices) with spaces between tokens.
    pub fn render(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&a| self.symbols[a].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Resolves a word given as symbol tokens.
    pub fn word<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Vec<usize>> {
        tokens
            .iter()
            .map(|t| {
                self.index_of(t.as_ref())
                    .ok_or_else(|| Error::UndeclaredSymbol(t.as_ref().to_string()))
            })
            .collect()
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self.symbols == other.symbols {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.symbols.clone(),
                right: other.symbols.clone(),
            })
        }
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Self> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.symbols.iter()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
        assert!(Alphabet::new(["it's"]).is_err());
    }

    #[test]
    fn parse_list_keeps_order() {
        let a = Alphabet::parse_list("a2, a1 ,a3").unwrap();
        assert_eq!(a.symbols(), ["a2", "a1", "a3"]);
        assert_eq!(a.index_of("a1"), Some(1));
        assert_eq!(a.index_of("a4"), None);
    }

    #[test]
    fn serde_validates() {
        let a: Alphabet = serde_json::from_str(r#"["x","y"]"#).unwrap();
        assert_eq!(a.len(), 2);
        assert!(serde_json::from_str::<Alphabet>(r#"["x","x"]"#).is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"["x","y"]"#);
    }
}
