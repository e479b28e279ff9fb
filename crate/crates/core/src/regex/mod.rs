//! Regular expressions over a declared alphabet.
//!
//! The syntax tree has exactly six constructors: the empty language, the
//! empty word, a single symbol, concatenation, union and Kleene star.
//!
//! Surface grammar accepted by [`parse`]:
//!
//! ```text
//! union   := concat ('|' concat)*
//! concat  := postfix ('.'? postfix)*
//! postfix := atom '*'*
//! atom    := '0' | '1' | ident | quoted | '(' union ')'
//! ```
//!
//! `0` denotes the empty language and `1` the empty word. An identifier
//! (`[a-zA-Z][a-zA-Z0-9_]*`) that is a declared symbol is a literal; otherwise
//! it must split into declared symbols in exactly one way, so `ab` over
//! `{a,b}` reads as `a.b`. Any symbol can be written in single quotes, which
//! is how tokens such as `#` or the unary symbol `0` are spelled.

mod parse;
mod thompson;

use std::fmt;

use crate::alphabet::Alphabet;

pub use parse::parse;
pub use thompson::compile_to_nfa;

/// Regular expression syntax tree. Literals are indices into an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Literal(usize),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn literal(symbol: usize) -> Regex {
        Regex::Literal(symbol)
    }

    pub fn concat(left: Regex, right: Regex) -> Regex {
        Regex::Concat(Box::new(left), Box::new(right))
    }

    pub fn union(left: Regex, right: Regex) -> Regex {
        Regex::Union(Box::new(left), Box::new(right))
    }

    pub fn star(inner: Regex) -> Regex {
        Regex::Star(Box::new(inner))
    }

    /// Balanced union of all items; the empty union is `0`.
    pub fn union_all<I: IntoIterator<Item = Regex>>(items: I) -> Regex {
        balanced(items.into_iter().collect(), Regex::Empty, Regex::union)
    }

    /// Balanced concatenation of all items; the empty product is `1`.
    pub fn concat_all<I: IntoIterator<Item = Regex>>(items: I) -> Regex {
        balanced(items.into_iter().collect(), Regex::Epsilon, Regex::concat)
    }

    /// Union of the given symbols, i.e. a character class.
    pub fn any_of<I: IntoIterator<Item = usize>>(symbols: I) -> Regex {
        Regex::union_all(symbols.into_iter().map(Regex::Literal))
    }

    /// The whole alphabet as a single-letter class.
    pub fn any(alphabet: &Alphabet) -> Regex {
        Regex::any_of(0..alphabet.len())
    }

    /// `A*` for the given alphabet.
    pub fn universal(alphabet: &Alphabet) -> Regex {
        Regex::star(Regex::any(alphabet))
    }

    /// `r` concatenated with itself `times` times.
    pub fn power(&self, times: usize) -> Regex {
        Regex::concat_all(std::iter::repeat_n(self.clone(), times))
    }

    /// Number of nodes in the tree.
    pub fn node_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            count += 1;
            match node {
                Regex::Concat(l, r) | Regex::Union(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
                Regex::Star(c) => stack.push(c),
                _ => {}
            }
        }
        count
    }

    /// Largest literal index used, if any.
    pub fn max_symbol(&self) -> Option<usize> {
        let mut best = None;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                Regex::Literal(a) => best = best.max(Some(*a)),
                Regex::Concat(l, r) | Regex::Union(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
                Regex::Star(c) => stack.push(c),
                _ => {}
            }
        }
        best
    }

    /// Canonical fully parenthesized rendering; `parse` reads it back to the
    /// same tree.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> Display<'a> {
        Display {
            regex: self,
            alphabet,
        }
    }
}

fn balanced(mut items: Vec<Regex>, unit: Regex, join: fn(Regex, Regex) -> Regex) -> Regex {
    match items.len() {
        0 => unit,
        1 => items.pop().expect("one item"),
        n => {
            let right = items.split_off(n / 2);
            join(
                balanced(items, unit.clone(), join),
                balanced(right, unit, join),
            )
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub struct Display<'a> {
    regex: &'a Regex,
    alphabet: &'a Alphabet,
}

impl Display<'_> {
    fn write(&self, node: &Regex, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match node {
            Regex::Empty => f.write_str("0"),
            Regex::Epsilon => f.write_str("1"),
            Regex::Literal(a) => {
                let token = self.alphabet.symbol(*a);
                if is_identifier(token) {
                    f.write_str(token)
                } else {
                    write!(f, "'{token}'")
                }
            }
            Regex::Concat(l, r) => {
                f.write_str("(")?;
                self.write(l, f)?;
                f.write_str(".")?;
                self.write(r, f)?;
                f.write_str(")")
            }
            Regex::Union(l, r) => {
                f.write_str("(")?;
                self.write(l, f)?;
                f.write_str("|")?;
                self.write(r, f)?;
                f.write_str(")")
            }
            Regex::Star(c) => {
                self.write(c, f)?;
                f.write_str("*")
            }
        }
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.regex, f)
    }
}
