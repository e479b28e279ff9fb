use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

use super::Regex;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Zero,
    One,
    Symbol(usize),
    Bar,
    Dot,
    Star,
    Open,
    Close,
}

impl Token {
    fn starts_atom(&self) -> bool {
        matches!(
            self,
            Token::Zero | Token::One | Token::Symbol(_) | Token::Open
        )
    }
}

/// Parses `text` into a syntax tree whose literals refer to `alphabet`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    let tokens = lex(text, alphabet)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let regex = parser.union()?;
    if let Some((at, tok)) = parser.tokens.get(parser.pos) {
        return Err(syntax(*at, format!("unexpected {tok:?}")));
    }
    Ok(regex)
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(text: &str, alphabet: &Alphabet) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0' => {
                out.push((i, Token::Zero));
                i += 1;
            }
            b'1' => {
                out.push((i, Token::One));
                i += 1;
            }
            b'|' => {
                out.push((i, Token::Bar));
                i += 1;
            }
            b'.' => {
                out.push((i, Token::Dot));
                i += 1;
            }
            b'*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            b'(' => {
                out.push((i, Token::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Token::Close));
                i += 1;
            }
            b'\'' => {
                let start = i + 1;
                let len = text[start..]
                    .find('\'')
                    .ok_or_else(|| syntax(i, "unterminated quoted symbol"))?;
                let token = &text[start..start + len];
                let index = alphabet
                    .index_of(token)
                    .ok_or_else(|| Error::UndeclaredSymbol(token.to_string()))?;
                out.push((i, Token::Symbol(index)));
                i = start + len + 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let token = &text[start..i];
                for (offset, symbol) in split_identifier(token, alphabet)? {
                    out.push((start + offset, Token::Symbol(symbol)));
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        }
    }
    Ok(out)
}

/// Resolves an identifier run to declared symbols: the whole run if it is
/// declared, otherwise its unique segmentation into declared symbols.
fn split_identifier(token: &str, alphabet: &Alphabet) -> Result<Vec<(usize, usize)>> {
    if let Some(index) = alphabet.index_of(token) {
        return Ok(vec![(0, index)]);
    }
    let n = token.len();
    // ways[i] = number of segmentations of token[i..], saturating at 2
    let mut ways = vec![0u8; n + 1];
    let mut next = vec![None; n + 1];
    ways[n] = 1;
    for i in (0..n).rev() {
        for j in i + 1..=n {
            if ways[j] > 0 && alphabet.index_of(&token[i..j]).is_some() {
                ways[i] = (ways[i] + ways[j]).min(2);
                next[i] = Some(j);
            }
        }
    }
    match ways[0] {
        0 => Err(Error::UndeclaredSymbol(token.to_string())),
        1 => {
            let mut pieces = Vec::new();
            let mut i = 0;
            while i < n {
                let j = next[i].expect("segmentation exists");
                pieces.push((i, alphabet.index_of(&token[i..j]).expect("declared")));
                i = j;
            }
            Ok(pieces)
        }
        _ => Err(Error::AmbiguousToken {
            token: token.to_string(),
        }),
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(at, _)| *at)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        while self.peek() == Some(&Token::Bar) {
            self.pos += 1;
            let right = self.concat()?;
            left = Regex::union(left, right);
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut left = self.postfix()?;
        loop {
            match self.peek() {
                Some(Token::Dot) => {
                    self.pos += 1;
                    let right = self.postfix()?;
                    left = Regex::concat(left, right);
                }
                Some(t) if t.starts_atom() => {
                    let right = self.postfix()?;
                    left = Regex::concat(left, right);
                }
                _ => return Ok(left),
            }
        }
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut inner = self.atom()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            inner = Regex::star(inner);
        }
        Ok(inner)
    }

    fn atom(&mut self) -> Result<Regex> {
        let at = self.here();
        let token = self.peek().cloned();
        self.pos += 1;
        match token {
            Some(Token::Zero) => Ok(Regex::Empty),
            Some(Token::One) => Ok(Regex::Epsilon),
            Some(Token::Symbol(a)) => Ok(Regex::Literal(a)),
            Some(Token::Open) => {
                let inner = self.union()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(syntax(self.here(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(syntax(at, format!("expected an expression, found {t:?}"))),
            None => Err(syntax(at, "expected an expression, found end of input")),
        }
    }
}
