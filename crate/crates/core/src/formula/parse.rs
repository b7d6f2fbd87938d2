//! Recursive-descent parser for
//! `sum := prod ('+' prod)*`, `prod := atom ('*' atom)*`,
//! `atom := NAME | '(' sum ')'`, with `NAME = [A-Za-z][A-Za-z0-9_]*`.

use super::Formula;
use crate::error::ParseError;

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(ParseError::Empty);
    }
    let f = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.unexpected("`+`, `*` or end of input"));
    }
    Ok(f.normalize())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let found = match std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
        {
            Some(c) => format!("`{c}`"),
            None if self.pos >= self.src.len() => "end of input".to_string(),
            None => "invalid UTF-8".to_string(),
        };
        ParseError::Unexpected { pos: self.pos, found, expected }
    }

    fn sum(&mut self) -> Result<Formula, ParseError> {
        let mut terms = vec![self.prod()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.prod()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Formula::Sum(terms) })
    }

    fn prod(&mut self) -> Result<Formula, ParseError> {
        let mut factors = vec![self.atom()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.atom()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Formula::Prod(factors) })
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Formula::Var(name.to_string()))
            }
            _ => Err(self.unexpected("a variable or `(`")),
        }
    }
}
