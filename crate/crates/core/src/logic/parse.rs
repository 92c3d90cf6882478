use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{FoError, Formula};
use crate::algebra::GreenRelation;
use crate::omega::{self, OmegaError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Star,
    Equals,
    Arrow,
    Iff,
    LeqGreen(GreenRelation),
    Open,
    Close,
    Colon,
    Identity(omega::OmegaIdentity),
}

const KEYWORDS: [&str; 5] = ["exists", "forall", "not", "and", "or"];

fn syntax(position: usize, message: impl Into<String>) -> FoError {
    FoError::Syntax { position, message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, FoError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let c = src[i..].chars().next().expect("in bounds");
        let start = i;
        match c {
            c if c.is_whitespace() => i += c.len_utf8(),
            '*' => {
                out.push((start, Tok::Star));
                i += 1;
            }
            '=' => {
                out.push((start, Tok::Equals));
                i += 1;
            }
            '(' => {
                out.push((start, Tok::Open));
                i += 1;
            }
            ')' => {
                out.push((start, Tok::Close));
                i += 1;
            }
            ':' => {
                out.push((start, Tok::Colon));
                i += 1;
            }
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((start, Tok::Arrow));
                i += 2;
            }
            '<' if src[i..].starts_with("<->") => {
                out.push((start, Tok::Iff));
                i += 3;
            }
            '<' if bytes.get(i + 1) == Some(&b'=') => {
                let rel = match bytes.get(i + 2) {
                    Some(b'R') => GreenRelation::LeqR,
                    Some(b'L') => GreenRelation::LeqL,
                    Some(b'J') => GreenRelation::LeqJ,
                    Some(b'H') => GreenRelation::LeqH,
                    _ => return Err(syntax(start, "expected R, L, J or H after '<='")),
                };
                out.push((start, Tok::LeqGreen(rel)));
                i += 3;
            }
            '[' => {
                let close = src[i..]
                    .find(']')
                    .map(|k| i + k)
                    .ok_or_else(|| syntax(start, "unclosed '['"))?;
                let inner = &src[i + 1..close];
                let id = omega::parse_identity(inner).map_err(|e| match e {
                    OmegaError::Syntax { position, message } => {
                        syntax(i + 1 + position, format!("in identity: {message}"))
                    }
                    other => FoError::Identity(other),
                })?;
                out.push((start, Tok::Identity(id)));
                i = close + 1;
            }
            '$' => return Err(FoError::ReservedIdentifier(start)),
            c if c.is_alphabetic() || c == '_' => {
                let mut end = i;
                for ch in src[i..].chars() {
                    if ch.is_alphanumeric() || ch == '_' || ch == '\'' {
                        end += ch.len_utf8();
                    } else {
                        break;
                    }
                }
                out.push((start, Tok::Ident(String::from(&src[i..end]))));
                i = end;
            }
            other => return Err(syntax(start, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(i, _)| *i)
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), FoError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    fn variable(&mut self) -> Result<String, FoError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(syntax(self.offset(), "expected a variable")),
        }
    }

    fn body(&mut self) -> Result<Formula, FoError> {
        let left = self.disj()?;
        match self.peek() {
            Some(Tok::Arrow) => {
                self.pos += 1;
                Ok(Formula::implies(left, self.disj()?))
            }
            Some(Tok::Iff) => {
                self.pos += 1;
                Ok(Formula::iff(left, self.disj()?))
            }
            _ => Ok(left),
        }
    }

    fn disj(&mut self) -> Result<Formula, FoError> {
        let mut acc = self.conj()?;
        while self.keyword("or") {
            self.pos += 1;
            acc = Formula::or(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, FoError> {
        let mut acc = self.unit()?;
        while self.keyword("and") {
            self.pos += 1;
            acc = Formula::and(acc, self.unit()?);
        }
        Ok(acc)
    }

    fn unit(&mut self) -> Result<Formula, FoError> {
        if self.keyword("not") {
            self.pos += 1;
            return Ok(Formula::not(self.unit()?));
        }
        if self.keyword("exists") || self.keyword("forall") {
            let exists = self.keyword("exists");
            self.pos += 1;
            let v = self.variable()?;
            if self.peek() == Some(&Tok::Colon) {
                self.pos += 1;
            }
            let body = self.body()?;
            return Ok(if exists { Formula::exists(&v, body) } else { Formula::forall(&v, body) });
        }
        match self.peek().cloned() {
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.body()?;
                self.expect(Tok::Close, "')'")?;
                Ok(inner)
            }
            Some(Tok::Identity(id)) => {
                self.pos += 1;
                Ok(Formula::Identity(id))
            }
            Some(Tok::Ident(_)) => self.atom(),
            _ => Err(syntax(self.offset(), "expected a formula")),
        }
    }

    fn atom(&mut self) -> Result<Formula, FoError> {
        let x = self.variable()?;
        match self.peek().cloned() {
            Some(Tok::Star) => {
                self.pos += 1;
                let y = self.variable()?;
                self.expect(Tok::Equals, "'='")?;
                let z = self.variable()?;
                Ok(Formula::Mult(x, y, z))
            }
            Some(Tok::Equals) => {
                self.pos += 1;
                let y = self.variable()?;
                Ok(Formula::Eq(x, y))
            }
            Some(Tok::LeqGreen(rel)) => {
                self.pos += 1;
                let y = self.variable()?;
                Ok(Formula::Green(rel, x, y))
            }
            Some(Tok::Ident(r)) if matches!(r.as_str(), "R" | "L" | "J" | "H") => {
                // `x R y` needs a variable after the relation letter
                if !matches!(self.peek_at(1), Some(Tok::Ident(_))) {
                    return Err(syntax(self.offset(), "expected '*', '=' or a Green relation"));
                }
                self.pos += 1;
                let rel: GreenRelation = r.parse().expect("relation letter");
                let y = self.variable()?;
                Ok(Formula::Green(rel, x, y))
            }
            _ => Err(syntax(self.offset(), "expected '*', '=' or a Green relation")),
        }
    }
}

/// Parses the formula language, leaving macro atoms in place.
///
/// ```text
/// body  := disj (("->" | "<->") disj)?
/// disj  := conj ("or" conj)*
/// conj  := unit ("and" unit)*
/// unit  := "not" unit | ("exists" | "forall") ident ":"? body
///        | "(" body ")" | atom
/// atom  := ident "*" ident "=" ident | ident "=" ident
///        | ident ("<=R"|"<=L"|"<=J"|"<=H"|"R"|"L"|"J"|"H") ident
///        | "[" omega-identity "]"
/// ```
pub fn parse_formula(src: &str) -> Result<Formula, FoError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, end: src.len() };
    let f = p.body()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(f)
}
