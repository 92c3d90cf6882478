use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{OmegaError, OmegaIdentity, OmegaTerm};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Open,
    Close,
    Omega,
    Equals,
}

fn syntax(position: usize, message: impl Into<String>) -> OmegaError {
    OmegaError::Syntax { position, message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, OmegaError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push((i, Tok::Open));
            }
            ')' => {
                chars.next();
                out.push((i, Tok::Close));
            }
            '=' => {
                chars.next();
                out.push((i, Tok::Equals));
            }
            '^' => {
                chars.next();
                match chars.next() {
                    Some((_, 'w')) | Some((_, 'ω')) => out.push((i, Tok::Omega)),
                    _ => return Err(syntax(i, "expected 'w' after '^'")),
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((i, Tok::Ident(name)));
            }
            other => return Err(syntax(i, alloc::format!("unexpected character {other:?}"))),
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

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(i, _)| *i)
    }

    fn term(&mut self) -> Result<OmegaTerm, OmegaError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Open)) {
            let next = self.factor()?;
            acc = OmegaTerm::concat(acc, next);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<OmegaTerm, OmegaError> {
        let at = self.offset();
        let mut base = match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                OmegaTerm::Var(name)
            }
            Some((_, Tok::Open)) => {
                self.pos += 1;
                let inner = self.term()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(syntax(at, "expected a variable or '('")),
        };
        while self.peek() == Some(&Tok::Omega) {
            self.pos += 1;
            base = OmegaTerm::omega(base);
        }
        Ok(base)
    }
}

/// Parses a term such as `(x y)^w x`.
pub fn parse_term(src: &str) -> Result<OmegaTerm, OmegaError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, end: src.len() };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(t)
}

/// Parses `lhs = rhs`, e.g. `x^w x = x^w`.
pub fn parse_identity(src: &str) -> Result<OmegaIdentity, OmegaError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, end: src.len() };
    let lhs = p.term()?;
    if p.peek() != Some(&Tok::Equals) {
        return Err(syntax(p.offset(), "expected '='"));
    }
    p.pos += 1;
    let rhs = p.term()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(OmegaIdentity::new(lhs, rhs))
}

/// Parses a finite basis: identities separated by `;` or newlines, `#`
/// starting a comment.
pub fn parse_basis(src: &str) -> Result<Vec<OmegaIdentity>, OmegaError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in src.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let mut inner = 0;
        for part in content.split(';') {
            if !part.trim().is_empty() {
                let id = parse_identity(part).map_err(|e| match e {
                    OmegaError::Syntax { position, message } => OmegaError::Syntax {
                        position: offset + inner + position,
                        message,
                    },
                    other => other,
                })?;
                out.push(id);
            }
            inner += part.len() + 1;
        }
        offset += line.len();
    }
    if out.is_empty() {
        return Err(syntax(0, "no identity given".to_string()));
    }
    Ok(out)
}
