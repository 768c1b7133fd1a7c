//! Region mini-language.
//!
//! ```text
//! expr   := term (':' term)*          union
//! term   := factor+                   whitespace-separated intersection
//! factor := ['#'] ( sign ref | '(' expr ')' )
//! sign   := '+' | '-' | (nothing, meaning '+')
//! ref    := integer | name
//! ```
//!
//! An unsigned reference directly after `#` would be a transport-code cell
//! complement, which has no meaning here, so `#10` is rejected in favour of
//! `#(10)`.

use super::region::{RegionExpr, Sign};

/// Deepest parenthesis/complement nesting accepted.
pub const MAX_NESTING: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown surface name {name:?} at offset {pos}")]
    UnknownSurfaceName { name: String, pos: usize },
    #[error("empty region expression")]
    EmptyExpression,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Colon,
    Hash,
    Plus,
    Minus,
    Int(u32),
    Name(String),
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

/// True if `name` can be referenced by name in a region expression.
pub fn is_valid_ref_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if is_name_start(c)) && chars.all(is_name_char)
}

fn syntax(pos: usize, msg: impl Into<String>) -> RegionParseError {
    RegionParseError::SyntaxError {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, RegionParseError> {
    let mut toks = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ':' => Some(Tok::Colon),
            '#' => Some(Tok::Hash),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(t) = simple {
            toks.push((pos, t));
            it.next();
        } else if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(i, d)) = it.peek() {
                if !is_name_char(d) {
                    break;
                }
                end = i + d.len_utf8();
                it.next();
            }
            let word = &text[pos..end];
            let id: u32 = word
                .parse()
                .map_err(|_| syntax(pos, format!("invalid surface number {word:?}")))?;
            if id == 0 {
                return Err(syntax(pos, "surface numbers start at 1"));
            }
            toks.push((pos, Tok::Int(id)));
        } else if is_name_start(c) {
            let mut end = pos;
            while let Some(&(i, d)) = it.peek() {
                if !is_name_char(d) {
                    break;
                }
                end = i + d.len_utf8();
                it.next();
            }
            toks.push((pos, Tok::Name(text[pos..end].to_string())));
        } else {
            return Err(syntax(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(toks)
}

struct Parser<'a, R> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    resolve: &'a R,
    depth: usize,
}

impl<'a, R: Fn(&str) -> Option<u32>> Parser<'a, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<RegionExpr, RegionParseError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Tok::Colon) {
            self.at += 1;
            terms.push(self.term()?);
        }
        Ok(RegionExpr::any(terms))
    }

    fn term(&mut self) -> Result<RegionExpr, RegionParseError> {
        let mut factors = Vec::new();
        while matches!(
            self.peek(),
            Some(Tok::Hash | Tok::Plus | Tok::Minus | Tok::LParen | Tok::Int(_) | Tok::Name(_))
        ) {
            factors.push(self.factor()?);
        }
        if factors.is_empty() {
            let msg = match self.peek() {
                None => "expected a surface reference, found end of input".to_string(),
                Some(t) => format!("expected a surface reference, found {t:?}"),
            };
            return Err(syntax(self.pos(), msg));
        }
        Ok(RegionExpr::all(factors))
    }

    fn factor(&mut self) -> Result<RegionExpr, RegionParseError> {
        let complement = self.peek() == Some(&Tok::Hash);
        if complement {
            self.at += 1;
            if matches!(self.peek(), Some(Tok::Int(_) | Tok::Name(_))) {
                return Err(syntax(
                    self.pos(),
                    "cell complement `#n` is not supported; write `#(n)` or `#-n`",
                ));
            }
        }
        let inner = match self.peek() {
            Some(Tok::LParen) => {
                let open = self.pos();
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(syntax(open, "nesting too deep"));
                }
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(
                        self.pos(),
                        format!("unclosed '(' opened at offset {open}"),
                    ));
                }
                self.at += 1;
                self.depth -= 1;
                e
            }
            Some(Tok::Plus | Tok::Minus) => {
                let sign = if self.peek() == Some(&Tok::Minus) {
                    Sign::Neg
                } else {
                    Sign::Pos
                };
                self.at += 1;
                self.reference(sign)?
            }
            Some(Tok::Int(_) | Tok::Name(_)) => self.reference(Sign::Pos)?,
            _ => {
                return Err(syntax(
                    self.pos(),
                    "expected a signed surface reference or '('",
                ))
            }
        };
        Ok(if complement {
            inner.complement()
        } else {
            inner
        })
    }

    fn reference(&mut self, sign: Sign) -> Result<RegionExpr, RegionParseError> {
        let pos = self.pos();
        let id = match self.peek() {
            Some(Tok::Int(id)) => *id,
            Some(Tok::Name(name)) => {
                (self.resolve)(name).ok_or_else(|| RegionParseError::UnknownSurfaceName {
                    name: name.clone(),
                    pos,
                })?
            }
            _ => return Err(syntax(pos, "expected a surface number or name after sign")),
        };
        self.at += 1;
        Ok(RegionExpr::Sense {
            surface_id: id,
            sign,
        })
    }
}

/// Parses a region expression, resolving surface names through `resolve`.
/// The result is normalized (see [`RegionExpr::normalized`]).
pub fn parse_region<R>(text: &str, resolve: &R) -> Result<RegionExpr, RegionParseError>
where
    R: Fn(&str) -> Option<u32>,
{
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(RegionParseError::EmptyExpression);
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        resolve,
        depth: 0,
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), format!("unexpected {:?}", p.toks[p.at].1)));
    }
    Ok(e)
}

/// Parses an expression that uses surface numbers only.
pub fn parse_region_ids(text: &str) -> Result<RegionExpr, RegionParseError> {
    parse_region(text, &|_: &str| None)
}
