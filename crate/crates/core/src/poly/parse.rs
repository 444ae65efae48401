//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := uint | ident | '(' expr ')'
//! ```
//!
//! Two lenient extensions are accepted so rendered output always parses back: a
//! leading sign on an `expr`, and `'/' uint` inside a term for rational coefficients.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{PolyRing, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        let single = |tok| Spanned { tok, line: l, column: c };
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
                continue;
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    column += 1;
                }
                out.push(single(Tok::Int(s)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    column += 1;
                }
                out.push(single(Tok::Ident(s)));
                continue;
            }
            _ => {}
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        column += 1;
        out.push(single(tok));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let t = self.bump();
                    let Tok::Int(lit) = &t.tok else {
                        return Err(self.error(&t, "expected an integer after `/`"));
                    };
                    let n: BigInt = lit.parse().expect("digits");
                    let inv = self
                        .ring
                        .field()
                        .fraction(&BigInt::from(1), &n)
                        .ok_or_else(|| Error::CoefficientOverflow {
                            literal: format!("1/{lit}"),
                        })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let t = self.bump();
            let Tok::Int(lit) = &t.tok else {
                return Err(self.error(&t, "expected a non-negative integer exponent"));
            };
            let e: u32 = lit.parse().map_err(|_| Error::ExponentOverflow)?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(lit) => {
                let n: BigInt = lit.parse().expect("digits");
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n)))
            }
            Tok::Ident(name) => match self.ring.var_index(name) {
                Some(i) => Ok(Polynomial::variable(self.ring, i)),
                None => Err(Error::UnknownVariable {
                    name: name.clone(),
                    line: t.line,
                    column: t.column,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.error(&close, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(self.error(&t, "unexpected end of input")),
            other => Err(self.error(&t, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse `text` as an element of `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, ring };
    let f = p.expr()?;
    let rest = p.peek().clone();
    if rest.tok != Tok::End {
        return Err(p.error(&rest, "trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring(vars: &[&str], p: u64) -> Arc<PolyRing> {
        PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            FieldSpec::from_characteristic(p).unwrap(),
        )
    }

    #[test]
    fn heitmann_generator_in_char_two() {
        let r = ring(&["x", "u"], 2);
        let f = parse_polynomial("((x+u)*u)^3", &r).unwrap();
        let expected = parse_polynomial("x^3*u^3 + x^2*u^4 + x*u^5 + u^6", &r).unwrap();
        assert_eq!(f, expected);
        assert_eq!(f.num_terms(), 4);
        // over QQ the binomial coefficients survive
        let q = ring(&["x", "u"], 0);
        let g = parse_polynomial("((x+u)*u)^3", &q).unwrap();
        assert_eq!(g, parse_polynomial("x^3*u^3 + 3*x^2*u^4 + 3*x*u^5 + u^6", &q).unwrap());
    }

    #[test]
    fn zero_and_identities() {
        let r = ring(&["a", "b", "c", "d"], 0);
        assert!(parse_polynomial("0", &r).unwrap().terms().is_empty());
        assert!(parse_polynomial("(a+c)^2 - a^2 - 2*a*c - c^2", &r).unwrap().is_zero());
        assert!(parse_polynomial("  a \n +\tb ", &r).is_ok());
    }

    #[test]
    fn unknown_variable_position() {
        let r = ring(&["x"], 0);
        assert_eq!(
            parse_polynomial("x +\n  y", &r),
            Err(Error::UnknownVariable {
                name: "y".into(),
                line: 2,
                column: 3
            })
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let r = ring(&["x"], 0);
        match parse_polynomial("x + * x", &r) {
            Err(Error::Syntax { line: 1, column: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_polynomial("(x + 1", &r) {
            Err(Error::Syntax { line: 1, column: 7, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_polynomial("x # y", &r) {
            Err(Error::Syntax { column: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_polynomial("x^y", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x x", &r), Err(Error::Syntax { .. })));
    }

    #[test]
    fn modular_literals() {
        let r = ring(&["x"], 7);
        assert_eq!(
            parse_polynomial("9*x", &r).unwrap(),
            parse_polynomial("2*x", &r).unwrap()
        );
        assert_eq!(
            parse_polynomial("x/14", &r),
            Err(Error::CoefficientOverflow { literal: "1/14".into() })
        );
        assert_eq!(
            parse_polynomial("x/3", &r).unwrap(),
            parse_polynomial("5*x", &r).unwrap()
        );
    }

    #[test]
    fn huge_exponent_rejected() {
        let r = ring(&["x"], 0);
        assert_eq!(parse_polynomial("x^99999999999", &r), Err(Error::ExponentOverflow));
    }
}
