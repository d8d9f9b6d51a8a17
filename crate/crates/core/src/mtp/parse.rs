//! Recursive-descent parser for MTP expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*' factor) | ('/' divisor))*
//! factor := atom ('^' nat)*
//! atom   := rational | 'x' | ('sin'|'cos') '(' [rational '*'] 'x' ')' | '(' expr ')'
//! rational := int ['/' nat]
//! ```
//!
//! A divisor must evaluate to a non-zero constant.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::expr::MtpExpr;
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
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

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i].1 == '.' {
                return Err(err(
                    chars[i].0,
                    "decimal literals are not supported; write a rational such as 3/2",
                ));
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Num(digits.parse().expect("digits")), pos));
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Ident(word), pos));
            continue;
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => {
                return Err(err(
                    pos,
                    "decimal literals are not supported; write a rational such as 3/2",
                ))
            }
            _ => return Err(err(pos, format!("unexpected character '{ch}'"))),
        };
        out.push((tok, pos));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<MtpExpr> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MtpExpr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.divisor()?;
                    if d.is_zero() {
                        return Err(err(pos, "division by zero"));
                    }
                    acc = acc.scale(&d.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    /// A constant divisor: an integer, or a parenthesized constant expression.
    fn divisor(&mut self) -> Result<Rational> {
        let pos = self.pos();
        let base = match self.bump() {
            Tok::Num(n) => MtpExpr::constant(Rational::from_integer(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                e
            }
            _ => return Err(err(pos, "expected a constant divisor")),
        };
        let e = self.powers(base)?;
        constant_value(&e).ok_or_else(|| err(pos, "only constant divisors are supported"))
    }

    fn factor(&mut self) -> Result<MtpExpr> {
        let base = self.atom()?;
        self.powers(base)
    }

    fn powers(&mut self, mut base: MtpExpr) -> Result<MtpExpr> {
        while *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Tok::Num(n) => {
                    let e = n
                        .to_u32()
                        .filter(|&e| e <= 10_000)
                        .ok_or_else(|| err(pos, "exponent too large"))?;
                    base = base.pow(e);
                }
                Tok::Minus => return Err(err(pos, "exponent must be a non-negative integer")),
                Tok::LParen => {
                    return Err(err(pos, "exponent must be a non-negative integer literal"))
                }
                _ => return Err(err(pos, "expected an exponent")),
            }
        }
        Ok(base)
    }

    fn rational(&mut self) -> Result<Rational> {
        let pos = self.pos();
        let Tok::Num(n) = self.bump() else {
            return Err(err(pos, "expected a number"));
        };
        if *self.peek() == Tok::Slash {
            if let Tok::Num(d) = &self.toks[self.at + 1].0 {
                let d = d.clone();
                let dpos = self.toks[self.at + 1].1;
                self.bump();
                self.bump();
                if d.is_zero() {
                    return Err(err(dpos, "zero denominator"));
                }
                return Ok(Rational::new(n, d));
            }
        }
        Ok(Rational::from_integer(n))
    }

    fn atom(&mut self) -> Result<MtpExpr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(_) => Ok(MtpExpr::constant(self.rational()?)),
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "x" => Ok(MtpExpr::x()),
                    "sin" | "cos" => {
                        let freq = self.trig_argument()?;
                        if name == "sin" {
                            MtpExpr::sin(freq)
                        } else {
                            MtpExpr::cos(freq)
                        }
                    }
                    other => Err(err(pos, format!("unknown identifier '{other}'"))),
                }
            }
            Tok::End => Err(err(pos, "unexpected end of input")),
            _ => Err(err(pos, "expected a number, 'x', sin, cos or '('")),
        }
    }

    /// `'(' [rational '*'] 'x' ')'`
    fn trig_argument(&mut self) -> Result<Rational> {
        self.expect(Tok::LParen, "'(' after function name")?;
        let mut freq = Rational::one();
        if let Tok::Num(_) = self.peek() {
            freq = self.rational()?;
            self.expect(Tok::Star, "'*' between frequency and x")?;
        }
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(v) if v == "x" => {}
            _ => return Err(err(pos, "trigonometric argument must have the form q*x")),
        }
        self.expect(Tok::RParen, "')'")?;
        if freq.is_zero() {
            return Err(err(pos, "frequency must be positive"));
        }
        Ok(freq)
    }
}

fn constant_value(e: &MtpExpr) -> Option<Rational> {
    let mut value = Rational::zero();
    for (k, c) in e.terms() {
        if k.p != 0 || !k.is_polynomial() {
            return None;
        }
        value += c;
    }
    Some(value)
}

/// Parse an MTP expression such as `"2/3*x + x*cos(x) - sin(x)"`.
pub fn parse(text: &str) -> Result<MtpExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    if *p.peek() == Tok::End {
        return Err(err(0, "empty expression"));
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(err(p.pos(), "unexpected token"));
    }
    Ok(e)
}
