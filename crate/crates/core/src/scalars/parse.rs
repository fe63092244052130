use num_bigint::BigInt;
use num_rational::BigRational;

use super::fraction::ScalarFraction;
use super::monomial::MonomialScalar;
use super::names::ParamNames;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push(Token::Plus);
                i += 1;
            }
            b'-' => {
                out.push(Token::Minus);
                i += 1;
            }
            b'*' => {
                out.push(Token::Star);
                i += 1;
            }
            b'/' => {
                out.push(Token::Slash);
                i += 1;
            }
            b'^' => {
                out.push(Token::Caret);
                i += 1;
            }
            b'(' => {
                out.push(Token::LParen);
                i += 1;
            }
            b')' => {
                out.push(Token::RParen);
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().map_err(|_| Error::Parse(format!("bad number in {:?}", src)))?;
                out.push(Token::Num(n));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token::Ident(src[start..i].to_string()));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character {:?} at offset {} in {:?}",
                    b as char, i, src
                )))
            }
        }
    }
    Ok(out)
}

/// Cursor over a token stream, shared by the scalar and algebra parsers.
pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(toks: &'a [Token], src: &'a str) -> Self {
        Cursor { toks, pos: 0, src }
    }

    pub(crate) fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&'a Token> {
        self.toks.get(self.pos + k)
    }

    pub(crate) fn bump(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub(crate) fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, t: &Token) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", t)))
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{} at token {} in {:?}", msg, self.pos, self.src))
    }

    /// Parses an exponent after `^`, returned in half-units.
    ///
    /// Accepts `n`, `-n`, `p/2` with `p` odd, and any of these in parentheses.
    pub(crate) fn exponent_halves(&mut self) -> Result<i64> {
        let paren = self.eat(&Token::LParen);
        let neg = self.eat(&Token::Minus);
        let n = match self.bump() {
            Some(Token::Num(n)) => i64::try_from(n.clone()).map_err(|_| self.error("exponent too large"))?,
            _ => return Err(self.error("expected integer exponent")),
        };
        let n = if neg { -n } else { n };
        let halves = match (self.peek(), self.peek_at(1)) {
            (Some(Token::Slash), Some(Token::Num(d))) if *d == BigInt::from(2) && (paren || n % 2 != 0) => {
                self.pos += 2;
                n
            }
            _ => 2 * n,
        };
        if paren {
            self.expect(&Token::RParen)?;
        }
        Ok(halves)
    }
}

/// Raises a scalar to a (half-)integer power.
pub(crate) fn pow_halves(base: &ScalarFraction, halves: i64) -> Result<ScalarFraction> {
    if halves % 2 == 0 {
        return base.pow(halves / 2);
    }
    let m = base
        .as_monomial()
        .ok_or_else(|| Error::Parse("half-integer powers need a monomial base".into()))?;
    let r = m
        .pow(halves)
        .sqrt()
        .ok_or_else(|| Error::NeedsFieldExtension(format!("square root of {}", m.pow(halves))))?;
    Ok(ScalarFraction::from_monomial(&r))
}

struct ScalarParser<'a> {
    cur: Cursor<'a>,
    names: &'a ParamNames,
}

impl ScalarParser<'_> {
    fn expr(&mut self) -> Result<ScalarFraction> {
        let mut acc = self.term()?;
        loop {
            if self.cur.eat(&Token::Plus) {
                acc = &acc + &self.term()?;
            } else if self.cur.eat(&Token::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarFraction> {
        let mut acc = self.unary()?;
        loop {
            if self.cur.eat(&Token::Star) {
                acc = &acc * &self.unary()?;
            } else if self.cur.eat(&Token::Slash) {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarFraction> {
        if self.cur.eat(&Token::Minus) {
            return Ok(-self.unary()?);
        }
        if self.cur.eat(&Token::Plus) {
            return self.unary();
        }
        let base = self.atom()?;
        if self.cur.eat(&Token::Caret) {
            let h = self.cur.exponent_halves()?;
            return pow_halves(&base, h);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ScalarFraction> {
        match self.cur.bump() {
            Some(Token::Num(n)) => Ok(ScalarFraction::from_rational(BigRational::from_integer(n.clone()))),
            Some(Token::Ident(id)) => {
                let k = self
                    .names
                    .lookup(id)
                    .ok_or_else(|| Error::Parse(format!("unknown parameter {:?}", id)))?;
                Ok(ScalarFraction::from_monomial(&MonomialScalar::param(k)))
            }
            Some(Token::LParen) => {
                let v = self.expr()?;
                self.cur.expect(&Token::RParen)?;
                Ok(v)
            }
            _ => Err(self.cur.error("expected a number, parameter or '('")),
        }
    }
}

/// Parses a scalar literal such as `"3/2*t1^2*t2^-1"` or `"(1 + q)/q"`.
pub fn parse_scalar(src: &str, names: &ParamNames) -> Result<ScalarFraction> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty scalar literal".into()));
    }
    let mut p = ScalarParser {
        cur: Cursor::new(&toks, src),
        names,
    };
    let v = p.expr()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("trailing input"));
    }
    Ok(v)
}

/// Parses a scalar literal that must denote a nonzero monomial.
pub fn parse_monomial(src: &str, names: &ParamNames) -> Result<MonomialScalar> {
    parse_scalar(src, names)?
        .as_monomial()
        .ok_or_else(|| Error::Parse(format!("{:?} is not a nonzero monomial", src)))
}
