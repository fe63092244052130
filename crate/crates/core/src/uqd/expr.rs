use num_rational::BigRational;

use super::element::PBWElement;
use super::rewrite::{RewriteSystem, Strategy};
use crate::error::{Error, Result};
use crate::scalars::parse::{tokenize, Cursor, Token};
use crate::scalars::{MonomialScalar, ParamNames, ScalarFraction};

/// Expression over the generators of `U(𝒟)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(ScalarFraction),
    /// `a_i`, zero-based.
    A(usize),
    /// Root vector `b_j`, zero-based.
    B(usize),
    /// Group generator `y_h`, zero-based.
    Y(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, other: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(other))
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, other: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(other))
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, other: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(other))
    }
}

impl Expr {
    pub fn pow(self, n: i64) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    pub fn scalar(c: ScalarFraction) -> Expr {
        Expr::Scalar(c)
    }

    pub fn monomial(m: &MonomialScalar) -> Expr {
        Expr::Scalar(ScalarFraction::from_monomial(m))
    }

    /// The group element `Π y_h^{γ_h}`.
    pub fn group(gamma: &[i64]) -> Expr {
        gamma
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .fold(Expr::Scalar(ScalarFraction::one()), |acc, (h, &e)| acc * Expr::Y(h).pow(e))
    }

    /// Substitutes the generators `a_i` and `y_h`.
    pub fn substitute(&self, a: &dyn Fn(usize) -> Expr, y: &dyn Fn(usize) -> Expr) -> Expr {
        let rec = |e: &Expr| Box::new(e.substitute(a, y));
        match self {
            Expr::Scalar(_) | Expr::B(_) => self.clone(),
            Expr::A(i) => a(*i),
            Expr::Y(h) => y(*h),
            Expr::Add(x, z) => Expr::Add(rec(x), rec(z)),
            Expr::Sub(x, z) => Expr::Sub(rec(x), rec(z)),
            Expr::Mul(x, z) => Expr::Mul(rec(x), rec(z)),
            Expr::Neg(x) => Expr::Neg(rec(x)),
            Expr::Pow(x, n) => Expr::Pow(rec(x), *n),
        }
    }
}

fn generator_index(ident: &str, prefix: char) -> Option<usize> {
    let digits = ident.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<usize>().ok()?.checked_sub(1)
}

struct ExprParser<'a> {
    cur: Cursor<'a>,
    names: &'a ParamNames,
}

impl ExprParser<'_> {
    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.cur.eat(&Token::Plus) {
                acc = acc + self.term()?;
            } else if self.cur.eat(&Token::Minus) {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.cur.eat(&Token::Star) {
                acc = acc * self.unary()?;
            } else if self.cur.eat(&Token::Slash) {
                acc = acc * self.unary()?.pow(-1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.cur.eat(&Token::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.cur.eat(&Token::Plus) {
            return self.unary();
        }
        let base = self.atom()?;
        if self.cur.eat(&Token::Caret) {
            let h = self.cur.exponent_halves()?;
            if h % 2 != 0 {
                return Err(self.cur.error("exponents in algebra expressions must be integers"));
            }
            return Ok(base.pow(h / 2));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.cur.bump() {
            Some(Token::Num(n)) => Ok(Expr::Scalar(ScalarFraction::from_rational(BigRational::from_integer(n.clone())))),
            Some(Token::Ident(id)) => {
                if let Some(i) = generator_index(id, 'a') {
                    Ok(Expr::A(i))
                } else if let Some(j) = generator_index(id, 'b') {
                    Ok(Expr::B(j))
                } else if let Some(h) = generator_index(id, 'y') {
                    Ok(Expr::Y(h))
                } else if let Some(k) = self.names.lookup(id) {
                    Ok(Expr::monomial(&MonomialScalar::param(k)))
                } else {
                    Err(Error::Parse(format!("unknown symbol {:?}", id)))
                }
            }
            Some(Token::LParen) => {
                let v = self.expr()?;
                self.cur.expect(&Token::RParen)?;
                Ok(v)
            }
            _ => Err(self.cur.error("expected a number, generator, parameter or '('")),
        }
    }
}

/// Parses expressions such as `"a2*a1"`, `"y1*a1*y1^-1"` or `"(a1 + 2*q)^2"`.
///
/// `a<i>`, `b<j>` and `y<h>` are one-based; other identifiers are parameters.
pub fn parse_expr(src: &str, names: &ParamNames) -> Result<Expr> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = ExprParser {
        cur: Cursor::new(&toks, src),
        names,
    };
    let e = p.expr()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("trailing input"));
    }
    Ok(e)
}

/// Inverse of a single term `c y^γ`.
fn invert(sys: &RewriteSystem, x: &PBWElement) -> Result<PBWElement> {
    let mut it = x.terms();
    match (it.next(), it.next()) {
        (Some((m, c)), None) if m.is_group_like() => {
            let neg: Vec<i64> = m.gamma.iter().map(|e| -e).collect();
            Ok(sys.group_element(neg).scale(&c.inv()?))
        }
        _ => Err(Error::invalid("only nonzero multiples of group-likes can be inverted")),
    }
}

impl RewriteSystem {
    /// Evaluates an expression to its PBW normal form.
    pub fn eval(&self, e: &Expr) -> Result<PBWElement> {
        self.eval_with(e, Strategy::Leftmost)
    }

    pub fn eval_with(&self, e: &Expr, strategy: Strategy) -> Result<PBWElement> {
        let theta = self.datum().theta();
        let s = self.datum().s();
        Ok(match e {
            Expr::Scalar(c) => self.scalar(c.clone()),
            Expr::A(i) if *i < theta => self.generator(*i),
            Expr::A(i) => return Err(Error::invalid(format!("no generator a{}", i + 1))),
            Expr::B(j) if *j < self.num_root_vectors() => self.root_vector_element(*j),
            Expr::B(j) => return Err(Error::invalid(format!("no root vector b{}", j + 1))),
            Expr::Y(h) if *h < s => {
                let mut g = vec![0; s];
                g[*h] = 1;
                self.group_element(g)
            }
            Expr::Y(h) => return Err(Error::invalid(format!("no group generator y{}", h + 1))),
            Expr::Add(x, y) => self.eval_with(x, strategy)?.add(&self.eval_with(y, strategy)?),
            Expr::Sub(x, y) => self.eval_with(x, strategy)?.sub(&self.eval_with(y, strategy)?),
            Expr::Neg(x) => self.eval_with(x, strategy)?.scale(&ScalarFraction::from_integer(-1)),
            Expr::Mul(x, y) => {
                let (x, y) = (self.eval_with(x, strategy)?, self.eval_with(y, strategy)?);
                self.multiply_with(&x, &y, strategy)?
            }
            Expr::Pow(x, n) => {
                let mut base = self.eval_with(x, strategy)?;
                if *n < 0 {
                    base = invert(self, &base)?;
                }
                let mut acc = self.one();
                for _ in 0..n.unsigned_abs() {
                    acc = self.multiply_with(&acc, &base, strategy)?;
                }
                acc
            }
        })
    }

    /// Parses and normalizes an expression.
    pub fn normal_form(&self, src: &str) -> Result<PBWElement> {
        self.eval(&parse_expr(src, self.datum().names())?)
    }
}
