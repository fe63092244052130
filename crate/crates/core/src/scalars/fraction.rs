use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::laurent::{univariate_gcd, LaurentPoly};
use super::monomial::MonomialScalar;
use super::names::ParamNames;
use crate::error::{Error, Result};

/// An element of the fraction field of the Laurent polynomial ring.
///
/// Fractions are not fully reduced. Equality is decided by cross
/// multiplication, so two representations of the same value compare equal.
/// A light normalization keeps the common cases small: monomial and exactly
/// divisible denominators are cleared, single-parameter fractions are reduced
/// by their gcd, and the denominator is made to have leading term 1.
#[derive(Clone, Debug)]
pub struct ScalarFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl ScalarFraction {
    pub fn zero() -> Self {
        ScalarFraction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        ScalarFraction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(LaurentPoly::from_rational(r))
    }

    pub fn from_monomial(m: &MonomialScalar) -> Self {
        Self::from_poly(LaurentPoly::from_monomial(m))
    }

    /// Builds `num / den`; fails when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return ScalarFraction { num, den };
        }
        if let Some(m) = den.as_monomial() {
            return Self::from_poly(num.mul_monomial(&m.inv()));
        }
        if let Some(q) = num.div_exact(&den) {
            return Self::from_poly(q);
        }
        let (mut num, mut den) = (num, den);
        if let (Some(a), Some(b)) = (num.single_param(), den.single_param()) {
            if let Some(k) = match (a, b) {
                (Some(i), Some(j)) if i == j => Some(i),
                (None, Some(j)) => Some(j),
                _ => None,
            } {
                let g = univariate_gcd(&num, &den, k);
                if g.num_terms() > 1 {
                    if let (Some(n2), Some(d2)) = (num.div_exact(&g), den.div_exact(&g)) {
                        num = n2;
                        den = d2;
                    }
                }
            }
        } else if num.num_terms() > 1 {
            if let Some(q) = den.div_exact(&num) {
                return Self::normalized(LaurentPoly::one(), q);
            }
        }
        if let Some(m) = den.as_monomial() {
            return Self::from_poly(num.mul_monomial(&m.inv()));
        }
        let (den, lt) = den.normalize_leading().expect("nonzero denominator");
        let num = num.mul_monomial(&lt.inv());
        ScalarFraction { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The value as a Laurent polynomial, if it is one.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            self.num.div_exact(&self.den)
        }
    }

    /// The value as a single monomial, if it is one.
    pub fn as_monomial(&self) -> Option<MonomialScalar> {
        self.as_poly()?.as_monomial()
    }

    /// The value as a rational constant, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_poly()?.as_rational()
    }

    /// Total number of stored terms, used by size guards.
    pub fn size(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }

    pub fn scale_monomial(&self, m: &MonomialScalar) -> Self {
        ScalarFraction {
            num: self.num.mul_monomial(m),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let n = u32::try_from(n).map_err(|_| Error::invalid("exponent too large"))?;
        Ok(ScalarFraction {
            num: self.num.pow(n),
            den: self.den.pow(n),
        })
    }

    pub fn fmt_with(&self, names: &ParamNames) -> String {
        if self.den.is_one() {
            return self.num.fmt_with(names);
        }
        let wrap = |p: &LaurentPoly| {
            let s = p.fmt_with(names);
            if p.num_terms() > 1 || s.starts_with('-') {
                format!("({})", s)
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }

    /// Whether printing this value as a product factor needs parentheses.
    pub fn needs_parens(&self) -> bool {
        self.den.is_one() && self.num.num_terms() > 1
    }
}

impl PartialEq for ScalarFraction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ScalarFraction {}

impl fmt::Display for ScalarFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&ParamNames::default()))
    }
}

impl From<LaurentPoly> for ScalarFraction {
    fn from(p: LaurentPoly) -> Self {
        ScalarFraction::from_poly(p)
    }
}

impl From<MonomialScalar> for ScalarFraction {
    fn from(m: MonomialScalar) -> Self {
        ScalarFraction::from_monomial(&m)
    }
}

impl Add for &ScalarFraction {
    type Output = ScalarFraction;
    fn add(self, rhs: &ScalarFraction) -> ScalarFraction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return ScalarFraction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        ScalarFraction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &ScalarFraction {
    type Output = ScalarFraction;
    fn sub(self, rhs: &ScalarFraction) -> ScalarFraction {
        self + &(-rhs)
    }
}

impl Mul for &ScalarFraction {
    type Output = ScalarFraction;
    fn mul(self, rhs: &ScalarFraction) -> ScalarFraction {
        if self.is_zero() || rhs.is_zero() {
            return ScalarFraction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarFraction::from_poly(&self.num * &rhs.num);
        }
        ScalarFraction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &ScalarFraction {
    type Output = ScalarFraction;
    fn neg(self) -> ScalarFraction {
        ScalarFraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for ScalarFraction {
    type Output = ScalarFraction;
    fn neg(self) -> ScalarFraction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarFraction {
            type Output = ScalarFraction;
            fn $m(self, rhs: ScalarFraction) -> ScalarFraction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> LaurentPoly {
        LaurentPoly::from_monomial(&MonomialScalar::param(0))
    }

    fn c(n: i64) -> LaurentPoly {
        LaurentPoly::from_integer(n)
    }

    fn frac(n: LaurentPoly, d: LaurentPoly) -> ScalarFraction {
        ScalarFraction::new(n, d).unwrap()
    }

    #[test]
    fn sum_collapses_to_one() {
        let a = frac(t(), &c(1) - &t());
        let b = frac(&c(1) - &(&c(2) * &t()), &c(1) - &t());
        assert_eq!(&a + &b, ScalarFraction::one());
        assert!((&a + &b).is_one());
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = ScalarFraction {
            num: &c(1) - &t().pow(2),
            den: &c(1) - &t(),
        };
        assert_eq!(a, ScalarFraction::from_poly(&c(1) + &t()));
        let reduced = frac(&c(1) - &t().pow(2), &c(1) - &t());
        assert_eq!(reduced.den(), &LaurentPoly::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let x = frac(t(), &c(1) + &t());
        assert!(matches!(x.checked_div(&ScalarFraction::zero()), Err(Error::Arithmetic(_))));
        assert!(ScalarFraction::new(c(1), LaurentPoly::zero()).is_err());
        assert_eq!(x.checked_div(&x).unwrap(), ScalarFraction::one());
    }

    #[test]
    fn gcd_reduction_keeps_display_small() {
        let a = frac(&c(1) - &t().pow(3), &c(1) - &t().pow(2));
        assert_eq!(a.to_string(), "(1 + t1 + t1^2)/(1 + t1)");
    }
}
