use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Exponents, MonomialScalar};
use super::names::ParamNames;

/// A Laurent polynomial in the formal parameters with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Exponents::zero(), c);
        }
        p
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_monomial(m: &MonomialScalar) -> Self {
        let mut p = Self::zero();
        p.terms.insert(m.exps().clone(), m.coeff().clone());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Exponents::zero())
                .is_some_and(|c| c.is_one())
    }

    /// The single term, when the polynomial is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<MonomialScalar> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        MonomialScalar::new(c.clone(), e.clone())
    }

    /// The constant, when the polynomial has no parameter dependence.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Exponents::zero()).cloned(),
            _ => None,
        }
    }

    /// Leading term in the lexicographic group order.
    pub fn leading(&self) -> Option<MonomialScalar> {
        let (e, c) = self.terms.iter().next_back()?;
        MonomialScalar::new(c.clone(), e.clone())
    }

    pub fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled_shifted(&mut self, other: &Self, c: &BigRational, shift: &Exponents) {
        for (e, d) in &other.terms {
            self.add_term(e.add(shift), c * d);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &MonomialScalar) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, d)| (e.add(m.exps()), d * m.coeff()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Per-coordinate minimum and maximum half-exponents over all terms.
    fn bounds(&self) -> (Exponents, Exponents) {
        let mut it = self.terms.keys();
        let first = it.next().cloned().unwrap_or_default();
        let (mut lo, mut hi) = (first.clone(), first);
        for e in it {
            lo = lo.min_with(e);
            hi = hi.max_with(e);
        }
        (lo, hi)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(m) = divisor.as_monomial() {
            return Some(self.mul_monomial(&m.inv()));
        }
        // A quotient, if it exists, has its exponents inside the box
        // [lo(a) - lo(b), hi(a) - hi(b)] in every coordinate.
        let (alo, ahi) = self.bounds();
        let (blo, bhi) = divisor.bounds();
        let qlo = alo.sub(&blo);
        let qhi = ahi.sub(&bhi);
        let width = qlo.len().max(qhi.len());
        if (0..width).any(|k| qlo.get(k) > qhi.get(k)) {
            return None;
        }
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let lead_inv = lead_c.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = e.sub(lead_e);
            let dim = qe.len().max(width);
            if (0..dim).any(|k| qe.get(k) < qlo.get(k) || qe.get(k) > qhi.get(k)) {
                return None;
            }
            let qc = &c * &lead_inv;
            rem.add_scaled_shifted(divisor, &-qc.clone(), &qe);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Value with every parameter specialized to 1.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Largest index of a parameter that occurs, plus one.
    pub fn param_span(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    /// The only parameter that occurs, if at most one does.
    pub(crate) fn single_param(&self) -> Option<Option<usize>> {
        let mut found: Option<usize> = None;
        for e in self.terms.keys() {
            for (k, &h) in e.halves().iter().enumerate() {
                if h != 0 {
                    match found {
                        None => found = Some(k),
                        Some(j) if j == k => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        Some(found)
    }

    /// Divides through by the monomial `lc * t^lo`, where `lc` is the leading
    /// coefficient and `lo` the coordinatewise minimum exponent; returns that
    /// monomial. The result has leading coefficient 1 and no negative exponents.
    pub(crate) fn normalize_leading(&self) -> Option<(Self, MonomialScalar)> {
        let (lo, _) = self.bounds();
        let lc = self.terms.values().next_back()?.clone();
        let m = MonomialScalar::new(lc, lo)?;
        Some((self.mul_monomial(&m.inv()), m))
    }

    pub fn fmt_with(&self, names: &ParamNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let m = MonomialScalar::new(c.abs(), e.clone()).expect("nonzero term");
            let body = m.fmt_with(names);
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&ParamNames::default()))
    }
}

impl From<MonomialScalar> for LaurentPoly {
    fn from(m: MonomialScalar) -> Self {
        LaurentPoly::from_monomial(&m)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c.clone());
        }
        big
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        let (a, b) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (e, c) in &a.terms {
            out.add_scaled_shifted(b, c, e);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Greatest common divisor of two Laurent polynomials in a single parameter,
/// normalized to leading coefficient 1 and lowest exponent 0.
pub(crate) fn univariate_gcd(a: &LaurentPoly, b: &LaurentPoly, k: usize) -> LaurentPoly {
    fn to_dense(p: &LaurentPoly, k: usize) -> Vec<BigRational> {
        let lo = p.terms.keys().map(|e| e.get(k)).min().unwrap_or(0);
        let hi = p.terms.keys().map(|e| e.get(k)).max().unwrap_or(0);
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &p.terms {
            v[(e.get(k) - lo) as usize] = c.clone();
        }
        v
    }
    fn trim(v: &mut Vec<BigRational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }
    fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = b[db].recip();
        while r.len() > db {
            let top = r.len() - 1;
            let f = &r[top] * &lb;
            if !f.is_zero() {
                for (i, bc) in b.iter().enumerate() {
                    let idx = top - db + i;
                    r[idx] = &r[idx] - &f * bc;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }
    let mut x = to_dense(a, k);
    let mut y = to_dense(b, k);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return LaurentPoly::zero();
    }
    let lead = x.last().cloned().unwrap().recip();
    LaurentPoly::from_terms(x.into_iter().enumerate().map(|(i, c)| (Exponents::unit(k, i as i64), c * &lead)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> LaurentPoly {
        LaurentPoly::from_monomial(&MonomialScalar::param(0))
    }

    fn c(n: i64) -> LaurentPoly {
        LaurentPoly::from_integer(n)
    }

    #[test]
    fn display_ascending() {
        let p = &(&c(1) + &t()) + &t().pow(2);
        assert_eq!(p.to_string(), "1 + t1 + t1^2");
        let names = ParamNames::new(["q"]);
        assert_eq!((&c(1) - &t()).fmt_with(&names), "1 - q");
        assert_eq!((-&t()).to_string(), "-t1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let one_minus_t2 = &c(1) - &t().pow(2);
        let one_minus_t = &c(1) - &t();
        assert_eq!(one_minus_t2.div_exact(&one_minus_t), Some(&c(1) + &t()));
        assert_eq!(one_minus_t.div_exact(&one_minus_t2), None);
        let s = LaurentPoly::from_monomial(&MonomialScalar::param(1));
        assert_eq!((&t() + &s).div_exact(&(&t() - &s)), None);
        let prod = &(&t() + &s) * &(&t().pow(3) - &c(2));
        assert_eq!(prod.div_exact(&(&t() + &s)), Some(&t().pow(3) - &c(2)));
    }

    #[test]
    fn gcd_single_param() {
        let a = &(&c(1) - &t()) * &(&c(1) + &t());
        let b = &(&c(1) - &t()) * &(&c(2) + &t());
        let g = univariate_gcd(&a, &b, 0);
        assert_eq!(g, &t() - &c(1));
    }
}
