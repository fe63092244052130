use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::names::ParamNames;

/// Exponent vector over the formal parameters `t1, t2, ...`.
///
/// Entries are stored in half-units (the stored value is twice the actual
/// exponent) so that square roots of parameters stay representable.
/// Trailing zeros are trimmed, which makes the representation canonical
/// regardless of how many parameters a caller has in mind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<i64>);

impl Exponents {
    pub fn zero() -> Self {
        Exponents(Vec::new())
    }

    /// Builds from values already expressed in half-units.
    pub fn from_halves(mut halves: Vec<i64>) -> Self {
        while halves.last() == Some(&0) {
            halves.pop();
        }
        Exponents(halves)
    }

    /// Builds from integer exponents.
    pub fn from_ints(ints: &[i64]) -> Self {
        Self::from_halves(ints.iter().map(|e| 2 * e).collect())
    }

    /// Single parameter `t_{index+1}` raised to `halves / 2`.
    pub fn unit(index: usize, halves: i64) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = halves;
        Self::from_halves(v)
    }

    pub fn halves(&self) -> &[i64] {
        &self.0
    }

    /// Half-unit exponent of parameter `k` (zero past the stored length).
    pub fn get(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Self::from_halves((0..n).map(|k| self.get(k) + other.get(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Self::from_halves((0..n).map(|k| self.get(k) - other.get(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Exponents(self.0.iter().map(|e| -e).collect())
    }

    pub fn scale(&self, n: i64) -> Self {
        Self::from_halves(self.0.iter().map(|e| e * n).collect())
    }

    /// Exact division of every entry by `d`; `None` when some entry is not divisible.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        if d == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(self.len());
        for &e in &self.0 {
            if e % d != 0 {
                return None;
            }
            out.push(e / d);
        }
        Some(Self::from_halves(out))
    }

    /// Whether every exponent is an integer (no half-units).
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|e| e % 2 == 0)
    }

    /// Coordinate-wise minimum, padded with zeros.
    pub fn min_with(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Self::from_halves((0..n).map(|k| self.get(k).min(other.get(k))).collect())
    }

    pub fn max_with(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Self::from_halves((0..n).map(|k| self.get(k).max(other.get(k))).collect())
    }
}

impl Ord for Exponents {
    /// Lexicographic order on the zero-padded vectors. This is a group order
    /// on the exponent lattice, compatible with addition.
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.len().max(other.len());
        for k in 0..n {
            match self.get(k).cmp(&other.get(k)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A nonzero rational multiple of a Laurent monomial in the formal parameters.
///
/// Braiding entries, character values and the per-component parameters all
/// live here. Each formal parameter stands for a positive real number that is
/// not 1, so a monomial has finite multiplicative order only when it is `±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialScalar {
    coeff: BigRational,
    exps: Exponents,
}

impl MonomialScalar {
    /// Returns `None` when `coeff` is zero.
    pub fn new(coeff: BigRational, exps: Exponents) -> Option<Self> {
        if coeff.is_zero() {
            None
        } else {
            Some(MonomialScalar { coeff, exps })
        }
    }

    pub fn one() -> Self {
        MonomialScalar {
            coeff: BigRational::one(),
            exps: Exponents::zero(),
        }
    }

    /// The formal parameter `t_{index+1}`.
    pub fn param(index: usize) -> Self {
        MonomialScalar {
            coeff: BigRational::one(),
            exps: Exponents::unit(index, 2),
        }
    }

    /// `t_{index+1}^{halves/2}`.
    pub fn param_pow_halves(index: usize, halves: i64) -> Self {
        MonomialScalar {
            coeff: BigRational::one(),
            exps: Exponents::unit(index, halves),
        }
    }

    /// Returns `None` for zero.
    pub fn from_integer(n: i64) -> Option<Self> {
        Self::new(BigRational::from_integer(BigInt::from(n)), Exponents::zero())
    }

    pub fn from_rational(r: BigRational) -> Option<Self> {
        Self::new(r, Exponents::zero())
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exps(&self) -> &Exponents {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exps.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        MonomialScalar {
            coeff: &self.coeff * &other.coeff,
            exps: self.exps.add(&other.exps),
        }
    }

    pub fn inv(&self) -> Self {
        MonomialScalar {
            coeff: self.coeff.recip(),
            exps: self.exps.neg(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn neg(&self) -> Self {
        MonomialScalar {
            coeff: -self.coeff.clone(),
            exps: self.exps.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let coeff = if n >= 0 {
            num_traits::pow(self.coeff.clone(), n as usize)
        } else {
            num_traits::pow(self.coeff.recip(), n.unsigned_abs() as usize)
        };
        MonomialScalar {
            coeff,
            exps: self.exps.scale(n),
        }
    }

    /// `true` iff some positive power equals 1; over the rationals with
    /// transcendental-like parameters this means the monomial is `±1`.
    pub fn is_root_of_unity(&self) -> bool {
        self.exps.is_zero() && (self.coeff.is_one() || (-self.coeff.clone()).is_one())
    }

    /// `true` iff the coefficient is positive (parameters are positive reals).
    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    /// Exact `d`-th root inside the representation, if it exists.
    pub fn root(&self, d: i64) -> Option<Self> {
        if d <= 0 {
            return None;
        }
        let exps = self.exps.div_exact(d)?;
        let coeff = rational_root(&self.coeff, d)?;
        Some(MonomialScalar { coeff, exps })
    }

    /// Square root, if it exists in the representation.
    pub fn sqrt(&self) -> Option<Self> {
        self.root(2)
    }

    /// Formats with custom parameter names.
    pub fn fmt_with(&self, names: &ParamNames) -> String {
        let mut factors: Vec<String> = Vec::new();
        for (k, &h) in self.exps.halves().iter().enumerate() {
            if h == 0 {
                continue;
            }
            let name = names.name(k);
            factors.push(if h == 2 {
                name
            } else if h % 2 == 0 {
                format!("{}^{}", name, h / 2)
            } else {
                format!("{}^{}/2", name, h)
            });
        }
        let c = &self.coeff;
        if factors.is_empty() {
            return format_rational(c);
        }
        let body = factors.join("*");
        if c.is_one() {
            body
        } else if (-c.clone()).is_one() {
            format!("-{}", body)
        } else {
            format!("{}*{}", format_rational(c), body)
        }
    }
}

impl fmt::Display for MonomialScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&ParamNames::default()))
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer `d`-th root of a rational, if exact.
pub(crate) fn rational_root(r: &BigRational, d: i64) -> Option<BigRational> {
    if d == 1 {
        return Some(r.clone());
    }
    let negative = r.is_negative();
    if negative && d % 2 == 0 {
        return None;
    }
    let n = int_root(&r.numer().abs(), d as u32)?;
    let m = int_root(&r.denom().abs(), d as u32)?;
    let root = BigRational::new(n, m);
    Some(if negative { -root } else { root })
}

fn int_root(n: &BigInt, d: u32) -> Option<BigInt> {
    let r = n.nth_root(d);
    if num_traits::pow(r.clone(), d as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Integer `a` with `base^a == target`, if one exists.
///
/// Requires `base` to have infinite order; returns `None` otherwise.
pub fn solve_integer_exponent(base: &MonomialScalar, target: &MonomialScalar) -> Option<i64> {
    if base.is_root_of_unity() {
        return None;
    }
    let a = if !base.exps.is_zero() {
        let k = base.exps.halves().iter().position(|&h| h != 0)?;
        let (num, den) = (target.exps.get(k), base.exps.get(k));
        if num % den != 0 {
            return None;
        }
        num / den
    } else {
        if !target.exps.is_zero() {
            return None;
        }
        // |base| != 1, so the height of base^a is at least 2^|a|.
        let bound = (target.coeff.numer().bits() + target.coeff.denom().bits() + 1) as i64;
        let mut found = None;
        for a in 0..=bound {
            if base.pow(a).coeff == target.coeff {
                found = Some(a);
                break;
            }
            if a > 0 && base.pow(-a).coeff == target.coeff {
                found = Some(-a);
                break;
            }
        }
        found?
    };
    if &base.pow(a) == target {
        Some(a)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: usize) -> MonomialScalar {
        MonomialScalar::param(k)
    }

    fn int(n: i64) -> MonomialScalar {
        MonomialScalar::from_integer(n).unwrap()
    }

    #[test]
    fn mono_mul_examples() {
        let a = int(2).mul(&t(0));
        let b = int(3).mul(&t(0).inv());
        assert_eq!(a.mul(&b), int(6));

        let c = t(0).pow(2).mul(&t(1));
        assert_eq!(c.to_string(), "t1^2*t2");

        let m = t(0).neg();
        assert_eq!(m.mul(&m), t(0).pow(2));
    }

    #[test]
    fn roots_of_unity() {
        assert!(!t(0).is_root_of_unity());
        assert!(int(-1).is_root_of_unity());
        assert!(!int(2).is_root_of_unity());
        assert!(MonomialScalar::one().is_root_of_unity());
    }

    #[test]
    fn positivity() {
        let m = int(3).mul(&t(0)).mul(&t(1).inv());
        assert!(m.is_positive());
        assert!(!t(0).neg().is_positive());
        assert!(MonomialScalar::one().is_positive());
    }

    #[test]
    fn half_exponents_print_and_root() {
        let s = t(0).inv().sqrt().unwrap();
        assert_eq!(s.to_string(), "t1^-1/2");
        assert_eq!(s.mul(&s), t(0).inv());
        assert!(t(0).neg().sqrt().is_none());
        assert_eq!(int(4).mul(&t(1).pow(2)).sqrt().unwrap().to_string(), "2*t2");
    }

    #[test]
    fn exponent_order_is_padded_lex() {
        let a = Exponents::from_ints(&[0, -1]);
        let b = Exponents::zero();
        assert!(a < b);
        assert!(Exponents::from_ints(&[1]) > Exponents::from_ints(&[0, 5]));
    }

    #[test]
    fn integer_exponent_solver() {
        assert_eq!(solve_integer_exponent(&t(0), &t(0).inv()), Some(-1));
        assert_eq!(solve_integer_exponent(&t(0).neg(), &t(0).pow(-2)), Some(-2));
        assert_eq!(solve_integer_exponent(&t(0).neg(), &t(0).pow(-1)), None);
        assert_eq!(solve_integer_exponent(&t(0), &t(1)), None);
        assert_eq!(solve_integer_exponent(&int(2), &MonomialScalar::from_rational(BigRational::new(1.into(), 8.into())).unwrap()), Some(-3));
        assert_eq!(solve_integer_exponent(&int(2), &int(6)), None);
        assert_eq!(solve_integer_exponent(&int(-1), &int(1)), None);
    }
}
