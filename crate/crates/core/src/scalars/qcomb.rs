use super::laurent::LaurentPoly;
use super::monomial::MonomialScalar;
use crate::error::{Error, Result};

/// The q-integer `(n)_q = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: u32, q: &MonomialScalar) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let mut p = MonomialScalar::one();
    for _ in 0..n {
        acc = &acc + &LaurentPoly::from_monomial(&p);
        p = p.mul(q);
    }
    acc
}

/// The q-factorial `(n)!_q = (1)_q (2)_q ... (n)_q`.
pub fn q_factorial(n: u32, q: &MonomialScalar) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &q_integer(k, q))
}

/// Gaussian binomial coefficient, built with the recursion
/// `[n, l] = [n-1, l-1] + q^l [n-1, l]`.
pub fn q_binomial(n: u32, l: u32, q: &MonomialScalar) -> Result<LaurentPoly> {
    if l > n {
        return Err(Error::invalid(format!("q_binomial: l = {} exceeds n = {}", l, n)));
    }
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m as usize + 1);
        for k in 0..=m {
            let left = if k >= 1 { row[(k - 1) as usize].clone() } else { LaurentPoly::zero() };
            let right = if k < m {
                row[k as usize].mul_monomial(&q.pow(k as i64))
            } else {
                LaurentPoly::zero()
            };
            next.push(&left + &right);
        }
        row = next;
    }
    Ok(row.swap_remove(l as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ParamNames, ScalarFraction};
    use proptest::prelude::*;

    fn q() -> MonomialScalar {
        MonomialScalar::param(0)
    }

    #[test]
    fn small_binomials() {
        let names = ParamNames::new(["q"]);
        assert_eq!(q_binomial(2, 1, &q()).unwrap().fmt_with(&names), "1 + q");
        assert_eq!(q_binomial(3, 1, &q()).unwrap().fmt_with(&names), "1 + q + q^2");
        assert_eq!(q_binomial(4, 2, &q()).unwrap().fmt_with(&names), "1 + q + 2*q^2 + q^3 + q^4");
        assert!(q_binomial(5, 0, &q()).unwrap().is_one());
        assert!(q_binomial(2, 3, &q()).is_err());
    }

    // Independent oracle: [n, l] = (n)!_q / ((l)!_q (n-l)!_q) as fractions.
    fn product_formula(n: u32, l: u32, q: &MonomialScalar) -> ScalarFraction {
        let num = ScalarFraction::from_poly(q_factorial(n, q));
        let den = ScalarFraction::from_poly(&q_factorial(l, q) * &q_factorial(n - l, q));
        num.checked_div(&den).unwrap()
    }

    proptest! {
        #[test]
        fn binomial_matches_product_formula(n in 0u32..9, l in 0u32..9, e in -3i64..4) {
            prop_assume!(l <= n && e != 0);
            let qq = q().pow(e);
            let rec = ScalarFraction::from_poly(q_binomial(n, l, &qq).unwrap());
            prop_assert_eq!(rec, product_formula(n, l, &qq));
        }

        #[test]
        fn binomial_at_one_is_ordinary(n in 0u32..12, l in 0u32..12) {
            prop_assume!(l <= n);
            let v = q_binomial(n, l, &q()).unwrap().eval_at_one();
            let mut ord: u64 = 1;
            for k in 0..l as u64 {
                ord = ord * (n as u64 - k) / (k + 1);
            }
            prop_assert_eq!(v, num_rational::BigRational::from_integer(ord.into()));
        }

        #[test]
        fn factorial_product_identity(n in 0u32..9) {
            let one = LaurentPoly::one();
            let mut num = ScalarFraction::one();
            for k in 0..n {
                let f = &one - &LaurentPoly::from_monomial(&q().pow(k as i64 + 1));
                num = &num * &ScalarFraction::from_poly(f);
            }
            let den = ScalarFraction::from_poly((&one - &LaurentPoly::from_monomial(&q())).pow(n));
            prop_assert_eq!(ScalarFraction::from_poly(q_factorial(n, &q())), num.checked_div(&den).unwrap());
        }
    }
}
