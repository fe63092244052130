//! Exact scalars: monomials, Laurent polynomials, their fraction field and
//! q-combinatorics.

mod fraction;
mod laurent;
mod monomial;
mod names;
pub(crate) mod parse;
mod qcomb;

pub use fraction::ScalarFraction;
pub use laurent::LaurentPoly;
pub use monomial::{solve_integer_exponent, Exponents, MonomialScalar};
pub use names::ParamNames;
pub use parse::{parse_monomial, parse_scalar};
pub use qcomb::{q_binomial, q_factorial, q_integer};

/// Renders `Σ c_k · body_k` in the literal grammar: terms joined by ` + ` and
/// ` - `, unit coefficients omitted, compound coefficients parenthesized.
/// An empty body stands for the unit.
pub fn fmt_linear_combination<'a>(
    terms: impl IntoIterator<Item = (&'a ScalarFraction, String)>,
    names: &ParamNames,
) -> String {
    let mut out = String::new();
    for (idx, (c, body)) in terms.into_iter().enumerate() {
        let all_negative = c.den().is_one() && c.num().terms().all(|(_, x)| num_traits::Signed::is_negative(x));
        let (neg, mag) = if all_negative { (true, -c) } else { (false, c.clone()) };
        let coeff = mag.fmt_with(names);
        let piece = if body.is_empty() {
            if mag.needs_parens() && neg {
                format!("({})", coeff)
            } else {
                coeff
            }
        } else if mag.is_one() {
            body
        } else if mag.den().is_one() && mag.num().num_terms() == 1 {
            format!("{}*{}", coeff, body)
        } else {
            format!("({})*{}", coeff, body)
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&piece);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod props {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = MonomialScalar> {
        (
            prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3), Just(5)],
            1i64..3,
            prop::collection::vec(-3i64..4, 0..3),
        )
            .prop_map(|(n, d, e)| {
                MonomialScalar::new(
                    BigRational::new(n.into(), d.into()),
                    Exponents::from_ints(&e),
                )
                .unwrap()
            })
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(mono(), 0..4)
            .prop_map(|ms| ms.iter().fold(LaurentPoly::zero(), |acc, m| &acc + &LaurentPoly::from_monomial(m)))
    }

    fn nonzero_frac() -> impl Strategy<Value = ScalarFraction> {
        (poly(), poly())
            .prop_filter("nonzero", |(n, d)| !n.is_zero() && !d.is_zero())
            .prop_map(|(n, d)| ScalarFraction::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn root_of_unity_iff_powers_meet(a in mono(), b in mono()) {
            let r = a.mul(&b.inv()).is_root_of_unity();
            let meet = (1..=4).any(|n| a.pow(n) == b.pow(n));
            prop_assert_eq!(r, meet);
        }

        #[test]
        fn self_division_is_one(x in nonzero_frac()) {
            prop_assert!(x.checked_div(&x).unwrap().is_one());
        }

        #[test]
        fn field_axioms(x in nonzero_frac(), y in nonzero_frac(), z in nonzero_frac()) {
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x.clone());
        }

        #[test]
        fn equality_is_an_equivalence(x in nonzero_frac(), f in nonzero_frac(), g in nonzero_frac()) {
            // Three representations of the same value built from shared factors.
            let a = x.clone();
            let b = (&x * &f).checked_div(&f).unwrap();
            let c = (&(&x * &f) * &g).checked_div(&(&f * &g)).unwrap();
            prop_assert_eq!(&a, &a);
            prop_assert_eq!(a == b, b == a);
            prop_assert!(a == b && b == c && a == c);
        }

        #[test]
        fn display_parse_round_trip(x in nonzero_frac()) {
            let names = ParamNames::default();
            let back = parse_scalar(&x.fmt_with(&names), &names).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn exact_division_recovers_factor(a in poly(), b in poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }
    }
}
