//! Fixtures shared by the benchmarks.

use pointedq::scalars::parse_monomial;
use pointedq::uqd::DatumComponent;
use pointedq::{BraidingMatrix, CartanMatrix, GenericDatum, ParamNames, ScalarFraction};

fn braiding(rows: &[&[&str]]) -> BraidingMatrix {
    let names = ParamNames::new(["q"]);
    let q = rows
        .iter()
        .map(|r| r.iter().map(|x| parse_monomial(x, &names).unwrap()).collect())
        .collect();
    BraidingMatrix::new(q).unwrap()
}

/// Symmetric braiding of type `A2`.
pub fn a2_symmetric() -> BraidingMatrix {
    braiding(&[&["q^2", "q^-1"], &["q^-1", "q^2"]])
}

/// Symmetric braiding of type `B2`.
pub fn b2_symmetric() -> BraidingMatrix {
    braiding(&[&["q^2", "q^-2"], &["q^-2", "q^4"]])
}

/// Braiding of type `A3` with an asymmetric off-diagonal part.
pub fn a3() -> BraidingMatrix {
    braiding(&[&["q", "q^-1", "1"], &["1", "q", "q^-1"], &["1", "1", "q"]])
}

fn datum(cartan: Vec<Vec<i64>>, comps: &[(&[usize], &str)], g: Vec<Vec<i64>>, chi: &[&[&str]], lambda: &[((usize, usize), i64)]) -> GenericDatum {
    let names = ParamNames::new(["q"]);
    let m = |x: &str| parse_monomial(x, &names).unwrap();
    let components = comps.iter().map(|(vs, q)| DatumComponent { vertices: vs.to_vec(), q: m(q) }).collect();
    let chi = chi.iter().map(|r| r.iter().map(|x| m(x)).collect()).collect();
    let lambda: Vec<_> = lambda.iter().map(|&(p, v)| (p, ScalarFraction::from_integer(v))).collect();
    GenericDatum::new(g[0].len(), CartanMatrix::new(cartan).unwrap(), components, g, chi, lambda)
        .unwrap()
        .with_names(names)
}

/// The datum whose `U(D)` is `U_q(sl_2)`.
pub fn uqsl2() -> GenericDatum {
    datum(vec![vec![2, 0], vec![0, 2]], &[(&[0], "q"), (&[1], "q^-1")], vec![vec![1], vec![1]], &[&["q"], &["q^-1"]], &[((0, 1), 1)])
}

/// A single component of type `A2` over a rank two lattice.
pub fn a2_datum() -> GenericDatum {
    datum(vec![vec![2, -1], vec![-1, 2]], &[(&[0, 1], "q")], vec![vec![1, 0], vec![0, 1]], &[&["q", "1"], &["q^-1", "q"]], &[])
}
