//! Exact linear algebra over the scalar field and the Laurent ring.

use crate::error::Result;
use crate::limits::Limits;
use crate::scalars::{LaurentPoly, ScalarFraction};

/// Reduced row echelon form computed in place; returns the pivot columns.
///
/// Pivots are chosen among the candidate rows of each column by fewest terms,
/// which keeps intermediate fractions small.
pub fn rref(m: &mut [Vec<ScalarFraction>], limits: &Limits) -> Result<Vec<usize>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].size());
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for j in c..cols {
            if !m[r][j].is_zero() {
                m[r][j] = &m[r][j] * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if pivot_row[j].is_zero() {
                    continue;
                }
                row[j] = &row[j] - &(&f * &pivot_row[j]);
                limits.check_terms(row[j].size(), "matrix entry")?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank(m: &[Vec<ScalarFraction>], limits: &Limits) -> Result<usize> {
    let mut a = m.to_vec();
    Ok(rref(&mut a, limits)?.len())
}

/// A basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<ScalarFraction>], ncols: usize, limits: &Limits) -> Result<Vec<Vec<ScalarFraction>>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, limits)?;
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![ScalarFraction::zero(); ncols];
        v[free] = ScalarFraction::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// One solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &[Vec<ScalarFraction>], b: &[ScalarFraction], ncols: usize, limits: &Limits) -> Result<Option<Vec<ScalarFraction>>> {
    let mut a: Vec<Vec<ScalarFraction>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a, limits)?;
    if pivots.last() == Some(&ncols) {
        return Ok(None);
    }
    let mut x = vec![ScalarFraction::zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = a[row][ncols].clone();
    }
    Ok(Some(x))
}

/// Rank of a matrix over the Laurent ring by fraction-free elimination.
///
/// Every intermediate entry is a minor of the input, so each division by
/// the previous pivot is exact.
pub fn bareiss_rank(m: &[Vec<LaurentPoly>], limits: &Limits) -> Result<usize> {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = LaurentPoly::one();
    let mut k = 0;
    let mut col_perm: Vec<usize> = (0..cols).collect();
    while k < rows.min(cols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..rows {
            for jj in k..cols {
                let e = &a[i][col_perm[jj]];
                if !e.is_zero() && best.is_none_or(|(_, _, s)| e.num_terms() < s) {
                    best = Some((i, jj, e.num_terms()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(k, pi);
        col_perm.swap(k, pj);
        let pc = col_perm[k];
        let pivot = a[k][pc].clone();
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            let f = row[pc].clone();
            for &c in &col_perm[k + 1..] {
                let v = &(&pivot * &row[c]) - &(&f * &pivot_row[c]);
                row[c] = v.div_exact(&prev).ok_or_else(|| crate::error::Error::internal("inexact Bareiss division"))?;
                limits.check_terms(row[c].num_terms(), "Gram entry")?;
            }
            row[pc] = LaurentPoly::zero();
        }
        prev = pivot;
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::MonomialScalar;
    use proptest::prelude::*;

    fn t() -> LaurentPoly {
        LaurentPoly::from_monomial(&MonomialScalar::param(0))
    }

    fn c(n: i64) -> LaurentPoly {
        LaurentPoly::from_integer(n)
    }

    fn f(p: LaurentPoly) -> ScalarFraction {
        ScalarFraction::from_poly(p)
    }

    #[test]
    fn rank_of_dependent_rows() {
        let lim = Limits::default();
        let m = vec![
            vec![c(1), t(), t().pow(2)],
            vec![t(), t().pow(2), t().pow(3)],
            vec![c(1), c(1), c(1)],
        ];
        assert_eq!(bareiss_rank(&m, &lim).unwrap(), 2);
        let mf: Vec<Vec<_>> = m.iter().map(|r| r.iter().cloned().map(f).collect()).collect();
        assert_eq!(rank(&mf, &lim).unwrap(), 2);
        let ns = nullspace(&mf, 3, &lim).unwrap();
        assert_eq!(ns.len(), 1);
        for row in &mf {
            let dot = row.iter().zip(&ns[0]).fold(ScalarFraction::zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let lim = Limits::default();
        let m = vec![vec![f(c(1)), f(t())], vec![f(c(1)), f(&c(0) - &t())]];
        let x = solve(&m, &[f(c(2)), f(c(0))], 2, &lim).unwrap().unwrap();
        assert_eq!(x[0], f(c(1)));
        assert_eq!(&x[1] * &f(t()), f(c(1)));
        let sing = vec![vec![f(c(1)), f(t())], vec![f(c(2)), f(&c(2) * &t())]];
        assert!(solve(&sing, &[f(c(1)), f(c(3))], 2, &lim).unwrap().is_none());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-2i64..3, -1i64..3), 0..3).prop_map(|ts| {
            ts.iter().fold(LaurentPoly::zero(), |acc, &(cf, e)| {
                &acc + &LaurentPoly::from_integer(cf).mul_monomial(&MonomialScalar::param(0).pow(e))
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_gauss_jordan(rows in prop::collection::vec(prop::collection::vec(small_poly(), 3), 1..4)) {
            let lim = Limits::default();
            let mf: Vec<Vec<_>> = rows.iter().map(|r| r.iter().cloned().map(f).collect()).collect();
            prop_assert_eq!(bareiss_rank(&rows, &lim).unwrap(), rank(&mf, &lim).unwrap());
        }
    }
}
