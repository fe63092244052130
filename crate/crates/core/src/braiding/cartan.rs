use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use super::{BraidingMatrix, ComponentPartition};
use crate::error::{Error, Result};
use crate::scalars::solve_integer_exponent;

/// A generalized Cartan matrix in the convention `a_ij = <α_i^∨, α_j>`.
///
/// Simple reflections act by `s_i(β) = β - (Σ_j a_ij β_j) α_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Validates `a_ii = 2`, `a_ij <= 0` off the diagonal and
    /// `a_ij = 0 ⟺ a_ji = 0`.
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if n == 0 || a.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("Cartan matrix must be square and nonempty"));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::invalid(format!("a_{0}{0} must be 2", i + 1)));
            }
            for j in 0..n {
                if i != j && a[i][j] > 0 {
                    return Err(Error::invalid(format!("a_{}{} must be <= 0", i + 1, j + 1)));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(Error::invalid(format!(
                        "a_{}{} = 0 but a_{}{} != 0",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(CartanMatrix { a })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn components(&self) -> ComponentPartition {
        let n = self.rank();
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.a[i][j] != 0)
            .collect();
        ComponentPartition::from_edges(n, edges)
    }

    /// Principal submatrix on `vertices`, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> CartanMatrix {
        CartanMatrix {
            a: vertices
                .iter()
                .map(|&i| vertices.iter().map(|&j| self.a[i][j]).collect())
                .collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[CartanMatrix]) -> CartanMatrix {
        let n: usize = parts.iter().map(|p| p.rank()).sum();
        let mut a = vec![vec![0; n]; n];
        let mut off = 0;
        for p in parts {
            for i in 0..p.rank() {
                for j in 0..p.rank() {
                    a[off + i][off + j] = p.a[i][j];
                }
            }
            off += p.rank();
        }
        CartanMatrix { a }
    }

    /// Relabels: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<CartanMatrix> {
        let n = self.rank();
        super::check_permutation(perm, n)?;
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[perm[i]][perm[j]] = self.a[i][j];
            }
        }
        Ok(CartanMatrix { a })
    }

    /// Minimal positive symmetrizer `d` with `d_i a_ij = d_j a_ji`, normalized
    /// so that `gcd(d_i : i ∈ I) = 1` on every component `I`.
    pub fn symmetrize(&self) -> std::result::Result<Vec<i64>, NotSymmetrizable> {
        let n = self.rank();
        let comps = self.components();
        let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
        let mut parent: Vec<Option<usize>> = vec![None; n];
        for block in comps.blocks() {
            let root = block[0];
            d[root] = Some(Ratio::from_integer(1));
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if j != i && self.a[i][j] != 0 && d[j].is_none() {
                        let di = d[i].expect("visited");
                        d[j] = Some(di * Ratio::new(self.a[i][j], self.a[j][i]));
                        parent[j] = Some(i);
                        stack.push(j);
                    }
                }
            }
        }
        let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.expect("all vertices reached")).collect();
        for i in 0..n {
            for j in i + 1..n {
                if self.a[i][j] != 0 && d[i] * self.a[i][j] != d[j] * self.a[j][i] {
                    return Err(NotSymmetrizable {
                        cycle: witness_cycle(&parent, i, j),
                    });
                }
            }
        }
        let mut out = vec![0i64; n];
        for block in comps.blocks() {
            let l = block.iter().fold(1i64, |acc, &v| acc.lcm(d[v].denom()));
            let ints: Vec<i64> = block.iter().map(|&v| (d[v] * l).to_integer()).collect();
            let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            for (&v, x) in block.iter().zip(ints) {
                out[v] = x / g;
            }
        }
        Ok(out)
    }

    /// Finite-type test by leading principal minors of `(d_i a_ij)`, followed
    /// by Dynkin diagram identification of each component.
    pub fn finite_type(&self) -> std::result::Result<FiniteType, NotFinite> {
        let d = self.symmetrize().map_err(|e| NotFinite::NotSymmetrizable(e.cycle))?;
        let n = self.rank();
        let s: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| d[i] as i128 * self.a[i][j] as i128).collect())
            .collect();
        if let Some(k) = first_nonpositive_minor(&s) {
            return Err(NotFinite::Minor { index: k + 1 });
        }
        let comps = self.components();
        let mut parts = Vec::new();
        for block in comps.blocks() {
            let sub = self.restrict(block);
            let dsub: Vec<i64> = block.iter().map(|&v| d[v]).collect();
            let name = diagram_name(&sub, &dsub).ok_or_else(|| NotFinite::Unrecognized(block.iter().map(|v| v + 1).collect()))?;
            parts.push((name, block.clone()));
        }
        Ok(FiniteType { parts })
    }
}

fn witness_cycle(parent: &[Option<usize>], i: usize, j: usize) -> Vec<usize> {
    let path_to_root = |mut v: usize| {
        let mut p = vec![v];
        while let Some(u) = parent[v] {
            p.push(u);
            v = u;
        }
        p
    };
    let pi = path_to_root(i);
    let pj = path_to_root(j);
    let lca = *pi.iter().find(|v| pj.contains(v)).expect("same component");
    let mut cycle: Vec<usize> = pi.iter().take_while(|&&v| v != lca).copied().collect();
    cycle.push(lca);
    let tail: Vec<usize> = pj.iter().take_while(|&&v| v != lca).copied().collect();
    cycle.extend(tail.into_iter().rev());
    cycle.iter().map(|v| v + 1).collect()
}

/// Index of the first leading principal minor that is not positive.
fn first_nonpositive_minor(s: &[Vec<i128>]) -> Option<usize> {
    let n = s.len();
    let mut m: Vec<Vec<i128>> = s.to_vec();
    let mut prev: i128 = 1;
    for k in 0..n {
        // After k Bareiss steps without pivoting, m[k][k] is the (k+1)-th
        // leading principal minor.
        if m[k][k] <= 0 {
            return Some(k);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    None
}

fn diagram_name(a: &CartanMatrix, d: &[i64]) -> Option<String> {
    let n = a.rank();
    if n == 1 {
        return Some("A1".into());
    }
    let mut degree = vec![0usize; n];
    let mut max_mult = 1;
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            if a.get(i, j) != 0 {
                degree[i] += 1;
                degree[j] += 1;
                edges += 1;
                max_mult = max_mult.max(a.get(i, j) * a.get(j, i));
            }
        }
    }
    if edges != n - 1 {
        return None;
    }
    match max_mult {
        3 if n == 2 => return Some("G2".into()),
        3 => return None,
        2 => {
            if n == 2 {
                return Some("B2".into());
            }
            let dmin = *d.iter().min()?;
            let short = d.iter().filter(|&&x| x == dmin).count();
            let long = n - short;
            return match (short, long) {
                (2, 2) if n == 4 => Some("F4".into()),
                (1, _) => Some(format!("B{}", n)),
                (_, 1) => Some(format!("C{}", n)),
                _ => None,
            };
        }
        1 => {}
        _ => return None,
    }
    let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
    match branch.as_slice() {
        [] => Some(format!("A{}", n)),
        [c] if degree[*c] == 3 => {
            let mut arms: Vec<usize> = (0..n)
                .filter(|&v| v != *c && a.get(*c, v) != 0)
                .map(|start| arm_length(a, *c, start))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => Some(format!("D{}", k + 3)),
                [1, 2, 2] => Some("E6".into()),
                [1, 2, 3] => Some("E7".into()),
                [1, 2, 4] => Some("E8".into()),
                _ => None,
            }
        }
        _ => None,
    }
}

fn arm_length(a: &CartanMatrix, center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next = (0..a.rank()).find(|&v| v != prev && v != cur && a.get(cur, v) != 0);
        match next {
            Some(v) => {
                prev = cur;
                cur = v;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Finite type of a Cartan matrix: one named Dynkin diagram per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteType {
    parts: Vec<(String, Vec<usize>)>,
}

impl FiniteType {
    /// `(type name, vertices)` per component, in component order.
    pub fn parts(&self) -> &[(String, Vec<usize>)] {
        &self.parts
    }

    pub fn name(&self) -> String {
        self.parts.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join("x")
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("Cartan matrix is not symmetrizable; cycle {cycle:?} violates the cycle condition")]
pub struct NotSymmetrizable {
    /// Vertices (1-based) of a cycle along which the products of `a_ij`
    /// and `a_ji` disagree.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NotFinite {
    #[error("leading principal minor {index} of the symmetrized matrix is not positive")]
    Minor { index: usize },
    #[error("not symmetrizable (cycle {0:?})")]
    NotSymmetrizable(Vec<usize>),
    #[error("positive definite but diagram on vertices {0:?} was not recognized")]
    Unrecognized(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotCartanReason {
    /// `q_ii` is a root of unity (including `q_ii = 1`).
    DiagonalRootOfUnity,
    /// `q_ij q_ji` is not an integer power of `q_ii`.
    NoIntegerExponent,
    /// The exponent exists but is positive.
    PositiveExponent,
    /// `a_ij = 0` while `a_ji != 0`.
    AsymmetricZero,
}

impl NotCartanReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NotCartanReason::DiagonalRootOfUnity => "diagonal entry is a root of unity",
            NotCartanReason::NoIntegerExponent => "no integer exponent",
            NotCartanReason::PositiveExponent => "exponent is positive",
            NotCartanReason::AsymmetricZero => "a_ij = 0 but a_ji != 0",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("not of Cartan type at ({}, {}): {}", .i + 1, .j + 1, .reason.as_str())]
pub struct NotCartan {
    /// Zero-based row index of the offending pair.
    pub i: usize,
    /// Zero-based column index of the offending pair.
    pub j: usize,
    pub reason: NotCartanReason,
}

/// Solves `q_ij q_ji = q_ii^{a_ij}` for every ordered pair.
pub fn detect_cartan(q: &BraidingMatrix) -> std::result::Result<CartanMatrix, NotCartan> {
    let n = q.theta();
    for i in 0..n {
        if q.get(i, i).is_root_of_unity() {
            return Err(NotCartan {
                i,
                j: i,
                reason: NotCartanReason::DiagonalRootOfUnity,
            });
        }
    }
    let mut a = vec![vec![2i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let e = solve_integer_exponent(q.get(i, i), &q.product(i, j)).ok_or(NotCartan {
                i,
                j,
                reason: NotCartanReason::NoIntegerExponent,
            })?;
            if e > 0 {
                return Err(NotCartan {
                    i,
                    j,
                    reason: NotCartanReason::PositiveExponent,
                });
            }
            a[i][j] = e;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return Err(NotCartan {
                    i,
                    j,
                    reason: NotCartanReason::AsymmetricZero,
                });
            }
        }
    }
    Ok(CartanMatrix { a })
}

/// Standard finite Cartan types in Bourbaki numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Name as reported by [`CartanMatrix::finite_type`].
    pub fn name(&self) -> String {
        match *self {
            CartanType::A(n) => format!("A{}", n),
            CartanType::B(2) | CartanType::C(2) => "B2".into(),
            CartanType::B(n) => format!("B{}", n),
            CartanType::C(n) => format!("C{}", n),
            CartanType::D(n) => format!("D{}", n),
            CartanType::E(n) => format!("E{}", n),
            CartanType::F4 => "F4".into(),
            CartanType::G2 => "G2".into(),
        }
    }

    /// Number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        match *self {
            CartanType::A(n) => n * (n + 1) / 2,
            CartanType::B(n) | CartanType::C(n) => n * n,
            CartanType::D(n) => n * (n - 1),
            CartanType::E(6) => 36,
            CartanType::E(7) => 63,
            CartanType::E(_) => 120,
            CartanType::F4 => 24,
            CartanType::G2 => 6,
        }
    }

    pub fn cartan_matrix(&self) -> Result<CartanMatrix> {
        let n = self.rank();
        let valid = match *self {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) | CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 4,
            CartanType::E(n) => (6..=8).contains(&n),
            _ => true,
        };
        if !valid {
            return Err(Error::invalid(format!("no Cartan type {:?}", self)));
        }
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match *self {
            CartanType::A(n) => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            CartanType::B(n) => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            CartanType::C(n) => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            CartanType::D(n) => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            CartanType::E(n) => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            CartanType::F4 => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            CartanType::G2 => link(0, 1, -3, -1),
        }
        CartanMatrix::new(a)
    }

    /// All types of rank at most `max_rank` (up to the `B2 = C2` coincidence).
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for n in 1..=max_rank {
            out.push(CartanType::A(n));
            if n >= 2 {
                out.push(CartanType::B(n));
            }
            if n >= 3 {
                out.push(CartanType::C(n));
            }
            if n >= 4 {
                out.push(CartanType::D(n));
            }
            if (6..=8).contains(&n) {
                out.push(CartanType::E(n));
            }
            if n == 4 {
                out.push(CartanType::F4);
            }
            if n == 2 {
                out.push(CartanType::G2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::MonomialScalar;

    fn cm(a: Vec<Vec<i64>>) -> CartanMatrix {
        CartanMatrix::new(a).unwrap()
    }

    fn t(k: usize) -> MonomialScalar {
        MonomialScalar::param(k)
    }

    #[test]
    fn detect_examples() {
        let q = BraidingMatrix::new(vec![vec![t(0), t(0).inv()], vec![MonomialScalar::one(), t(0)]]).unwrap();
        assert_eq!(detect_cartan(&q).unwrap().rows(), &[vec![2, -1], vec![-1, 2]]);

        let q = BraidingMatrix::new(vec![vec![t(0), t(1)], vec![MonomialScalar::one(), t(0)]]).unwrap();
        let e = detect_cartan(&q).unwrap_err();
        assert_eq!((e.i, e.j, e.reason), (0, 1, NotCartanReason::NoIntegerExponent));

        // Each ordered pair is solved on its own: q_12 q_21 = t^-2 = (-t)^-2.
        let q = BraidingMatrix::new(vec![vec![t(0), t(0).inv()], vec![t(0).inv(), t(0).neg()]]).unwrap();
        assert_eq!(detect_cartan(&q).unwrap().rows(), &[vec![2, -2], vec![-2, 2]]);

        let q = BraidingMatrix::new(vec![vec![t(0), t(0)], vec![MonomialScalar::one(), t(0)]]).unwrap();
        assert_eq!(detect_cartan(&q).unwrap_err().reason, NotCartanReason::PositiveExponent);

        let q = BraidingMatrix::new(vec![vec![MonomialScalar::from_integer(-1).unwrap()]]).unwrap();
        assert_eq!(detect_cartan(&q).unwrap_err().reason, NotCartanReason::DiagonalRootOfUnity);

        // q_11 = t, q_22 = t^2, q_12 q_21 = t^-2: a_12 = -2 but a_21 = -1.
        let q = BraidingMatrix::new(vec![vec![t(0), t(0).pow(-2)], vec![MonomialScalar::one(), t(0).pow(2)]]).unwrap();
        assert_eq!(detect_cartan(&q).unwrap().rows(), &[vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(cm(vec![vec![2, -1], vec![-1, 2]]).symmetrize().unwrap(), vec![1, 1]);
        assert_eq!(cm(vec![vec![2, -2], vec![-1, 2]]).symmetrize().unwrap(), vec![1, 2]);
        assert_eq!(cm(vec![vec![2, -1], vec![-2, 2]]).symmetrize().unwrap(), vec![2, 1]);
        assert_eq!(cm(vec![vec![2, 0], vec![0, 2]]).symmetrize().unwrap(), vec![1, 1]);
        let bad = cm(vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]]);
        let err = bad.symmetrize().unwrap_err();
        assert_eq!(err.cycle.len(), 3);
    }

    #[test]
    fn finite_type_examples() {
        assert_eq!(cm(vec![vec![2, -1], vec![-1, 2]]).finite_type().unwrap().name(), "A2");
        assert_eq!(
            cm(vec![vec![2, -2], vec![-2, 2]]).finite_type().unwrap_err(),
            NotFinite::Minor { index: 2 }
        );
        assert_eq!(cm(vec![vec![2, -1], vec![-3, 2]]).finite_type().unwrap().name(), "G2");
        assert_eq!(cm(vec![vec![2, 0], vec![0, 2]]).finite_type().unwrap().name(), "A1xA1");
        let affine_a2 = cm(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert!(affine_a2.finite_type().is_err());
    }

    #[test]
    fn standard_types_are_recognized_under_relabeling() {
        for ty in CartanType::all_up_to_rank(8) {
            let a = ty.cartan_matrix().unwrap();
            assert_eq!(a.finite_type().unwrap().name(), ty.name(), "{:?}", ty);
            let n = a.rank();
            let perm: Vec<usize> = (0..n).rev().collect();
            assert_eq!(a.permuted(&perm).unwrap().finite_type().unwrap().name(), ty.name());
        }
    }
}
