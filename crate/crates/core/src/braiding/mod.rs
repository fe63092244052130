//! Diagonal braidings: connected components, Cartan type, twisting and the
//! classification of generic braidings by Gelfand-Kirillov dimension.

mod cartan;
mod classify;

pub use cartan::{
    detect_cartan, CartanMatrix, CartanType, FiniteType, NotCartan, NotCartanReason, NotFinite,
    NotSymmetrizable,
};
pub use classify::{
    classify, dj_normal_form, twist_to_symmetric, Classification, ComponentVerdict, DJComponent,
    DJPresentation, InfiniteReason, NotDJ, Twist, Verdict,
};

use crate::error::{Error, Result};
use crate::scalars::{MonomialScalar, ParamNames};

/// The matrix `(q_ij)` of a diagonal braiding `c(x_i ⊗ x_j) = q_ij x_j ⊗ x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidingMatrix {
    q: Vec<Vec<MonomialScalar>>,
}

impl BraidingMatrix {
    pub fn new(q: Vec<Vec<MonomialScalar>>) -> Result<Self> {
        let n = q.len();
        if n == 0 {
            return Err(Error::invalid("braiding matrix is empty"));
        }
        if q.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("braiding matrix must be square"));
        }
        Ok(BraidingMatrix { q })
    }

    pub fn theta(&self) -> usize {
        self.q.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &MonomialScalar {
        &self.q[i][j]
    }

    pub fn rows(&self) -> &[Vec<MonomialScalar>] {
        &self.q
    }

    /// `q_ij q_ji`.
    pub fn product(&self, i: usize, j: usize) -> MonomialScalar {
        self.q[i][j].mul(&self.q[j][i])
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.theta();
        (0..n).all(|i| (0..i).all(|j| self.q[i][j] == self.q[j][i]))
    }

    /// No diagonal entry is a root of unity.
    pub fn is_generic(&self) -> bool {
        (0..self.theta()).all(|i| !self.q[i][i].is_root_of_unity())
    }

    /// Generic, and every diagonal entry is a positive real.
    pub fn is_positive(&self) -> bool {
        self.is_generic() && (0..self.theta()).all(|i| self.q[i][i].is_positive())
    }

    /// Relabels the basis: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.theta();
        check_permutation(perm, n)?;
        let mut q = vec![vec![MonomialScalar::one(); n]; n];
        for i in 0..n {
            for j in 0..n {
                q[perm[i]][perm[j]] = self.q[i][j].clone();
            }
        }
        Ok(BraidingMatrix { q })
    }

    pub fn components(&self) -> ComponentPartition {
        let n = self.theta();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.product(i, j).is_one() {
                    edges.push((i, j));
                }
            }
        }
        ComponentPartition::from_edges(n, edges)
    }

    pub fn fmt_rows(&self, names: &ParamNames) -> Vec<Vec<String>> {
        self.q
            .iter()
            .map(|r| r.iter().map(|m| m.fmt_with(names)).collect())
            .collect()
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::invalid("permutation has the wrong length"));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::invalid("not a permutation"));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Connected components of a graph on `{0, ..., n-1}`.
///
/// Blocks are sorted internally and ordered by their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentPartition {
    blocks: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    block_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; n];
        let mut root_block = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if root_block[r] == usize::MAX {
                root_block[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[root_block[r]].push(v);
            block_of[v] = root_block[r];
        }
        ComponentPartition {
            blocks,
            edges,
            block_of,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// `i ∼ j`: same connected component.
    pub fn connected(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> MonomialScalar {
        MonomialScalar::param(0)
    }

    fn one() -> MonomialScalar {
        MonomialScalar::one()
    }

    #[test]
    fn component_examples() {
        let b = BraidingMatrix::new(vec![vec![t(), t()], vec![t().inv(), t()]]).unwrap();
        assert_eq!(b.components().blocks(), &[vec![0], vec![1]]);

        let b = BraidingMatrix::new(vec![vec![t(), t().inv()], vec![one(), t()]]).unwrap();
        assert_eq!(b.components().blocks(), &[vec![0, 1]]);

        let b = BraidingMatrix::new(vec![
            vec![t(), t().inv(), one()],
            vec![one(), t(), t().inv()],
            vec![one(), one(), t()],
        ])
        .unwrap();
        assert_eq!(b.components().len(), 1);
    }

    #[test]
    fn block_order_follows_smallest_vertex() {
        let p = ComponentPartition::from_edges(4, vec![(1, 3), (0, 2)]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(p.block_of(3), 1);
        assert!(p.connected(0, 2) && !p.connected(0, 1));
    }

    #[test]
    fn rejects_malformed() {
        assert!(BraidingMatrix::new(vec![]).is_err());
        assert!(BraidingMatrix::new(vec![vec![t(), t()]]).is_err());
    }
}
