//! Root systems of finite Cartan matrices, longest words and the convex
//! numeration of positive roots used for PBW bases.

use std::collections::{BTreeSet, HashMap};

use crate::braiding::{CartanMatrix, FiniteType};
use crate::error::{Error, Result};

/// A root, as its coordinates in the basis of simple roots.
pub type Root = Vec<i64>;

/// `s_i(β) = β - (Σ_j a_ij β_j) α_i`.
pub fn reflect(a: &CartanMatrix, i: usize, beta: &[i64]) -> Root {
    let pairing: i64 = (0..a.rank()).map(|j| a.get(i, j) * beta[j]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

fn is_positive(beta: &[i64]) -> bool {
    beta.iter().all(|&c| c >= 0) && beta.iter().any(|&c| c > 0)
}

fn simple(n: usize, i: usize) -> Root {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

fn require_finite(a: &CartanMatrix) -> Result<FiniteType> {
    a.finite_type()
        .map_err(|e| Error::invalid(format!("Cartan matrix is not of finite type: {}", e)))
}

/// Positive roots, sorted by height and then lexicographically descending.
pub fn positive_roots(a: &CartanMatrix) -> Result<Vec<Root>> {
    require_finite(a)?;
    let n = a.rank();
    let mut seen: BTreeSet<Root> = (0..n).map(|i| simple(n, i)).collect();
    let mut frontier: Vec<Root> = seen.iter().cloned().collect();
    while let Some(beta) = frontier.pop() {
        for i in 0..n {
            let r = reflect(a, i, &beta);
            if is_positive(&r) && seen.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_iter().collect();
    roots.sort_by(|x, y| height(x).cmp(&height(y)).then_with(|| y.cmp(x)));
    Ok(roots)
}

/// Applies `s_{word[0]} ... s_{word[k-1]}` to `beta`.
fn apply_word(a: &CartanMatrix, word: &[usize], beta: &[i64]) -> Root {
    word.iter().rev().fold(beta.to_vec(), |v, &i| reflect(a, i, &v))
}

/// Reduced word for the longest element, one component after another.
///
/// Within a component the word grows by the smallest simple index `i` with
/// `w(α_i) > 0`, which is exactly the condition for `w s_i` to be longer.
pub fn longest_word(a: &CartanMatrix) -> Result<Vec<usize>> {
    require_finite(a)?;
    let n = a.rank();
    let mut word = Vec::new();
    for block in a.components().blocks() {
        let mut local: Vec<usize> = Vec::new();
        loop {
            let next = block
                .iter()
                .copied()
                .find(|&i| is_positive(&apply_word(a, &local, &simple(n, i))));
            match next {
                Some(i) => local.push(i),
                None => break,
            }
        }
        word.extend(local);
    }
    Ok(word)
}

/// `β_j = s_{i_1} ... s_{i_{j-1}}(α_{i_j})` with heights.
pub fn beta_sequence(a: &CartanMatrix, word: &[usize]) -> Result<(Vec<Root>, Vec<i64>)> {
    let n = a.rank();
    let mut beta = Vec::with_capacity(word.len());
    let mut seen = BTreeSet::new();
    for (j, &i) in word.iter().enumerate() {
        if i >= n {
            return Err(Error::invalid(format!("word letter {} out of range", i + 1)));
        }
        let b = apply_word(a, &word[..j], &simple(n, i));
        if !is_positive(&b) || !seen.insert(b.clone()) {
            return Err(Error::internal(format!(
                "word is not reduced: β_{} = {:?}",
                j + 1,
                b
            )));
        }
        beta.push(b);
    }
    let heights = beta.iter().map(|b| height(b)).collect();
    Ok((beta, heights))
}

/// Root data of a finite Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    cartan: CartanMatrix,
    d: Vec<i64>,
    finite_type: FiniteType,
    positive_roots: Vec<Root>,
    w0_word: Vec<usize>,
    beta: Vec<Root>,
    heights: Vec<i64>,
    index: HashMap<Root, usize>,
}

impl RootData {
    pub fn new(a: &CartanMatrix) -> Result<Self> {
        let finite_type = require_finite(a)?;
        let d = a
            .symmetrize()
            .map_err(|e| Error::invalid(e.to_string()))?;
        let positive_roots = positive_roots(a)?;
        let w0_word = longest_word(a)?;
        let (beta, heights) = beta_sequence(a, &w0_word)?;
        if beta.len() != positive_roots.len() {
            return Err(Error::internal("longest word has the wrong length"));
        }
        let index = beta.iter().enumerate().map(|(j, b)| (b.clone(), j)).collect();
        Ok(RootData {
            cartan: a.clone(),
            d,
            finite_type,
            positive_roots,
            w0_word,
            beta,
            heights,
            index,
        })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn finite_type(&self) -> &FiniteType {
        &self.finite_type
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Zero-based simple indices of the reduced word.
    pub fn w0_word(&self) -> &[usize] {
        &self.w0_word
    }

    pub fn beta(&self) -> &[Root] {
        &self.beta
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    /// Position of a positive root in the `β` numeration.
    pub fn beta_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    /// Position of the simple root `α_i` in the `β` numeration.
    pub fn simple_index(&self, i: usize) -> usize {
        self.beta_index(&simple(self.rank(), i)).expect("simple roots are positive")
    }

    /// The simple root index of `β_j`, if it is simple.
    pub fn simple_vertex(&self, j: usize) -> Option<usize> {
        let b = &self.beta[j];
        (height(b) == 1).then(|| b.iter().position(|&c| c == 1).expect("height one"))
    }

    /// For a non-simple `β_j`, the pair `(l, k)` with `l < j < k`,
    /// `β_l + β_k = β_j` and `l` as small as possible.
    ///
    /// Convexity of the numeration guarantees such a pair exists.
    pub fn convex_split(&self, j: usize) -> Option<(usize, usize)> {
        if self.heights[j] == 1 {
            return None;
        }
        (0..j).find_map(|l| {
            let rest: Root = self.beta[j].iter().zip(&self.beta[l]).map(|(a, b)| a - b).collect();
            self.beta_index(&rest).filter(|&k| k > j).map(|k| (l, k))
        })
    }
}
