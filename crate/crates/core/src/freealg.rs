//! The tensor algebra `T(V)` of a diagonally braided vector space: braided
//! commutators, quantum Serre elements, the shuffle coproduct, the canonical
//! bilinear form and graded dimensions of the Nichols algebra.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::braiding::{BraidingMatrix, CartanMatrix};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg;
use crate::scalars::{
    fmt_linear_combination, q_factorial, LaurentPoly, MonomialScalar, ParamNames, ScalarFraction,
};
use crate::scalars::q_binomial;

/// A word in the generators, as zero-based indices.
pub type Word = Vec<u8>;

/// Multidegree in `ℕ^θ`.
pub type Multidegree = Vec<usize>;

/// A generator `x_i ∈ V^{χ_i}_{g_i}`: `g_i` as an exponent vector in the
/// basis `Y_1, ..., Y_s` of `Γ` and `χ_i` by its values `χ_i(Y_h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTag {
    pub index: usize,
    pub group_exponents: Vec<i64>,
    pub character_row: Vec<MonomialScalar>,
}

impl GeneratorTag {
    /// `χ_i(g)` for `g = Π Y_h^{g_h}`.
    pub fn character_at(&self, g: &[i64]) -> MonomialScalar {
        self.character_row
            .iter()
            .zip(g)
            .fold(MonomialScalar::one(), |acc, (c, &e)| acc.mul(&c.pow(e)))
    }
}

/// The braiding `q_ij = χ_j(g_i)` of a family of generators.
pub fn braiding_from_tags(tags: &[GeneratorTag]) -> Result<BraidingMatrix> {
    let s = tags.first().map_or(0, |t| t.group_exponents.len());
    if tags.iter().any(|t| t.group_exponents.len() != s || t.character_row.len() != s) {
        return Err(Error::invalid("generator tags disagree on the rank of the group"));
    }
    BraidingMatrix::new(
        tags.iter()
            .map(|ti| tags.iter().map(|tj| tj.character_at(&ti.group_exponents)).collect())
            .collect(),
    )
}

/// Linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeElement {
    terms: BTreeMap<Word, ScalarFraction>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Self::word(vec![i as u8])
    }

    pub fn word(w: Word) -> Self {
        let mut e = Self::zero();
        e.terms.insert(w, ScalarFraction::one());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, ScalarFraction)>) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ScalarFraction)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> ScalarFraction {
        self.terms.get(w).cloned().unwrap_or_else(ScalarFraction::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: ScalarFraction) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&ScalarFraction::from_integer(-1)))
    }

    pub fn scale(&self, c: &ScalarFraction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Splits into multidegree-homogeneous parts.
    pub fn homogeneous_parts(&self, theta: usize) -> BTreeMap<Multidegree, FreeElement> {
        let mut out: BTreeMap<Multidegree, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(multidegree(w, theta)).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    /// Splits into parts of fixed total degree.
    pub fn graded_parts(&self) -> BTreeMap<usize, FreeElement> {
        let mut out: BTreeMap<usize, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.len()).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn fmt_with(&self, names: &ParamNames) -> String {
        fmt_linear_combination(self.terms.iter().map(|(w, c)| (c, fmt_word(w))), names)
    }
}

impl std::fmt::Display for FreeElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.fmt_with(&ParamNames::default()))
    }
}

/// `x1*x2^2*x1`; the empty word prints as the empty string.
pub fn fmt_word(w: &[u8]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < w.len() {
        let mut e = 1;
        while k + e < w.len() && w[k + e] == w[k] {
            e += 1;
        }
        parts.push(if e == 1 {
            format!("x{}", w[k] + 1)
        } else {
            format!("x{}^{}", w[k] + 1, e)
        });
        k += e;
    }
    parts.join("*")
}

pub fn multidegree(w: &[u8], theta: usize) -> Multidegree {
    let mut d = vec![0; theta];
    for &x in w {
        d[x as usize] += 1;
    }
    d
}

/// Linear combination of `u ⊗ v` with `u`, `v` words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeTensor {
    terms: BTreeMap<(Word, Word), ScalarFraction>,
}

impl FreeTensor {
    pub fn zero() -> Self {
        FreeTensor::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &ScalarFraction)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: (Word, Word), c: ScalarFraction) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(ScalarFraction::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, u: &[u8], v: &[u8]) -> ScalarFraction {
        self.terms
            .get(&(u.to_vec(), v.to_vec()))
            .cloned()
            .unwrap_or_else(ScalarFraction::zero)
    }

    pub fn fmt_with(&self, names: &ParamNames) -> String {
        let leg = |w: &Word| if w.is_empty() { "1".to_string() } else { fmt_word(w) };
        fmt_linear_combination(
            self.terms.iter().map(|((u, v), c)| (c, format!("{} ⊗ {}", leg(u), leg(v)))),
            names,
        )
    }
}

/// `χ_v(g_u) = Π q_{ab}` over letters `a` of `u` and `b` of `v`.
pub fn chi_words(q: &BraidingMatrix, u: &[u8], v: &[u8]) -> MonomialScalar {
    let mut acc = MonomialScalar::one();
    for &a in u {
        for &b in v {
            acc = acc.mul(q.get(a as usize, b as usize));
        }
    }
    acc
}

/// `[u, v]_c = u v - χ_v(g_u) v u`, computed on homogeneous parts.
pub fn braided_commutator(q: &BraidingMatrix, u: &FreeElement, v: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    for (wu, a) in &u.terms {
        for (wv, b) in &v.terms {
            let ab = a * b;
            let mut uv = wu.clone();
            uv.extend_from_slice(wv);
            let mut vu = wv.clone();
            vu.extend_from_slice(wu);
            out.add_term(uv, ab.clone());
            out.add_term(vu, -(&ab.scale_monomial(&chi_words(q, wu, wv))));
        }
    }
    out
}

/// `ad_c(x_i)^r (x_j)` by iterated braided commutators.
pub fn ad_power(q: &BraidingMatrix, i: usize, j: usize, r: usize) -> FreeElement {
    let xi = FreeElement::generator(i);
    (0..r).fold(FreeElement::generator(j), |acc, _| braided_commutator(q, &xi, &acc))
}

/// The explicit expansion
/// `Σ_l (-1)^l [r, l]_{q_ii} q_ii^{l(l-1)/2} q_ij^l x_i^{r-l} x_j x_i^l`.
pub fn serre_formula(q: &BraidingMatrix, i: usize, j: usize, r: usize) -> Result<FreeElement> {
    if i == j {
        return Err(Error::invalid("Serre elements need i != j"));
    }
    let (qii, qij) = (q.get(i, i), q.get(i, j));
    let mut out = FreeElement::zero();
    for l in 0..=r {
        let binom = q_binomial(r as u32, l as u32, qii)?;
        let m = qii
            .pow((l * l.saturating_sub(1) / 2) as i64)
            .mul(&qij.pow(l as i64));
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let c = ScalarFraction::from_poly(binom.mul_monomial(&m).scale(&num_rational::BigRational::from_integer(sign.into())));
        let mut w = vec![i as u8; r - l];
        w.push(j as u8);
        w.extend(std::iter::repeat_n(i as u8, l));
        out.add_term(w, c);
    }
    Ok(out)
}

/// The quantum Serre element `ad_c(x_i)^{1 - a_ij}(x_j)`.
pub fn serre_element(q: &BraidingMatrix, a: &CartanMatrix, i: usize, j: usize) -> Result<FreeElement> {
    if i == j {
        return Err(Error::invalid("Serre elements need i != j"));
    }
    serre_formula(q, i, j, (1 - a.get(i, j)) as usize)
}

/// Whether `(r)!_{q_ii} Π_{0 <= k < r} (1 - q_ii^k q_ij q_ji)` vanishes, that
/// is, whether `ad_c(x_i)^r(x_j) = 0` in the Nichols algebra.
pub fn serre_vanishing(q: &BraidingMatrix, i: usize, j: usize, r: usize) -> Result<bool> {
    if i == j || r == 0 {
        return Err(Error::invalid("serre_vanishing needs i != j and r >= 1"));
    }
    let qii = q.get(i, i);
    let p = q.product(i, j);
    let mut acc = q_factorial(r as u32, qii);
    for k in 0..r {
        let f = &LaurentPoly::one() - &LaurentPoly::from_monomial(&qii.pow(k as i64).mul(&p));
        acc = &acc * &f;
    }
    Ok(acc.is_zero())
}

/// The `(m, n)` component of the braided coproduct of `T(V)`, by quantum
/// shuffles: a right subword on positions `S` gets the coefficient
/// `Π q_{w_r w_s}` over `r ∈ S`, `s ∉ S`, `r < s`.
pub fn shuffle_coproduct(q: &BraidingMatrix, u: &FreeElement, m: usize, n: usize) -> Result<FreeTensor> {
    let mut out = FreeTensor::zero();
    for (w, c) in &u.terms {
        if w.len() != m + n {
            return Err(Error::invalid(format!(
                "shuffle_coproduct: word of degree {} does not split as ({}, {})",
                w.len(),
                m,
                n
            )));
        }
        for_each_subset(w.len(), n, &mut |right: &[bool]| {
            let mut coeff = MonomialScalar::one();
            for r in 0..w.len() {
                if right[r] {
                    for s in r + 1..w.len() {
                        if !right[s] {
                            coeff = coeff.mul(q.get(w[r] as usize, w[s] as usize));
                        }
                    }
                }
            }
            let lw: Word = (0..w.len()).filter(|&k| !right[k]).map(|k| w[k]).collect();
            let rw: Word = (0..w.len()).filter(|&k| right[k]).map(|k| w[k]).collect();
            out.add_term((lw, rw), c.scale_monomial(&coeff));
        });
    }
    Ok(out)
}

fn for_each_subset(len: usize, size: usize, f: &mut dyn FnMut(&[bool])) {
    fn rec(pos: usize, left: usize, mask: &mut Vec<bool>, f: &mut dyn FnMut(&[bool])) {
        let len = mask.len();
        if left == 0 {
            f(mask);
            return;
        }
        if len - pos < left {
            return;
        }
        mask[pos] = true;
        rec(pos + 1, left - 1, mask, f);
        mask[pos] = false;
        rec(pos + 1, left, mask, f);
    }
    let mut mask = vec![false; len];
    rec(0, size, &mut mask, f);
}

/// Whether every `Δ_{m,n}(u)` with `m, n >= 1` vanishes.
pub fn skew_primitivity_check(q: &BraidingMatrix, u: &FreeElement) -> bool {
    u.graded_parts().iter().all(|(&deg, part)| {
        (1..deg).all(|m| shuffle_coproduct(q, part, m, deg - m).is_ok_and(|t| t.is_zero()))
    })
}

/// The map `Δ_{1,...,1}: T(V)_n → V^{⊗n}` written in the word basis. Its
/// kernel is the defining ideal of the Nichols algebra, for any diagonal
/// braiding. Images are memoized per word.
pub struct Splitter<'a> {
    q: &'a BraidingMatrix,
    cache: HashMap<Word, FreeElement>,
}

impl<'a> Splitter<'a> {
    pub fn new(q: &'a BraidingMatrix) -> Self {
        Splitter {
            q,
            cache: HashMap::new(),
        }
    }

    /// Image of a word: peel off each letter to the right end, paying
    /// `q_{w_p w_r}` for every later letter it passes.
    pub fn image_word(&mut self, w: &[u8]) -> FreeElement {
        if w.len() <= 1 {
            return FreeElement::word(w.to_vec());
        }
        if let Some(e) = self.cache.get(w) {
            return e.clone();
        }
        let mut out = FreeElement::zero();
        for p in 0..w.len() {
            let mut coeff = MonomialScalar::one();
            for &x in &w[p + 1..] {
                coeff = coeff.mul(self.q.get(w[p] as usize, x as usize));
            }
            let mut rest = w.to_vec();
            let letter = rest.remove(p);
            let sub = self.image_word(&rest);
            let c = ScalarFraction::from_monomial(&coeff);
            for (v, d) in sub.terms() {
                let mut v2 = v.clone();
                v2.push(letter);
                out.add_term(v2, d * &c);
            }
        }
        self.cache.insert(w.to_vec(), out.clone());
        out
    }

    pub fn image(&mut self, u: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in u.terms() {
            out = out.add(&self.image_word(w).scale(c));
        }
        out
    }
}

/// All words of a multidegree, in lexicographic order.
pub fn words_of_multidegree(deg: &[usize]) -> Vec<Word> {
    fn rec(left: &mut Vec<usize>, cur: &mut Word, total: usize, out: &mut Vec<Word>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i as u8);
                rec(left, cur, total, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let total = deg.iter().sum();
    let mut out = Vec::new();
    rec(&mut deg.to_vec(), &mut Vec::new(), total, &mut out);
    out
}

/// Multidegrees in `ℕ^theta` of total degree `n`.
pub fn multidegrees(theta: usize, n: usize) -> Vec<Multidegree> {
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Multidegree>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    if theta == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, n, &mut vec![0; theta], &mut out);
    out
}

fn default_b(q: &BraidingMatrix, b: Option<&[MonomialScalar]>) -> Result<Vec<MonomialScalar>> {
    match b {
        Some(b) if b.len() == q.theta() => Ok(b.to_vec()),
        Some(_) => Err(Error::invalid("need one B_i per generator")),
        None => Ok(vec![MonomialScalar::one(); q.theta()]),
    }
}

fn b_weight(b: &[MonomialScalar], w: &[u8]) -> MonomialScalar {
    w.iter().fold(MonomialScalar::one(), |acc, &x| acc.mul(&b[x as usize]))
}

/// The canonical symmetric bilinear form with `(x_i | x_j) = δ_ij B_i`.
///
/// `B` defaults to all ones.
pub fn canonical_form(
    q: &BraidingMatrix,
    u: &FreeElement,
    v: &FreeElement,
    b: Option<&[MonomialScalar]>,
) -> Result<ScalarFraction> {
    if !q.is_symmetric() {
        return Err(Error::RequiresSymmetric);
    }
    let b = default_b(q, b)?;
    let mut sp = Splitter::new(q);
    let mut acc = ScalarFraction::zero();
    for (wu, cu) in u.terms() {
        let img = sp.image_word(wu);
        for (wv, cv) in v.terms() {
            let k = img.coeff(wv);
            if !k.is_zero() {
                acc = &acc + &(&(cu * cv) * &k.scale_monomial(&b_weight(&b, wv)));
            }
        }
    }
    Ok(acc)
}

/// A multidegree component of `T(V)` with the Gram matrix of the canonical form.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub degree: Multidegree,
    pub basis: Vec<Word>,
    pub gram: Vec<Vec<ScalarFraction>>,
}

impl GradedComponent {
    pub fn build(q: &BraidingMatrix, degree: &[usize], b: Option<&[MonomialScalar]>) -> Result<Self> {
        if !q.is_symmetric() {
            return Err(Error::RequiresSymmetric);
        }
        let b = default_b(q, b)?;
        let basis = words_of_multidegree(degree);
        let weight = ScalarFraction::from_monomial(&b_weight(&b, basis.first().map_or(&[][..], |w| w)));
        let mut sp = Splitter::new(q);
        let gram = basis
            .iter()
            .map(|u| {
                let img = sp.image_word(u);
                basis.iter().map(|v| &img.coeff(v) * &weight).collect()
            })
            .collect();
        Ok(GradedComponent {
            degree: degree.to_vec(),
            basis,
            gram,
        })
    }

    pub fn rank(&self, limits: &Limits) -> Result<usize> {
        poly_or_fraction_rank(&self.gram, limits)
    }
}

fn poly_or_fraction_rank(m: &[Vec<ScalarFraction>], limits: &Limits) -> Result<usize> {
    let polys: Option<Vec<Vec<LaurentPoly>>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.as_poly()).collect())
        .collect();
    match polys {
        Some(p) => linalg::bareiss_rank(&p, limits),
        None => linalg::rank(m, limits),
    }
}

/// Rank of the `Δ_{1,...,1}` images of `elements`, i.e. the dimension of their
/// span in the Nichols algebra. Works for any diagonal braiding.
pub fn nichols_rank(q: &BraidingMatrix, elements: &[FreeElement], limits: &Limits) -> Result<usize> {
    let mut sp = Splitter::new(q);
    let images: Vec<FreeElement> = elements.iter().map(|e| sp.image(e)).collect();
    let mut cols: BTreeMap<Word, usize> = BTreeMap::new();
    for img in &images {
        for (w, _) in img.terms() {
            let n = cols.len();
            cols.entry(w.clone()).or_insert(n);
        }
    }
    let m: Vec<Vec<ScalarFraction>> = images
        .iter()
        .map(|img| {
            let mut row = vec![ScalarFraction::zero(); cols.len()];
            for (w, c) in img.terms() {
                row[cols[w]] = c.clone();
            }
            row
        })
        .collect();
    poly_or_fraction_rank(&m, limits)
}

/// Whether `u` lies in the defining ideal of the Nichols algebra, i.e. pairs
/// to zero with every word. Works for any diagonal braiding.
pub fn in_radical(q: &BraidingMatrix, u: &FreeElement) -> bool {
    Splitter::new(q).image(u).is_zero()
}

/// Whether the quantum Serre element for `(i, j)` lies in the radical.
pub fn serre_in_radical(q: &BraidingMatrix, a: &CartanMatrix, i: usize, j: usize) -> Result<bool> {
    Ok(in_radical(q, &serre_element(q, a, i, j)?))
}

/// Settings for [`nichols_dims`].
#[derive(Clone, Debug)]
pub struct NicholsConfig {
    pub max_degree: usize,
    /// The scalars `B_i`; all ones when `None`.
    pub b: Option<Vec<MonomialScalar>>,
    pub limits: Limits,
    /// Compute multidegree components in parallel.
    pub parallel: bool,
}

impl Default for NicholsConfig {
    fn default() -> Self {
        NicholsConfig {
            max_degree: 5,
            b: None,
            limits: Limits::default(),
            parallel: false,
        }
    }
}

/// Graded dimensions of the Nichols algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NicholsDims {
    /// Dimension per total degree `0..=max_degree`.
    pub dims: Vec<usize>,
    /// Dimension per nonzero multidegree.
    pub by_multidegree: BTreeMap<Multidegree, usize>,
}

/// Dimensions of `𝔅(V)(n)` as ranks of Gram matrices of the canonical form.
pub fn nichols_dims(q: &BraidingMatrix, cfg: &NicholsConfig) -> Result<NicholsDims> {
    if !q.is_symmetric() {
        return Err(Error::RequiresSymmetric);
    }
    let theta = q.theta();
    let degs: Vec<Multidegree> = (1..=cfg.max_degree).flat_map(|n| multidegrees(theta, n)).collect();
    let work = |deg: &Multidegree| -> Result<(Multidegree, usize)> {
        let comp = GradedComponent::build(q, deg, cfg.b.as_deref())?;
        cfg.limits.check_terms(comp.basis.len() * comp.basis.len(), "Gram matrix")?;
        Ok((deg.clone(), comp.rank(&cfg.limits)?))
    };
    let results: Vec<(Multidegree, usize)> = if cfg.parallel {
        degs.par_iter().map(work).collect::<Result<_>>()?
    } else {
        degs.iter().map(work).collect::<Result<_>>()?
    };
    let mut dims = vec![0; cfg.max_degree + 1];
    dims[0] = 1;
    let mut by_multidegree = BTreeMap::new();
    for (deg, r) in results {
        dims[deg.iter().sum::<usize>()] += r;
        if r > 0 {
            by_multidegree.insert(deg, r);
        }
    }
    Ok(NicholsDims { dims, by_multidegree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::twist_to_symmetric;
    use proptest::prelude::*;

    fn t() -> MonomialScalar {
        MonomialScalar::param(0)
    }

    fn sf(m: MonomialScalar) -> ScalarFraction {
        ScalarFraction::from_monomial(&m)
    }

    /// Generic A2 braiding with distinct off-diagonal entries.
    fn a2() -> BraidingMatrix {
        BraidingMatrix::new(vec![vec![t(), MonomialScalar::param(1)], vec![t().inv().mul(&MonomialScalar::param(1).inv()), t()]]).unwrap()
    }

    fn a2_sym() -> BraidingMatrix {
        let h = MonomialScalar::param_pow_halves(0, -1);
        BraidingMatrix::new(vec![vec![t(), h.clone()], vec![h, t()]]).unwrap()
    }

    fn x(i: usize) -> FreeElement {
        FreeElement::generator(i)
    }

    #[test]
    fn commutator_examples() {
        let q = a2();
        let c = braided_commutator(&q, &x(0), &x(1));
        let expect = FreeElement::from_terms([(vec![0, 1], ScalarFraction::one()), (vec![1, 0], -sf(q.get(0, 1).clone()))]);
        assert_eq!(c, expect);
        let c = braided_commutator(&q, &x(0), &x(0));
        let one_minus = &ScalarFraction::one() - &sf(t());
        assert_eq!(c, FreeElement::word(vec![0, 0]).scale(&one_minus));
        assert!(braided_commutator(&q, &x(0), &FreeElement::one().scale(&ScalarFraction::from_integer(3))).is_zero());
    }

    #[test]
    fn serre_formula_matches_iterated_commutator() {
        let q = a2();
        let a = crate::braiding::detect_cartan(&q).unwrap();
        for (i, j) in [(0, 1), (1, 0)] {
            let s = serre_element(&q, &a, i, j).unwrap();
            assert_eq!(s, ad_power(&q, i, j, 2));
        }
        // Explicit A2 coefficients: x1^2 x2 - (1 + q11) q12 x1 x2 x1 + q11 q12^2 x2 x1^2.
        let s = serre_element(&q, &a, 0, 1).unwrap();
        let q11 = t();
        let q12 = q.get(0, 1).clone();
        let mid = -(&ScalarFraction::from_poly(&LaurentPoly::one() + &LaurentPoly::from_monomial(&q11)) * &sf(q12.clone()));
        assert_eq!(s.coeff(&[0, 0, 1]), ScalarFraction::one());
        assert_eq!(s.coeff(&[0, 1, 0]), mid);
        assert_eq!(s.coeff(&[1, 0, 0]), sf(q11.mul(&q12.pow(2))));
        assert!(serre_element(&q, &a, 0, 0).is_err());
    }

    #[test]
    fn serre_element_is_homogeneous() {
        let q = a2();
        let a = crate::braiding::detect_cartan(&q).unwrap();
        let s = serre_element(&q, &a, 0, 1).unwrap();
        assert_eq!(s.homogeneous_parts(2).keys().collect::<Vec<_>>(), vec![&vec![2, 1]]);
    }

    #[test]
    fn vanishing_examples() {
        let q = a2();
        assert!(serre_vanishing(&q, 0, 1, 2).unwrap());
        assert!(!serre_vanishing(&q, 0, 1, 1).unwrap());
        let split = BraidingMatrix::new(vec![vec![t(), t()], vec![t().inv(), t()]]).unwrap();
        assert!(serre_vanishing(&split, 0, 1, 1).unwrap());
    }

    #[test]
    fn shuffle_examples() {
        let q = a2();
        let d = shuffle_coproduct(&q, &FreeElement::word(vec![0, 1]), 1, 1).unwrap();
        assert_eq!(d.coeff(&[0], &[1]), ScalarFraction::one());
        assert_eq!(d.coeff(&[1], &[0]), sf(q.get(0, 1).clone()));
        let d = shuffle_coproduct(&q, &FreeElement::word(vec![0, 0]), 1, 1).unwrap();
        assert_eq!(d.coeff(&[0], &[0]), ScalarFraction::from_poly(&LaurentPoly::one() + &LaurentPoly::from_monomial(&t())));
        let w = FreeElement::word(vec![1, 0, 1]);
        let d = shuffle_coproduct(&q, &w, 3, 0).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.coeff(&[1, 0, 1], &[]), ScalarFraction::one());
        assert!(shuffle_coproduct(&q, &w, 1, 1).is_err());
    }

    #[test]
    fn primitivity_examples() {
        let q = a2();
        let a = crate::braiding::detect_cartan(&q).unwrap();
        assert!(skew_primitivity_check(&q, &serre_element(&q, &a, 0, 1).unwrap()));
        assert!(skew_primitivity_check(&q, &serre_element(&q, &a, 1, 0).unwrap()));
        assert!(!skew_primitivity_check(&q, &FreeElement::word(vec![0, 1])));
        assert!(skew_primitivity_check(&q, &x(0)));
    }

    #[test]
    fn form_examples() {
        let q = a2_sym();
        let b = [MonomialScalar::from_integer(2).unwrap(), MonomialScalar::from_integer(3).unwrap()];
        assert_eq!(canonical_form(&q, &x(0), &x(0), Some(&b)).unwrap(), ScalarFraction::from_integer(2));
        assert!(canonical_form(&q, &x(0), &x(1), Some(&b)).unwrap().is_zero());
        assert!(canonical_form(&q, &FreeElement::word(vec![0, 0]), &FreeElement::word(vec![0, 1]), None).unwrap().is_zero());
        assert!(matches!(canonical_form(&a2(), &x(0), &x(0), None), Err(Error::RequiresSymmetric)));
    }

    // Oracle for (x_i^n | x_i^n): expand Δ_{n-1,1} repeatedly with shuffles.
    fn power_norm_by_shuffles(q: &BraidingMatrix, n: usize) -> ScalarFraction {
        if n == 0 {
            return ScalarFraction::one();
        }
        let d = shuffle_coproduct(q, &FreeElement::word(vec![0; n]), n - 1, 1).unwrap();
        &d.coeff(&vec![0; n - 1], &[0]) * &power_norm_by_shuffles(q, n - 1)
    }

    #[test]
    fn power_norms_are_q_factorials() {
        let q = a2_sym();
        for n in 1..=4 {
            let xn = FreeElement::word(vec![0; n]);
            let f = canonical_form(&q, &xn, &xn, None).unwrap();
            assert_eq!(f, ScalarFraction::from_poly(q_factorial(n as u32, &t())));
            assert_eq!(f, power_norm_by_shuffles(&q, n));
        }
    }

    #[test]
    fn a2_and_a1xa1_dims() {
        let cfg = NicholsConfig { max_degree: 4, ..Default::default() };
        assert_eq!(nichols_dims(&a2_sym(), &cfg).unwrap().dims, vec![1, 2, 4, 6, 9]);
        let split = BraidingMatrix::new(vec![vec![t(), MonomialScalar::one()], vec![MonomialScalar::one(), MonomialScalar::param(1)]]).unwrap();
        assert_eq!(nichols_dims(&split, &cfg).unwrap().dims, vec![1, 2, 3, 4, 5]);
        let one = BraidingMatrix::new(vec![vec![t()]]).unwrap();
        assert_eq!(nichols_dims(&one, &cfg).unwrap().dims, vec![1; 5]);
    }

    #[test]
    fn twisting_preserves_dims() {
        let q = a2();
        let tw = twist_to_symmetric(&q).unwrap();
        let sym = nichols_dims(&tw.symmetric, &NicholsConfig { max_degree: 4, ..Default::default() }).unwrap();
        let lim = Limits::default();
        for (deg, &r) in &sym.by_multidegree {
            let words: Vec<FreeElement> = words_of_multidegree(deg).into_iter().map(FreeElement::word).collect();
            assert_eq!(nichols_rank(&q, &words, &lim).unwrap(), r);
        }
    }

    fn b2_sym() -> BraidingMatrix {
        let p = |e: i64| t().pow(e);
        BraidingMatrix::new(vec![vec![p(2), p(-2)], vec![p(-2), p(4)]]).unwrap()
    }

    #[test]
    fn serre_elements_lie_in_the_radical() {
        for q in [a2_sym(), a2(), b2_sym()] {
            let a = crate::braiding::detect_cartan(&q).unwrap();
            for (i, j) in [(0, 1), (1, 0)] {
                assert!(serre_in_radical(&q, &a, i, j).unwrap());
                let r = (1 - a.get(i, j)) as usize;
                assert!(!in_radical(&q, &ad_power(&q, i, j, r - 1)));
            }
        }
    }

    #[test]
    fn vanishing_agrees_with_radical() {
        let p = |e: i64| t().pow(e);
        let mats = [
            a2(),
            b2_sym(),
            BraidingMatrix::new(vec![vec![p(1), p(2)], vec![p(-2), p(3)]]).unwrap(),
            BraidingMatrix::new(vec![vec![p(2), p(-1)], vec![p(-5), p(3)]]).unwrap(),
        ];
        for q in &mats {
            for (i, j) in [(0, 1), (1, 0)] {
                for r in 1..=3 {
                    assert_eq!(serre_vanishing(q, i, j, r).unwrap(), in_radical(q, &ad_power(q, i, j, r)), "{:?} {} {} {}", q, i, j, r);
                }
            }
        }
    }

    #[test]
    fn decomposable_dims_convolve() {
        let p = |k: usize| MonomialScalar::param(k);
        let one = MonomialScalar::one;
        let q = BraidingMatrix::new(vec![
            vec![t(), MonomialScalar::param_pow_halves(0, -1), one()],
            vec![MonomialScalar::param_pow_halves(0, -1), t(), one()],
            vec![one(), one(), p(1)],
        ])
        .unwrap();
        let cfg = NicholsConfig { max_degree: 4, parallel: true, ..Default::default() };
        let a2 = [1, 2, 4, 6, 9];
        let conv: Vec<usize> = (0..=4).map(|n| (0..=n).map(|k| a2[k]).sum()).collect();
        assert_eq!(nichols_dims(&q, &cfg).unwrap().dims, conv);
    }

    #[test]
    fn tags_give_braiding() {
        let q = MonomialScalar::param(0);
        let tags = [
            GeneratorTag { index: 0, group_exponents: vec![1, 0], character_row: vec![q.clone(), q.inv()] },
            GeneratorTag { index: 1, group_exponents: vec![0, 1], character_row: vec![q.inv(), q.clone()] },
        ];
        let b = braiding_from_tags(&tags).unwrap();
        assert_eq!(b.get(0, 0), &q);
        assert_eq!(b.get(0, 1), &q.inv());
        assert_eq!(tags[0].character_at(&[2, 3]), q.pow(-1));
    }

    fn random_word(theta: u8, max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..theta, 0..=max)
    }

    fn q3() -> BraidingMatrix {
        let p = |k: usize| MonomialScalar::param(k);
        BraidingMatrix::new(vec![
            vec![p(0), p(1), p(2).inv()],
            vec![p(0).inv(), p(0).pow(2), p(1).mul(&p(2))],
            vec![p(2), p(1).inv(), p(0).pow(-1)],
        ])
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn shuffle_coassociativity(w in random_word(3, 6), cut in 0usize..7, cut2 in 0usize..7) {
            let q = q3();
            let len = w.len();
            let (l, rest) = (cut.min(len), len - cut.min(len));
            let m = cut2.min(rest);
            let n = rest - m;
            let u = FreeElement::word(w);
            // (Δ_{l,m} ⊗ id) Δ_{l+m,n}
            let mut left: BTreeMap<(Word, Word, Word), ScalarFraction> = BTreeMap::new();
            for ((a, b), c) in shuffle_coproduct(&q, &u, l + m, n).unwrap().terms() {
                for ((a1, a2), c2) in shuffle_coproduct(&q, &FreeElement::word(a.clone()), l, m).unwrap().terms() {
                    let e = left.entry((a1.clone(), a2.clone(), b.clone())).or_insert_with(ScalarFraction::zero);
                    *e = &*e + &(c * c2);
                }
            }
            // (id ⊗ Δ_{m,n}) Δ_{l,m+n}
            let mut right: BTreeMap<(Word, Word, Word), ScalarFraction> = BTreeMap::new();
            for ((a, b), c) in shuffle_coproduct(&q, &u, l, m + n).unwrap().terms() {
                for ((b1, b2), c2) in shuffle_coproduct(&q, &FreeElement::word(b.clone()), m, n).unwrap().terms() {
                    let e = right.entry((a.clone(), b1.clone(), b2.clone())).or_insert_with(ScalarFraction::zero);
                    *e = &*e + &(c * c2);
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            prop_assert_eq!(left, right);
        }

        #[test]
        fn form_adjunction(xw in random_word(2, 3), yw in random_word(2, 3), zw in random_word(2, 6)) {
            let q = a2_sym();
            let (x1, x2) = (FreeElement::word(xw.clone()), FreeElement::word(yw.clone()));
            let z = FreeElement::word(zw.clone());
            let lhs = canonical_form(&q, &x1.mul(&x2), &z, None).unwrap();
            let mut rhs = ScalarFraction::zero();
            if zw.len() == xw.len() + yw.len() {
                for ((a, b), c) in shuffle_coproduct(&q, &z, xw.len(), yw.len()).unwrap().terms() {
                    let f1 = canonical_form(&q, &x1, &FreeElement::word(a.clone()), None).unwrap();
                    let f2 = canonical_form(&q, &x2, &FreeElement::word(b.clone()), None).unwrap();
                    rhs = &rhs + &(&(c * &f1) * &f2);
                }
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gram_is_symmetric(d1 in 0usize..3, d2 in 0usize..3) {
            prop_assume!(d1 + d2 > 0);
            let g = GradedComponent::build(&a2_sym(), &[d1, d2], None).unwrap();
            for i in 0..g.basis.len() {
                for j in 0..i {
                    prop_assert_eq!(&g.gram[i][j], &g.gram[j][i]);
                }
            }
        }
    }
}
