use std::collections::BTreeMap;

use crate::scalars::{MonomialScalar, ScalarFraction};

/// Index of a root vector `b_j` (zero-based).
pub(crate) type Letter = u16;

/// `b_1^{c_1} ... b_P^{c_P} y^γ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial {
    pub exps: Vec<u32>,
    pub gamma: Vec<i64>,
}

impl PbwMonomial {
    pub fn group(p: usize, gamma: Vec<i64>) -> Self {
        PbwMonomial {
            exps: vec![0; p],
            gamma,
        }
    }

    pub fn is_group_like(&self) -> bool {
        self.exps.iter().all(|&c| c == 0)
    }

    pub(crate) fn from_word(p: usize, word: &[Letter], gamma: Vec<i64>) -> Self {
        let mut exps = vec![0; p];
        for &j in word {
            exps[j as usize] += 1;
        }
        PbwMonomial { exps, gamma }
    }

    /// The non-decreasing word of root vector indices.
    pub(crate) fn word(&self) -> Vec<Letter> {
        let mut w = Vec::new();
        for (j, &c) in self.exps.iter().enumerate() {
            w.extend(std::iter::repeat_n(j as Letter, c as usize));
        }
        w
    }
}

/// Element of `U(𝒟)` in the PBW basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PBWElement {
    terms: BTreeMap<PbwMonomial, ScalarFraction>,
}

impl PBWElement {
    pub fn zero() -> Self {
        PBWElement::default()
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        Self::term(m, ScalarFraction::one())
    }

    pub fn term(m: PbwMonomial, c: ScalarFraction) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn scalar(p: usize, s: usize, c: ScalarFraction) -> Self {
        Self::term(PbwMonomial::group(p, vec![0; s]), c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &ScalarFraction)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> ScalarFraction {
        self.terms.get(m).cloned().unwrap_or_else(ScalarFraction::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: ScalarFraction) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
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
        PBWElement {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub(crate) fn scale_monomial(&self, c: &MonomialScalar) -> Self {
        PBWElement {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.scale_monomial(c))).collect(),
        }
    }

    /// Right multiplication by `y^γ` (group-likes sit to the right).
    pub fn shift(&self, gamma: &[i64]) -> Self {
        PBWElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let g = m.gamma.iter().zip(gamma).map(|(a, b)| a + b).collect();
                    (
                        PbwMonomial {
                            exps: m.exps.clone(),
                            gamma: g,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }
}

/// Element of `U(𝒟) ⊗ U(𝒟)` in the tensor square of the PBW basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PBWTensor {
    terms: BTreeMap<(PbwMonomial, PbwMonomial), ScalarFraction>,
}

impl PBWTensor {
    pub fn zero() -> Self {
        PBWTensor::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(PbwMonomial, PbwMonomial), &ScalarFraction)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: &PbwMonomial, r: &PbwMonomial) -> ScalarFraction {
        self.terms
            .get(&(l.clone(), r.clone()))
            .cloned()
            .unwrap_or_else(ScalarFraction::zero)
    }

    pub fn add_term(&mut self, key: (PbwMonomial, PbwMonomial), c: ScalarFraction) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(ScalarFraction::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `Σ x ⊗ y` from products of two elements.
    pub fn from_pair(x: &PBWElement, y: &PBWElement) -> Self {
        let mut out = Self::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                out.add_term((a.clone(), b.clone()), c * d);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}
