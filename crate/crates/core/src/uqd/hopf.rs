use std::collections::{BTreeMap, HashMap};

use super::datum::GenericDatum;
use super::element::{PBWElement, PBWTensor, PbwMonomial};
use super::rewrite::{Normalizer, RewriteSystem, Strategy};
use crate::error::Result;
use crate::freealg::{multidegrees, nichols_rank, words_of_multidegree, FreeElement};
use crate::linalg;
use crate::rootsys::RootData;
use crate::scalars::{MonomialScalar, ScalarFraction};

/// Default radius of the group window `{γ : |γ_h| <= 2}`.
pub const WINDOW_RADIUS: i64 = 2;

/// All `γ ∈ ℤ^s` with `|γ_h| <= radius`, in lexicographic order.
pub fn group_window(s: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-radius..=radius).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Comultiplication on `U(𝒟)`, with `Δ(b_j)` cached.
pub struct Coproduct<'a> {
    sys: &'a RewriteSystem,
    nz: Normalizer<'a>,
    roots: HashMap<usize, PBWTensor>,
}

impl<'a> Coproduct<'a> {
    pub fn new(sys: &'a RewriteSystem) -> Self {
        Coproduct {
            sys,
            nz: sys.normalizer(Strategy::Leftmost),
            roots: HashMap::new(),
        }
    }

    fn mul_monomials(&mut self, a: &PbwMonomial, b: &PbwMonomial) -> Result<PBWElement> {
        self.nz.mul(&PBWElement::monomial(a.clone()), &PBWElement::monomial(b.clone()))
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn tensor_mul(&mut self, x: &PBWTensor, y: &PBWTensor) -> Result<PBWTensor> {
        let mut out = PBWTensor::zero();
        for ((a, b), c1) in x.terms() {
            for ((c, d), c2) in y.terms() {
                let left = self.mul_monomials(a, c)?;
                let right = self.mul_monomials(b, d)?;
                let coeff = c1 * c2;
                for (l, lc) in left.terms() {
                    for (r, rc) in right.terms() {
                        out.add_term((l.clone(), r.clone()), &(&coeff * lc) * rc);
                    }
                }
                self.sys.limits().check_terms(out.len(), "coproduct")?;
            }
        }
        Ok(out)
    }

    /// `Δ(b_j)`.
    pub fn root_vector(&mut self, j: usize) -> Result<PBWTensor> {
        if let Some(t) = self.roots.get(&j) {
            return Ok(t.clone());
        }
        let sys = self.sys;
        let d = sys.datum();
        let (p, s) = (sys.num_root_vectors(), d.s());
        let t = match sys.bracketing(j) {
            None => {
                let i = sys.root_data().simple_vertex(j).expect("simple root");
                let a = PbwMonomial::from_word(p, &[j as u16], vec![0; s]);
                let mut t = PBWTensor::zero();
                t.add_term((a.clone(), PbwMonomial::group(p, vec![0; s])), ScalarFraction::one());
                t.add_term((PbwMonomial::group(p, d.g(i).to_vec()), a), ScalarFraction::one());
                t
            }
            Some((l, k)) => {
                let (dl, dk) = (self.root_vector(l)?, self.root_vector(k)?);
                let beta_k = sys.root_data().beta()[k].clone();
                let c = d.chi_degree_at(&beta_k, &d.group_of_degree(&sys.root_data().beta()[l]));
                let lk = self.tensor_mul(&dl, &dk)?;
                let kl = self.tensor_mul(&dk, &dl)?;
                let mut scaled = PBWTensor::zero();
                for (key, v) in kl.terms() {
                    scaled.add_term(key.clone(), v.scale_monomial(&c));
                }
                lk.sub(&scaled)
            }
        };
        self.roots.insert(j, t.clone());
        Ok(t)
    }

    pub fn monomial(&mut self, m: &PbwMonomial) -> Result<PBWTensor> {
        let p = self.sys.num_root_vectors();
        let s = self.sys.datum().s();
        let mut acc = PBWTensor::zero();
        acc.add_term((PbwMonomial::group(p, vec![0; s]), PbwMonomial::group(p, vec![0; s])), ScalarFraction::one());
        for (j, &c) in m.exps.iter().enumerate() {
            for _ in 0..c {
                let dj = self.root_vector(j)?;
                acc = self.tensor_mul(&acc, &dj)?;
            }
        }
        let mut y = PBWTensor::zero();
        y.add_term((PbwMonomial::group(p, m.gamma.clone()), PbwMonomial::group(p, m.gamma.clone())), ScalarFraction::one());
        self.tensor_mul(&acc, &y)
    }

    pub fn apply(&mut self, x: &PBWElement) -> Result<PBWTensor> {
        let mut out = PBWTensor::zero();
        for (m, c) in x.terms() {
            for (key, v) in self.monomial(m)?.terms() {
                out.add_term(key.clone(), v * c);
            }
        }
        Ok(out)
    }
}

/// `Δ(x)` with both legs in PBW normal form.
pub fn coproduct(sys: &RewriteSystem, x: &PBWElement) -> Result<PBWTensor> {
    Coproduct::new(sys).apply(x)
}

/// `ε(b^c y^γ) = δ_{c,0}`.
pub fn counit(x: &PBWElement) -> ScalarFraction {
    x.terms()
        .filter(|(m, _)| m.is_group_like())
        .fold(ScalarFraction::zero(), |acc, (_, c)| &acc + c)
}

/// `(ε ⊗ id)` and `(id ⊗ ε)` applied to a tensor.
pub fn counit_legs(t: &PBWTensor) -> (PBWElement, PBWElement) {
    let mut left = PBWElement::zero();
    let mut right = PBWElement::zero();
    for ((a, b), c) in t.terms() {
        if a.is_group_like() {
            left.add_term(b.clone(), c.clone());
        }
        if b.is_group_like() {
            right.add_term(a.clone(), c.clone());
        }
    }
    (left, right)
}

pub type Triple = BTreeMap<(PbwMonomial, PbwMonomial, PbwMonomial), ScalarFraction>;

fn add_triple(map: &mut Triple, key: (PbwMonomial, PbwMonomial, PbwMonomial), c: ScalarFraction) {
    let e = map.entry(key.clone()).or_insert_with(ScalarFraction::zero);
    *e = &*e + &c;
    if e.is_zero() {
        map.remove(&key);
    }
}

/// `((Δ ⊗ id)Δ(x), (id ⊗ Δ)Δ(x))`.
pub fn iterated_coproducts(sys: &RewriteSystem, x: &PBWElement) -> Result<(Triple, Triple)> {
    let mut cp = Coproduct::new(sys);
    let dx = cp.apply(x)?;
    let mut left = Triple::new();
    let mut right = Triple::new();
    for ((a, b), c) in dx.terms() {
        for ((a1, a2), c1) in cp.monomial(a)?.terms() {
            add_triple(&mut left, (a1.clone(), a2.clone(), b.clone()), c * c1);
        }
        for ((b1, b2), c2) in cp.monomial(b)?.terms() {
            add_triple(&mut right, (a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    Ok((left, right))
}

/// Coradical filtration degree: the largest `Σ c_j ht(β_j)` among the terms.
pub fn filtration_degree(sys: &RewriteSystem, x: &PBWElement) -> i64 {
    x.terms().map(|(m, _)| sys.monomial_filtration(m)).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkReport {
    /// `|Φ⁺|`, the GK dimension of the Nichols algebra.
    pub nichols: usize,
    /// `P + s`, read off the PBW basis of `U(𝒟)`.
    pub algebra: usize,
}

pub fn gk_dimension(d: &GenericDatum) -> Result<GkReport> {
    let rd = RootData::new(d.cartan())?;
    Ok(GkReport {
        nichols: rd.num_positive_roots(),
        algebra: rd.num_positive_roots() + d.s(),
    })
}

/// One degree of the comparison between `gr U(𝒟)` and `𝔅(V) # 𝕜Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrSlice {
    pub degree: usize,
    /// PBW monomials (without group part) of filtration degree `degree`.
    pub pbw_monomials: usize,
    /// Rank of their images in the Nichols algebra.
    pub pbw_rank: usize,
    /// `dim 𝔅(V)(degree)`.
    pub nichols_dim: usize,
    /// Size of the group window.
    pub window: usize,
}

impl GrSlice {
    pub fn matches(&self) -> bool {
        self.pbw_monomials == self.pbw_rank && self.pbw_rank == self.nichols_dim
    }

    pub fn algebra_window_dim(&self) -> usize {
        self.pbw_monomials * self.window
    }

    pub fn smash_window_dim(&self) -> usize {
        self.nichols_dim * self.window
    }
}

/// Compares, degree by degree, the PBW monomials of `U(𝒟)` with the
/// Nichols algebra of the braiding `q_ij = χ_j(g_i)`.
pub fn gr_comparison(sys: &RewriteSystem, max_degree: usize, radius: i64) -> Result<Vec<GrSlice>> {
    let q = sys.braiding();
    let theta = sys.datum().theta();
    let window = group_window(sys.datum().s(), radius).len();
    let limits = sys.limits();
    let mut out = Vec::new();
    for n in 0..=max_degree {
        let monos = sys.monomials_of_filtration(n as i64);
        let mut by_degree: BTreeMap<Vec<i64>, Vec<FreeElement>> = BTreeMap::new();
        for m in &monos {
            by_degree.entry(sys.monomial_degree(m)).or_default().push(sys.expand_monomial(m));
        }
        let mut pbw_rank = 0;
        for elems in by_degree.values() {
            pbw_rank += nichols_rank(q, elems, limits)?;
        }
        let mut nichols_dim = 0;
        for deg in multidegrees(theta, n) {
            let words: Vec<FreeElement> = words_of_multidegree(&deg).into_iter().map(FreeElement::word).collect();
            nichols_dim += nichols_rank(q, &words, limits)?;
        }
        out.push(GrSlice {
            degree: n,
            pbw_monomials: monos.len(),
            pbw_rank,
            nichols_dim,
            window,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPrimitiveReport {
    /// Dimension of `{x : Δx = hg ⊗ x + x ⊗ g, y x y⁻¹ = χ(y) x}` in the window.
    pub dimension: usize,
    /// Whether `hg - g` lies in it.
    pub trivial: bool,
    /// `dimension` minus the trivial part.
    pub nontrivial: usize,
}

/// Skew-primitive elements of filtration degree at most 1 whose group part
/// lies in the window of the given radius.
pub fn skew_primitive_space(
    sys: &RewriteSystem,
    g: &[i64],
    h: &[i64],
    chi: &[MonomialScalar],
    radius: i64,
) -> Result<SkewPrimitiveReport> {
    let d = sys.datum();
    let s = d.s();
    let p = sys.num_root_vectors();
    let hg: Vec<i64> = h.iter().zip(g).map(|(a, b)| a + b).collect();
    let mut basis = Vec::new();
    for gamma in group_window(s, radius) {
        basis.push(PbwMonomial::group(p, gamma.clone()));
        for i in 0..d.theta() {
            let j = sys.root_data().simple_index(i);
            basis.push(PbwMonomial::from_word(p, &[j as u16], gamma.clone()));
        }
    }
    let mut cp = Coproduct::new(sys);
    let hg_m = PbwMonomial::group(p, hg.clone());
    let g_m = PbwMonomial::group(p, g.to_vec());
    // Rows are keyed by tensor basis elements and by (generator, monomial).
    let mut rows: BTreeMap<(usize, PbwMonomial, PbwMonomial), Vec<(usize, ScalarFraction)>> = BTreeMap::new();
    let mut nz = sys.normalizer(Strategy::Leftmost);
    for (col, u) in basis.iter().enumerate() {
        let mut t = cp.monomial(u)?;
        t.add_term((hg_m.clone(), u.clone()), ScalarFraction::from_integer(-1));
        t.add_term((u.clone(), g_m.clone()), ScalarFraction::from_integer(-1));
        for ((a, b), c) in t.terms() {
            rows.entry((0, a.clone(), b.clone())).or_default().push((col, c.clone()));
        }
        let ue = PBWElement::monomial(u.clone());
        for m in 0..s {
            let mut y = vec![0; s];
            y[m] = 1;
            let yinv: Vec<i64> = y.iter().map(|e| -e).collect();
            let left = nz.mul(&sys.group_element(y), &ue)?;
            let conj = nz.mul(&left, &sys.group_element(yinv))?;
            let diff = conj.sub(&ue.scale(&ScalarFraction::from_monomial(&chi[m])));
            for (mono, c) in diff.terms() {
                rows.entry((m + 1, mono.clone(), PbwMonomial::group(p, Vec::new()))).or_default().push((col, c.clone()));
            }
        }
    }
    let matrix: Vec<Vec<ScalarFraction>> = rows
        .values()
        .map(|entries| {
            let mut row = vec![ScalarFraction::zero(); basis.len()];
            for (col, c) in entries {
                row[*col] = &row[*col] + c;
            }
            row
        })
        .collect();
    let rank = linalg::rank(&matrix, sys.limits())?;
    let dimension = basis.len() - rank;
    let in_window = |v: &[i64]| v.iter().all(|x| x.abs() <= radius);
    let trivial = h.iter().any(|&x| x != 0) && chi.iter().all(|c| c.is_one()) && in_window(&hg) && in_window(g);
    Ok(SkewPrimitiveReport {
        dimension,
        trivial,
        nontrivial: dimension - usize::from(trivial),
    })
}
