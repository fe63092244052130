use std::collections::{BTreeMap, BTreeSet};

use crate::braiding::{BraidingMatrix, CartanMatrix};
use crate::error::{Error, Result};
use crate::freealg::GeneratorTag;
use crate::scalars::{MonomialScalar, ParamNames, ScalarFraction};

/// A connected component of the Dynkin diagram with its base `q_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumComponent {
    pub vertices: Vec<usize>,
    pub q: MonomialScalar,
}

/// A generic datum of finite Cartan type over `Γ = ℤ^s`.
///
/// Vertices are zero-based. `g_i` is an exponent vector in the basis
/// `Y_1, ..., Y_s`, and `χ_i` is given by its values `χ_i(Y_h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericDatum {
    s: usize,
    cartan: CartanMatrix,
    components: Vec<DatumComponent>,
    g: Vec<Vec<i64>>,
    chi: Vec<Vec<MonomialScalar>>,
    lambda: BTreeMap<(usize, usize), ScalarFraction>,
    names: ParamNames,
}

impl GenericDatum {
    /// Checks shapes only; the structural conditions are reported by
    /// [`validate_datum`]. Zero entries of `lambda` are dropped.
    pub fn new(
        s: usize,
        cartan: CartanMatrix,
        components: Vec<DatumComponent>,
        g: Vec<Vec<i64>>,
        chi: Vec<Vec<MonomialScalar>>,
        lambda: impl IntoIterator<Item = ((usize, usize), ScalarFraction)>,
    ) -> Result<Self> {
        let theta = cartan.rank();
        if g.len() != theta || chi.len() != theta {
            return Err(Error::invalid(format!(
                "need {} group elements and characters, got {} and {}",
                theta,
                g.len(),
                chi.len()
            )));
        }
        if g.iter().any(|v| v.len() != s) || chi.iter().any(|v| v.len() != s) {
            return Err(Error::invalid(format!("group elements and characters must have {} entries", s)));
        }
        let mut seen = BTreeSet::new();
        for c in &components {
            if c.vertices.is_empty() {
                return Err(Error::invalid("empty component"));
            }
            for &v in &c.vertices {
                if v >= theta || !seen.insert(v) {
                    return Err(Error::invalid(format!("component vertex {} out of range or repeated", v + 1)));
                }
            }
        }
        if seen.len() != theta {
            return Err(Error::invalid("components must cover every vertex"));
        }
        let mut map = BTreeMap::new();
        for ((i, j), v) in lambda {
            if i >= j || j >= theta {
                return Err(Error::invalid(format!("linking constant needs 1 <= i < j <= {}", theta)));
            }
            if !v.is_zero() && map.insert((i, j), v).is_some() {
                return Err(Error::invalid(format!("linking constant ({}, {}) given twice", i + 1, j + 1)));
            }
        }
        let mut components = components;
        for c in &mut components {
            c.vertices.sort_unstable();
        }
        components.sort_by_key(|c| c.vertices[0]);
        Ok(GenericDatum {
            s,
            cartan,
            components,
            g,
            chi,
            lambda: map,
            names: ParamNames::default(),
        })
    }

    pub fn with_names(mut self, names: ParamNames) -> Self {
        self.names = names;
        self
    }

    pub fn names(&self) -> &ParamNames {
        &self.names
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn theta(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn components(&self) -> &[DatumComponent] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.vertices.contains(&v))
            .expect("components cover all vertices")
    }

    pub fn g(&self, i: usize) -> &[i64] {
        &self.g[i]
    }

    pub fn chi(&self, i: usize) -> &[MonomialScalar] {
        &self.chi[i]
    }

    /// `λ_ij` for `i < j`, or `None` when zero.
    pub fn lambda(&self, i: usize, j: usize) -> Option<&ScalarFraction> {
        self.lambda.get(&(i, j))
    }

    pub fn lambdas(&self) -> &BTreeMap<(usize, usize), ScalarFraction> {
        &self.lambda
    }

    /// `χ_i(Π Y_h^{γ_h})`.
    pub fn chi_at(&self, i: usize, gamma: &[i64]) -> MonomialScalar {
        self.chi[i]
            .iter()
            .zip(gamma)
            .fold(MonomialScalar::one(), |acc, (c, &e)| acc.mul(&c.pow(e)))
    }

    /// `χ_β(g^γ) = Π_i χ_i(g^γ)^{β_i}` for a degree `β ∈ ℕ^θ`.
    pub fn chi_degree_at(&self, degree: &[i64], gamma: &[i64]) -> MonomialScalar {
        degree
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .fold(MonomialScalar::one(), |acc, (i, &b)| acc.mul(&self.chi_at(i, gamma).pow(b)))
    }

    /// `g_β = Π g_i^{β_i}` as an exponent vector.
    pub fn group_of_degree(&self, degree: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.s];
        for (i, &b) in degree.iter().enumerate() {
            for (o, &x) in out.iter_mut().zip(&self.g[i]) {
                *o += b * x;
            }
        }
        out
    }

    pub fn tags(&self) -> Vec<GeneratorTag> {
        (0..self.theta())
            .map(|i| GeneratorTag {
                index: i,
                group_exponents: self.g[i].clone(),
                character_row: self.chi[i].clone(),
            })
            .collect()
    }

    /// The braiding `q_ij = χ_j(g_i)` of the generators `a_i`.
    pub fn braiding(&self) -> Result<BraidingMatrix> {
        crate::freealg::braiding_from_tags(&self.tags())
    }

    /// Rescales linked generators so that every nonzero `λ_ij` becomes 1.
    /// Returns the new datum and the factors `c_j` with `a'_j = c_j a_j`.
    pub fn normalize_lambda(&self) -> (GenericDatum, Vec<ScalarFraction>) {
        let mut scale = vec![ScalarFraction::one(); self.theta()];
        let mut out = self.clone();
        for (&(i, j), v) in &self.lambda {
            if !v.is_one() {
                scale[j] = v.inv().expect("stored constants are nonzero");
                out.lambda.insert((i, j), ScalarFraction::one());
            }
        }
        (out, scale)
    }

    /// Transport of structure along a vertex permutation: vertex `i` becomes
    /// `sigma[i]`, with the generators kept (all `α_i = 1`).
    pub fn permuted(&self, sigma: &[usize]) -> Result<GenericDatum> {
        crate::braiding::check_permutation(sigma, self.theta())?;
        let theta = self.theta();
        let mut g = vec![Vec::new(); theta];
        let mut chi = vec![Vec::new(); theta];
        for i in 0..theta {
            g[sigma[i]] = self.g[i].clone();
            chi[sigma[i]] = self.chi[i].clone();
        }
        let components = self
            .components
            .iter()
            .map(|c| DatumComponent {
                vertices: c.vertices.iter().map(|&v| sigma[v]).collect(),
                q: c.q.clone(),
            })
            .collect();
        let mut lambda = Vec::new();
        for (&(i, j), v) in &self.lambda {
            let (si, sj) = (sigma[i], sigma[j]);
            if si < sj {
                lambda.push(((si, sj), v.clone()));
            } else {
                // λ_ij = -χ_j(g_i) λ'_{σ(j)σ(i)}
                let c = ScalarFraction::from_monomial(&self.chi_at(j, &self.g[i]).inv());
                lambda.push(((sj, si), -(&(v * &c))));
            }
        }
        Ok(GenericDatum::new(self.s, self.cartan.permuted(sigma)?, components, g, chi, lambda)?
            .with_names(self.names.clone()))
    }
}

/// One failed condition of a datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Short code: `finite-type`, `components`, `generic`, `cartantype`,
    /// `link0`, `link1`, `link2`, `link4`, `link5`, `link6` or `noniso`.
    pub code: &'static str,
    /// Zero-based vertices involved.
    pub vertices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// All `q_I` positive.
    pub positive: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: &str) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

fn is_trivial_character(d: &GenericDatum, i: usize, j: usize) -> bool {
    (0..d.s).all(|h| d.chi[i][h].mul(&d.chi[j][h]).is_one())
}

/// Checks every condition on a generic datum and lists all violations.
pub fn validate_datum(d: &GenericDatum) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |code, vertices: Vec<usize>, detail: String| out.push(Violation { code, vertices, detail });
    let theta = d.theta();
    let a = &d.cartan;

    if let Err(e) = a.finite_type() {
        push("finite-type", Vec::new(), format!("Cartan matrix is not of finite type: {}", e));
    }
    let expected: BTreeSet<Vec<usize>> = a.components().blocks().iter().cloned().collect();
    let given: BTreeSet<Vec<usize>> = d.components.iter().map(|c| c.vertices.clone()).collect();
    let components_ok = expected == given;
    if !components_ok {
        push("components", Vec::new(), "components do not match the Cartan matrix".into());
    }
    for c in &d.components {
        if c.q.is_root_of_unity() {
            push("generic", c.vertices.clone(), format!("q_I = {} is a root of unity", c.q.fmt_with(&d.names)));
        }
    }
    let positive = d.components.iter().all(|c| c.q.is_positive());

    if components_ok {
        if let Ok(dv) = a.symmetrize() {
            for i in 0..theta {
                let qi = &d.components[d.component_of(i)].q;
                let diag = d.chi_at(i, &d.g[i]);
                if diag != qi.pow(dv[i]) {
                    push(
                        "cartantype",
                        vec![i],
                        format!("χ_{0}(g_{0}) = {1} but q_I^d_{0} = {2}", i + 1, diag.fmt_with(&d.names), qi.pow(dv[i]).fmt_with(&d.names)),
                    );
                }
                for j in i + 1..theta {
                    let prod = d.chi_at(j, &d.g[i]).mul(&d.chi_at(i, &d.g[j]));
                    let want = qi.pow(dv[i] * a.get(i, j));
                    if prod != want {
                        push(
                            "cartantype",
                            vec![i, j],
                            format!("χ_{1}(g_{0})χ_{0}(g_{1}) = {2}, expected {3}", i + 1, j + 1, prod.fmt_with(&d.names), want.fmt_with(&d.names)),
                        );
                    }
                }
            }
        }
    }

    let connected = a.components();
    let mut links_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(i, j) in d.lambda.keys() {
        let vs = vec![i, j];
        let name = format!("({}, {})", i + 1, j + 1);
        if connected.connected(i, j) {
            push("link0", vs.clone(), format!("{} lie in the same component", name));
        }
        if d.g[i].iter().zip(&d.g[j]).all(|(x, y)| x + y == 0) {
            push("link1", vs.clone(), format!("g_i g_j = 1 for {}", name));
        }
        if !is_trivial_character(d, i, j) {
            push("link2", vs.clone(), format!("χ_i χ_j is not trivial for {}", name));
        } else {
            let (cij, cji) = (d.chi_at(i, &d.g[j]), d.chi_at(j, &d.g[i]));
            let (cii, cjj) = (d.chi_at(i, &d.g[i]), d.chi_at(j, &d.g[j]));
            if cij != cji.inv() || cij != cii || cii != cjj.inv() {
                push("link4", vs.clone(), format!("character values disagree for {}", name));
            }
        }
        links_of.entry(i).or_default().push(j);
        links_of.entry(j).or_default().push(i);
    }
    for (&v, partners) in &links_of {
        if partners.len() > 1 {
            let mut vs = vec![v];
            vs.extend(partners);
            push("link6", vs, format!("vertex {} is linked to several vertices", v + 1));
        }
    }
    let pairs: Vec<(usize, usize)> = d.lambda.keys().copied().collect();
    for (x, &(i, k)) in pairs.iter().enumerate() {
        for &(j, l) in &pairs[x + 1..] {
            for (j, l) in [(j, l), (l, j)] {
                if a.get(i, j) != a.get(k, l) || a.get(j, i) != a.get(l, k) {
                    push("link5", vec![i, k, j, l], format!("a_ij != a_kl for linked pairs ({}, {}) and ({}, {})", i + 1, k + 1, j + 1, l + 1));
                }
            }
        }
    }
    for i in 0..theta {
        for j in i + 1..theta {
            if d.g[i] == d.g[j] && d.chi[i] == d.chi[j] {
                push("noniso", vec![i, j], format!("(g, χ) coincide for vertices {} and {}", i + 1, j + 1));
            }
        }
    }
    ValidationReport {
        violations: out,
        positive,
    }
}
