use std::collections::{BTreeMap, HashMap};

use super::datum::{validate_datum, GenericDatum};
use super::element::{Letter, PBWElement, PbwMonomial};
use crate::braiding::BraidingMatrix;
use crate::error::{Error, Result};
use crate::freealg::{braided_commutator, serre_formula, FreeElement, Splitter, Word};
use crate::limits::Limits;
use crate::linalg;
use crate::rootsys::RootData;
use crate::scalars::{fmt_linear_combination, MonomialScalar, ScalarFraction};

/// Which descent a reduction step rewrites first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Debug, Default)]
pub struct RewriteConfig {
    /// Allow every component type of rank at most 3, not only `A1` and `A2`.
    pub extended_types: bool,
    pub limits: Limits,
}

#[derive(Clone, Debug)]
struct TailTerm {
    word: Vec<Letter>,
    gamma: Vec<i64>,
    coeff: ScalarFraction,
}

/// A straightening rule `b_k b_l → rhs` with `k > l` (zero-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub k: usize,
    pub l: usize,
    pub rhs: PBWElement,
}

#[derive(Clone, Debug)]
struct Context {
    datum: GenericDatum,
    roots: RootData,
    q: BraidingMatrix,
    root_vectors: Vec<FreeElement>,
    splits: Vec<Option<(usize, usize)>>,
    degrees: Vec<Vec<i64>>,
    heights: Vec<i64>,
    component: Vec<usize>,
    /// `χ_{β_j}(Y_h)`.
    chi_y: Vec<Vec<MonomialScalar>>,
    /// `g_{β_j}`.
    group: Vec<Vec<i64>>,
    limits: Limits,
}

impl Context {
    fn p(&self) -> usize {
        self.degrees.len()
    }

    fn s(&self) -> usize {
        self.datum.s()
    }

    /// `χ_{β_j}(y^γ)`.
    fn chi_root(&self, j: usize, gamma: &[i64]) -> MonomialScalar {
        self.chi_y[j]
            .iter()
            .zip(gamma)
            .filter(|(_, &e)| e != 0)
            .fold(MonomialScalar::one(), |acc, (c, &e)| acc.mul(&c.pow(e)))
    }

    /// `χ_{deg w}(y^γ)` for a word of root vectors.
    fn chi_word(&self, w: &[Letter], gamma: &[i64]) -> MonomialScalar {
        if gamma.iter().all(|&x| x == 0) {
            return MonomialScalar::one();
        }
        w.iter()
            .fold(MonomialScalar::one(), |acc, &j| acc.mul(&self.chi_root(j as usize, gamma)))
    }

    fn chi_monomial(&self, m: &PbwMonomial, gamma: &[i64]) -> MonomialScalar {
        if gamma.iter().all(|&x| x == 0) {
            return MonomialScalar::one();
        }
        m.exps
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(MonomialScalar::one(), |acc, (j, &c)| acc.mul(&self.chi_root(j, gamma).pow(c as i64)))
    }

    fn filtration(&self, m: &PbwMonomial) -> i64 {
        m.exps.iter().zip(&self.heights).map(|(&c, &h)| c as i64 * h).sum()
    }

    fn label(&self, j: usize) -> String {
        match self.roots.simple_vertex(j) {
            Some(v) => format!("a{}", v + 1),
            None => format!("b{}", j + 1),
        }
    }

    fn pair_name(&self, k: usize, l: usize) -> String {
        format!("{}*{}", self.label(k), self.label(l))
    }
}

/// The straightening rules of `U(𝒟)` for the order `b_1 < ... < b_P`.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    ctx: Context,
    rules: HashMap<(Letter, Letter), Vec<TailTerm>>,
}

fn is_sorted(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

pub(crate) struct Normalizer<'a> {
    ctx: &'a Context,
    rules: &'a HashMap<(Letter, Letter), Vec<TailTerm>>,
    strategy: Strategy,
    cache: HashMap<Vec<Letter>, PBWElement>,
    steps: usize,
    depth: usize,
}

const MAX_DEPTH: usize = 4096;

impl<'a> Normalizer<'a> {
    fn new(ctx: &'a Context, rules: &'a HashMap<(Letter, Letter), Vec<TailTerm>>, strategy: Strategy) -> Self {
        Normalizer {
            ctx,
            rules,
            strategy,
            cache: HashMap::new(),
            steps: 0,
            depth: 0,
        }
    }

    fn word(&mut self, w: &[Letter]) -> Result<PBWElement> {
        let (p, s) = (self.ctx.p(), self.ctx.s());
        if is_sorted(w) {
            return Ok(PBWElement::monomial(PbwMonomial::from_word(p, w, vec![0; s])));
        }
        if let Some(e) = self.cache.get(w) {
            return Ok(e.clone());
        }
        let pos = match self.strategy {
            Strategy::Leftmost => (0..w.len() - 1).find(|&i| w[i] > w[i + 1]),
            Strategy::Rightmost => (0..w.len() - 1).rev().find(|&i| w[i] > w[i + 1]),
        }
        .expect("unsorted word has a descent");
        let (k, l) = (w[pos], w[pos + 1]);
        let tail = self.rules.get(&(k, l)).ok_or_else(|| Error::CompletionDiverged {
            overlap: self.ctx.pair_name(k as usize, l as usize),
            detail: "no straightening rule available".into(),
        })?;
        self.steps += 1;
        self.ctx.limits.check_steps(self.steps, "normal form")?;
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::CompletionDiverged {
                overlap: self.ctx.pair_name(k as usize, l as usize),
                detail: "rewriting does not terminate".into(),
            });
        }
        let rest = &w[pos + 2..];
        let mut out = PBWElement::zero();
        for t in tail {
            let mut nw: Vec<Letter> = w[..pos].to_vec();
            nw.extend_from_slice(&t.word);
            nw.extend_from_slice(rest);
            let coeff = t.coeff.scale_monomial(&self.ctx.chi_word(rest, &t.gamma));
            let r = self.word(&nw)?.shift(&t.gamma).scale(&coeff);
            out = out.add(&r);
            self.ctx.limits.check_terms(out.len(), "normal form")?;
        }
        self.depth -= 1;
        self.cache.insert(w.to_vec(), out.clone());
        Ok(out)
    }

    pub(crate) fn mul(&mut self, x: &PBWElement, y: &PBWElement) -> Result<PBWElement> {
        let mut out = PBWElement::zero();
        for (m1, c1) in x.terms() {
            let w1 = m1.word();
            for (m2, c2) in y.terms() {
                let mut w = w1.clone();
                w.extend(m2.word());
                let gamma: Vec<i64> = m1.gamma.iter().zip(&m2.gamma).map(|(a, b)| a + b).collect();
                let c = (c1 * c2).scale_monomial(&self.ctx.chi_monomial(m2, &m1.gamma));
                out = out.add(&self.word(&w)?.shift(&gamma).scale(&c));
                self.ctx.limits.check_terms(out.len(), "product")?;
            }
        }
        Ok(out)
    }

    fn words(&mut self, terms: &[(Vec<Letter>, ScalarFraction)]) -> Result<PBWElement> {
        let mut out = PBWElement::zero();
        for (w, c) in terms {
            out = out.add(&self.word(w)?.scale(c));
        }
        Ok(out)
    }
}

/// All non-decreasing words over `range` whose degree is `target`.
fn monomials_of_degree(degrees: &[Vec<i64>], range: std::ops::Range<usize>, target: &[i64]) -> Vec<Vec<Letter>> {
    fn rec(
        degrees: &[Vec<i64>],
        j: usize,
        end: usize,
        left: &mut Vec<i64>,
        cur: &mut Vec<Letter>,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if left.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        if j == end {
            return;
        }
        rec(degrees, j + 1, end, left, cur, out);
        let mut c = 0;
        while left.iter().zip(&degrees[j]).all(|(l, d)| l >= d) {
            for (l, d) in left.iter_mut().zip(&degrees[j]) {
                *l -= d;
            }
            cur.push(j as Letter);
            c += 1;
            rec(degrees, j + 1, end, left, cur, out);
        }
        for _ in 0..c {
            cur.pop();
            for (l, d) in left.iter_mut().zip(&degrees[j]) {
                *l += d;
            }
        }
    }
    let mut out = Vec::new();
    let end = range.end;
    rec(degrees, range.start, end, &mut target.to_vec(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn supported(name: &str, rank: usize, extended: bool) -> bool {
    matches!(name, "A1" | "A2") || (extended && rank <= 3)
}

/// Builds and verifies the straightening rules of `U(𝒟)`.
///
/// Rules inside a component come from solving the straightening identity in
/// the Nichols algebra of that component; rules across components follow
/// from the linking relations and the bracketing of the root vectors. Every
/// overlap `b_k b_l b_m` is then checked to resolve.
pub fn build_rewrite_system(d: &GenericDatum, cfg: &RewriteConfig) -> Result<RewriteSystem> {
    let report = validate_datum(d);
    if !report.is_valid() {
        let codes: Vec<&str> = report.violations.iter().map(|v| v.code).collect();
        return Err(Error::invalid(format!("datum is not valid: {}", codes.join(", "))));
    }
    let roots = RootData::new(d.cartan())?;
    for (name, vertices) in roots.finite_type().parts() {
        if !supported(name, vertices.len(), cfg.extended_types) {
            return Err(Error::Unsupported(format!(
                "component of type {} is outside the supported types{}",
                name,
                if cfg.extended_types { "" } else { " (A1, A2 without the extended flag)" }
            )));
        }
    }
    let q = d.braiding()?;
    let p = roots.num_positive_roots();
    let degrees: Vec<Vec<i64>> = roots.beta().to_vec();
    let heights = roots.heights().to_vec();
    let splits: Vec<Option<(usize, usize)>> = (0..p).map(|j| roots.convex_split(j)).collect();
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by_key(|&j| heights[j]);
    let mut root_vectors = vec![FreeElement::zero(); p];
    for &j in &order {
        root_vectors[j] = match (roots.simple_vertex(j), splits[j]) {
            (Some(v), _) => FreeElement::generator(v),
            (None, Some((l, k))) => braided_commutator(&q, &root_vectors[l], &root_vectors[k]),
            (None, None) => return Err(Error::internal("non-simple root without a convex split")),
        };
    }
    let component: Vec<usize> = degrees
        .iter()
        .map(|b| d.component_of(b.iter().position(|&c| c != 0).expect("nonzero root")))
        .collect();
    let chi_y = degrees
        .iter()
        .map(|b| {
            (0..d.s())
                .map(|h| {
                    let mut y = vec![0; d.s()];
                    y[h] = 1;
                    d.chi_degree_at(b, &y)
                })
                .collect()
        })
        .collect();
    let group = degrees.iter().map(|b| d.group_of_degree(b)).collect();
    let ctx = Context {
        datum: d.clone(),
        roots,
        q,
        root_vectors,
        splits,
        degrees,
        heights,
        component,
        chi_y,
        group,
        limits: cfg.limits,
    };
    let mut rules = HashMap::new();
    component_rules(&ctx, &mut rules)?;
    cross_rules(&ctx, &mut rules)?;
    let sys = RewriteSystem { ctx, rules };
    sys.check_overlaps()?;
    sys.check_relations()?;
    Ok(sys)
}

fn leading_coefficient(ctx: &Context, k: usize, l: usize) -> MonomialScalar {
    ctx.chi_root(k, &ctx.group[l]).inv()
}

fn check_shape(ctx: &Context, k: usize, l: usize, rhs: &PBWElement) -> Result<Vec<TailTerm>> {
    let lead = PbwMonomial::from_word(ctx.p(), &[l as Letter, k as Letter], vec![0; ctx.s()]);
    let want = ScalarFraction::from_monomial(&leading_coefficient(ctx, k, l));
    let diverged = |detail: String| Error::CompletionDiverged {
        overlap: ctx.pair_name(k, l),
        detail,
    };
    if rhs.coeff(&lead) != want {
        return Err(diverged(format!(
            "leading coefficient {} differs from {}",
            rhs.coeff(&lead).fmt_with(ctx.datum.names()),
            want.fmt_with(ctx.datum.names())
        )));
    }
    let top = ctx.heights[k] + ctx.heights[l];
    let mut tail = Vec::new();
    for (m, c) in rhs.terms() {
        let f = ctx.filtration(m);
        let inside = m.exps.iter().enumerate().all(|(j, &e)| e == 0 || (l < j && j < k));
        if m != &lead && !(f < top || (f == top && inside && m.has_trivial_group())) {
            return Err(diverged("tail term is not smaller than the leading term".into()));
        }
        tail.push(TailTerm {
            word: m.word(),
            gamma: m.gamma.clone(),
            coeff: c.clone(),
        });
    }
    Ok(tail)
}

impl PbwMonomial {
    fn has_trivial_group(&self) -> bool {
        self.gamma.iter().all(|&x| x == 0)
    }
}

/// Products of root vectors as elements of the tensor algebra.
fn expand(ctx: &Context, w: &[Letter]) -> FreeElement {
    w.iter()
        .fold(FreeElement::one(), |acc, &j| acc.mul(&ctx.root_vectors[j as usize]))
}

fn component_rules(ctx: &Context, rules: &mut HashMap<(Letter, Letter), Vec<TailTerm>>) -> Result<()> {
    let p = ctx.p();
    let mut sp = Splitter::new(&ctx.q);
    for c in 0..ctx.datum.components().len() {
        let idx: Vec<usize> = (0..p).filter(|&j| ctx.component[j] == c).collect();
        let Some((&lo, &hi)) = idx.first().zip(idx.last()) else { continue };
        for k in lo..=hi {
            for l in lo..k {
                let target_deg: Vec<i64> = ctx.degrees[k].iter().zip(&ctx.degrees[l]).map(|(a, b)| a + b).collect();
                let monos = monomials_of_degree(&ctx.degrees, lo..hi + 1, &target_deg);
                let images: Vec<FreeElement> = monos.iter().map(|w| sp.image(&expand(ctx, w))).collect();
                let target = sp.image(&expand(ctx, &[k as Letter, l as Letter]));
                let mut cols: BTreeMap<Word, usize> = BTreeMap::new();
                for img in images.iter().chain(std::iter::once(&target)) {
                    for (w, _) in img.terms() {
                        let n = cols.len();
                        cols.entry(w.clone()).or_insert(n);
                    }
                }
                let mut m = vec![vec![ScalarFraction::zero(); monos.len()]; cols.len()];
                for (u, img) in images.iter().enumerate() {
                    for (w, c) in img.terms() {
                        m[cols[w]][u] = c.clone();
                    }
                }
                let mut rhs = vec![ScalarFraction::zero(); cols.len()];
                for (w, c) in target.terms() {
                    rhs[cols[w]] = c.clone();
                }
                let diverged = |detail: &str| Error::CompletionDiverged {
                    overlap: ctx.pair_name(k, l),
                    detail: detail.into(),
                };
                if linalg::rank(&m, &ctx.limits)? != monos.len() {
                    return Err(diverged("PBW monomials are linearly dependent"));
                }
                let rho = linalg::solve(&m, &rhs, monos.len(), &ctx.limits)?
                    .ok_or_else(|| diverged("product is not in the span of PBW monomials"))?;
                let mut e = PBWElement::zero();
                for (w, r) in monos.iter().zip(rho) {
                    e.add_term(PbwMonomial::from_word(p, w, vec![0; ctx.s()]), r);
                }
                let tail = check_shape(ctx, k, l, &e)?;
                rules.insert((k as Letter, l as Letter), tail);
            }
        }
    }
    Ok(())
}

fn cross_rules(ctx: &Context, rules: &mut HashMap<(Letter, Letter), Vec<TailTerm>>) -> Result<()> {
    let p = ctx.p();
    let d = &ctx.datum;
    let mut pairs: Vec<(usize, usize)> = (0..p)
        .flat_map(|k| (0..k).map(move |l| (k, l)))
        .filter(|&(k, l)| ctx.component[k] != ctx.component[l])
        .collect();
    pairs.sort_by_key(|&(k, l)| (ctx.heights[k] + ctx.heights[l], k, l));
    for (k, l) in pairs {
        let chi = |a: usize, b: usize| ScalarFraction::from_monomial(&ctx.chi_root(b, &ctx.group[a]));
        let lt = |j: usize| j as Letter;
        let rhs = if let Some((l1, k1)) = ctx.splits[k] {
            let c = chi(l1, k1);
            let terms = vec![(vec![lt(l1), lt(k1), lt(l)], ScalarFraction::one()), (vec![lt(k1), lt(l1), lt(l)], -&c)];
            Normalizer::new(ctx, rules, Strategy::Leftmost).words(&terms)?
        } else if let Some((l2, k2)) = ctx.splits[l] {
            let c = chi(l2, k2);
            let terms = vec![(vec![lt(k), lt(l2), lt(k2)], ScalarFraction::one()), (vec![lt(k), lt(k2), lt(l2)], -&c)];
            Normalizer::new(ctx, rules, Strategy::Leftmost).words(&terms)?
        } else {
            let u = ctx.roots.simple_vertex(k).expect("simple");
            let v = ctx.roots.simple_vertex(l).expect("simple");
            let (i, j) = (u.min(v), u.max(v));
            let lam = d.lambda(i, j).cloned().unwrap_or_else(ScalarFraction::zero);
            let zero = vec![0; ctx.s()];
            let gij: Vec<i64> = d.g(i).iter().zip(d.g(j)).map(|(a, b)| a + b).collect();
            let swap = PbwMonomial::from_word(p, &[lt(l), lt(k)], zero.clone());
            let unit = PbwMonomial::group(p, zero);
            let glike = PbwMonomial::group(p, gij);
            let mut e = PBWElement::zero();
            let cji = ScalarFraction::from_monomial(&d.chi_at(j, d.g(i)));
            if u > v {
                // a_j a_i = χ_j(g_i)^{-1} (a_i a_j - λ (1 - g_i g_j))
                let inv = cji.inv()?;
                e.add_term(swap, inv.clone());
                e.add_term(unit, -&(&lam * &inv));
                e.add_term(glike, &lam * &inv);
            } else {
                // a_i a_j = χ_j(g_i) a_j a_i + λ (1 - g_i g_j)
                e.add_term(swap, cji);
                e.add_term(unit, lam.clone());
                e.add_term(glike, -&lam);
            }
            e
        };
        let tail = check_shape(ctx, k, l, &rhs)?;
        rules.insert((k as Letter, l as Letter), tail);
    }
    Ok(())
}

impl RewriteSystem {
    pub fn datum(&self) -> &GenericDatum {
        &self.ctx.datum
    }

    pub fn root_data(&self) -> &RootData {
        &self.ctx.roots
    }

    /// The braiding `q_ij = χ_j(g_i)`.
    pub fn braiding(&self) -> &BraidingMatrix {
        &self.ctx.q
    }

    pub fn limits(&self) -> &Limits {
        &self.ctx.limits
    }

    /// Number `P` of root vectors.
    pub fn num_root_vectors(&self) -> usize {
        self.ctx.p()
    }

    /// `b_j` as an element of the tensor algebra in the `a_i`.
    pub fn root_vector(&self, j: usize) -> &FreeElement {
        &self.ctx.root_vectors[j]
    }

    /// `(l, k)` with `b_j = [b_l, b_k]_c`, for non-simple `β_j`.
    pub fn bracketing(&self, j: usize) -> Option<(usize, usize)> {
        self.ctx.splits[j]
    }

    pub fn heights(&self) -> &[i64] {
        &self.ctx.heights
    }

    /// `a<i>` for simple root vectors, `b<j>` otherwise (one-based).
    pub fn label(&self, j: usize) -> String {
        self.ctx.label(j)
    }

    /// Bracketing of `b_j` in terms of labels, e.g. `[a1, a2]`.
    pub fn bracket_string(&self, j: usize) -> String {
        match self.ctx.splits[j] {
            None => self.label(j),
            Some((l, k)) => format!("[{}, {}]", self.bracket_string(l), self.bracket_string(k)),
        }
    }

    /// The rules `b_k b_l → ...`, sorted by `(k, l)`.
    pub fn rules(&self) -> Vec<Rule> {
        let mut out: Vec<Rule> = self
            .rules
            .iter()
            .map(|(&(k, l), tail)| {
                let mut rhs = PBWElement::zero();
                for t in tail {
                    rhs.add_term(PbwMonomial::from_word(self.ctx.p(), &t.word, t.gamma.clone()), t.coeff.clone());
                }
                Rule {
                    k: k as usize,
                    l: l as usize,
                    rhs,
                }
            })
            .collect();
        out.sort_by_key(|r| (r.k, r.l));
        out
    }

    pub(crate) fn normalizer(&self, strategy: Strategy) -> Normalizer<'_> {
        Normalizer::new(&self.ctx, &self.rules, strategy)
    }

    pub fn one(&self) -> PBWElement {
        PBWElement::scalar(self.ctx.p(), self.ctx.s(), ScalarFraction::one())
    }

    pub fn scalar(&self, c: ScalarFraction) -> PBWElement {
        PBWElement::scalar(self.ctx.p(), self.ctx.s(), c)
    }

    /// The generator `a_i`.
    pub fn generator(&self, i: usize) -> PBWElement {
        self.root_vector_element(self.ctx.roots.simple_index(i))
    }

    pub fn root_vector_element(&self, j: usize) -> PBWElement {
        PBWElement::monomial(PbwMonomial::from_word(self.ctx.p(), &[j as Letter], vec![0; self.ctx.s()]))
    }

    /// The group-like `y^γ`.
    pub fn group_element(&self, gamma: Vec<i64>) -> PBWElement {
        PBWElement::monomial(PbwMonomial::group(self.ctx.p(), gamma))
    }

    /// The group-like `g_i`.
    pub fn g(&self, i: usize) -> PBWElement {
        self.group_element(self.ctx.datum.g(i).to_vec())
    }

    pub fn multiply(&self, x: &PBWElement, y: &PBWElement) -> Result<PBWElement> {
        self.normalizer(Strategy::Leftmost).mul(x, y)
    }

    pub fn multiply_with(&self, x: &PBWElement, y: &PBWElement, strategy: Strategy) -> Result<PBWElement> {
        self.normalizer(strategy).mul(x, y)
    }

    /// Normal form of a word of root vectors `b_{w_1} ... b_{w_r}`.
    pub fn normalize_word(&self, w: &[usize], strategy: Strategy) -> Result<PBWElement> {
        let w: Vec<Letter> = w.iter().map(|&j| j as Letter).collect();
        self.normalizer(strategy).word(&w)
    }

    /// Image of a linear combination of words in the `a_i`.
    pub fn eval_free(&self, x: &FreeElement) -> Result<PBWElement> {
        let terms: Vec<(Vec<Letter>, ScalarFraction)> = x
            .terms()
            .map(|(w, c)| {
                let lw = w.iter().map(|&v| self.ctx.roots.simple_index(v as usize) as Letter).collect();
                (lw, c.clone())
            })
            .collect();
        self.normalizer(Strategy::Leftmost).words(&terms)
    }

    /// Filtration degree `Σ c_j ht(β_j)` of a PBW monomial.
    pub fn monomial_filtration(&self, m: &PbwMonomial) -> i64 {
        self.ctx.filtration(m)
    }

    /// `χ_{deg m}(y^γ)`.
    pub fn chi_monomial(&self, m: &PbwMonomial, gamma: &[i64]) -> MonomialScalar {
        self.ctx.chi_monomial(m, gamma)
    }

    /// Degree in `ℕ^θ` of a PBW monomial.
    pub fn monomial_degree(&self, m: &PbwMonomial) -> Vec<i64> {
        let mut out = vec![0; self.ctx.datum.theta()];
        for (j, &c) in m.exps.iter().enumerate() {
            for (o, &b) in out.iter_mut().zip(&self.ctx.degrees[j]) {
                *o += c as i64 * b;
            }
        }
        out
    }

    /// Word expansion of a PBW monomial (without its group part) in `T(V)`.
    pub fn expand_monomial(&self, m: &PbwMonomial) -> FreeElement {
        expand(&self.ctx, &m.word())
    }

    /// PBW monomials (with trivial group part) of filtration degree `n`.
    pub fn monomials_of_filtration(&self, n: i64) -> Vec<PbwMonomial> {
        fn rec(h: &[i64], j: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if j == h.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut c = 0u32;
            while c as i64 * h[j] <= left {
                cur[j] = c;
                rec(h, j + 1, left - c as i64 * h[j], cur, out);
                c += 1;
            }
            cur[j] = 0;
        }
        let mut out = Vec::new();
        rec(&self.ctx.heights, 0, n, &mut vec![0; self.ctx.p()], &mut out);
        let mut ms: Vec<PbwMonomial> = out
            .into_iter()
            .map(|exps| PbwMonomial {
                exps,
                gamma: vec![0; self.ctx.s()],
            })
            .collect();
        ms.sort();
        ms
    }

    /// Checks that every overlap `b_k b_l b_m` with `k > l > m` reduces to
    /// the same normal form under both strategies.
    pub fn check_overlaps(&self) -> Result<()> {
        let p = self.ctx.p();
        let mut left = self.normalizer(Strategy::Leftmost);
        let mut right = self.normalizer(Strategy::Rightmost);
        for k in 0..p {
            for l in 0..k {
                for m in 0..l {
                    let w = [k as Letter, l as Letter, m as Letter];
                    if left.word(&w)? != right.word(&w)? {
                        return Err(Error::CompletionDiverged {
                            overlap: format!("{}*{}*{}", self.label(k), self.label(l), self.label(m)),
                            detail: "overlap does not resolve".into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The defining relations of `U(𝒟)` that involve the `a_i`, as
    /// `(name, element of T(V), group-like correction)`; each must vanish.
    pub fn relations(&self) -> Result<Vec<(String, PBWElement)>> {
        let d = &self.ctx.datum;
        let theta = d.theta();
        let a = d.cartan();
        let mut out = Vec::new();
        for i in 0..theta {
            for j in 0..theta {
                if i != j && a.components().connected(i, j) {
                    let r = (1 - a.get(i, j)) as usize;
                    let s = serre_formula(&self.ctx.q, i, j, r)?;
                    out.push((format!("serre({}, {})", i + 1, j + 1), self.eval_free(&s)?));
                }
            }
        }
        for i in 0..theta {
            for j in i + 1..theta {
                if a.components().connected(i, j) {
                    continue;
                }
                let lhs = self.eval_free(&FreeElement::word(vec![i as u8, j as u8]))?.sub(
                    &self
                        .eval_free(&FreeElement::word(vec![j as u8, i as u8]))?
                        .scale_monomial(&d.chi_at(j, d.g(i))),
                );
                let lam = d.lambda(i, j).cloned().unwrap_or_else(ScalarFraction::zero);
                let gij: Vec<i64> = d.g(i).iter().zip(d.g(j)).map(|(x, y)| x + y).collect();
                let rhs = self.one().sub(&self.group_element(gij)).scale(&lam);
                out.push((format!("link({}, {})", i + 1, j + 1), lhs.sub(&rhs)));
            }
        }
        Ok(out)
    }

    fn check_relations(&self) -> Result<()> {
        for (name, r) in self.relations()? {
            if !r.is_zero() {
                return Err(Error::CompletionDiverged {
                    overlap: name,
                    detail: "defining relation does not reduce to zero".into(),
                });
            }
        }
        Ok(())
    }

    /// Renders an element with terms ordered by filtration degree, then PBW
    /// exponents (both descending), then group part.
    pub fn render(&self, x: &PBWElement) -> String {
        let mut terms: Vec<(&PbwMonomial, &ScalarFraction)> = x.terms().collect();
        terms.sort_by(|(a, _), (b, _)| {
            self.ctx
                .filtration(b)
                .cmp(&self.ctx.filtration(a))
                .then_with(|| b.exps.cmp(&a.exps))
                .then_with(|| a.gamma.cmp(&b.gamma))
        });
        fmt_linear_combination(
            terms.into_iter().map(|(m, c)| (c, self.render_monomial(m))),
            self.ctx.datum.names(),
        )
    }

    /// `a1*b2^2*y1^-1`; the unit renders as the empty string.
    pub fn render_monomial(&self, m: &PbwMonomial) -> String {
        let mut parts = Vec::new();
        for (j, &c) in m.exps.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(self.label(j)),
                _ => parts.push(format!("{}^{}", self.label(j), c)),
            }
        }
        for (h, &e) in m.gamma.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("y{}", h + 1)),
                _ => parts.push(format!("y{}^{}", h + 1, e)),
            }
        }
        parts.join("*")
    }
}
