use super::datum::GenericDatum;
use super::expr::Expr;
use super::rewrite::RewriteSystem;
use crate::braiding::CartanMatrix;
use crate::error::Result;
use crate::freealg::{serre_formula, FreeElement};
use crate::scalars::{MonomialScalar, ScalarFraction};

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    /// The diagonal of `D`, of length `min(rows, cols)`.
    pub diag: Vec<i64>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);
    let row_add = |mat: &mut Vec<Vec<i64>>, dst: usize, src: usize, f: i64| {
        let (s, t) = (mat[src].clone(), &mut mat[dst]);
        for (x, y) in t.iter_mut().zip(s) {
            *x += f * y;
        }
    };
    let col_add = |mat: &mut Vec<Vec<i64>>, dst: usize, src: usize, f: i64| {
        for row in mat.iter_mut() {
            row[dst] += f * row[src];
        }
    };
    let col_swap = |mat: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
    };
    for t in 0..m.min(n) {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| d[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut d, t, pj);
            col_swap(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..m {
                let f = d[i][t] / d[t][t];
                if f != 0 {
                    row_add(&mut d, i, t, -f);
                    row_add(&mut u, i, t, -f);
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let f = d[t][j] / d[t][t];
                if f != 0 {
                    col_add(&mut d, j, t, -f);
                    col_add(&mut v, j, t, -f);
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % d[t][t] != 0));
            match bad {
                Some(i) => {
                    row_add(&mut d, t, i, 1);
                    row_add(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if t < m && t < n && d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diag = (0..m.min(n)).map(|t| d[t][t]).collect();
    Smith { u, v, diag }
}

/// Integer solutions of `A x = b`: a particular solution and a kernel basis.
pub fn solve_integer(a: &[Vec<i64>], cols: usize, b: &[i64]) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
    let sm = smith_normal_form(a, cols);
    let ub: Vec<i64> = sm.u.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect();
    let r = sm.diag.iter().take_while(|&&x| x != 0).count();
    let mut y = vec![0; cols];
    for i in 0..ub.len() {
        if i < r {
            if ub[i] % sm.diag[i] != 0 {
                return None;
            }
            y[i] = ub[i] / sm.diag[i];
        } else if ub[i] != 0 {
            return None;
        }
    }
    let apply = |y: &[i64]| -> Vec<i64> { sm.v.iter().map(|row| row.iter().zip(y).map(|(x, z)| x * z).sum()).collect() };
    let x = apply(&y);
    let kernel = (r..cols)
        .map(|k| (0..cols).map(|i| sm.v[i][k]).collect())
        .collect();
    Some((x, kernel))
}

fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// Permutations `σ` with `a'_{σ(i)σ(j)} = a_ij`.
pub fn diagram_isomorphisms(a: &CartanMatrix, b: &CartanMatrix) -> Vec<Vec<usize>> {
    fn rec(a: &CartanMatrix, b: &CartanMatrix, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == a.rank() {
            out.push(cur.clone());
            return;
        }
        for t in 0..b.rank() {
            if used[t] {
                continue;
            }
            let ok = b.get(t, t) == a.get(i, i)
                && (0..i).all(|j| b.get(t, cur[j]) == a.get(i, j) && b.get(cur[j], t) == a.get(j, i));
            if ok {
                used[t] = true;
                cur.push(t);
                rec(a, b, cur, used, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    if a.rank() != b.rank() {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(a, b, &mut Vec::new(), &mut vec![false; b.rank()], &mut out);
    out
}

/// `(φ, σ, α)`: `φ(Y_h) = Σ_k phi[k][h] Y_k`, `a_i ↦ α_i a'_{σ(i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumIsomorphism {
    pub phi: Vec<Vec<i64>>,
    pub sigma: Vec<usize>,
    pub alpha: Vec<ScalarFraction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsomorphismSearch {
    /// Every isomorphism within the bound; empty when there is none.
    Found(Vec<DatumIsomorphism>),
    Undecided { reason: String },
}

#[derive(Clone, Debug)]
pub struct IsomConfig {
    /// Free lattice coordinates range over `[-bound, bound]`.
    pub bound: i64,
    pub max_candidates: usize,
}

impl Default for IsomConfig {
    fn default() -> Self {
        IsomConfig {
            bound: 3,
            max_candidates: 100_000,
        }
    }
}

fn phi_preserves_characters(d: &GenericDatum, d2: &GenericDatum, sigma: &[usize], phi: &[Vec<i64>]) -> bool {
    let s = d.s();
    (0..d.theta()).all(|i| {
        (0..s).all(|h| {
            let image: Vec<i64> = (0..s).map(|k| phi[k][h]).collect();
            d.chi(i)[h] == d2.chi_at(sigma[i], &image)
        })
    })
}

fn solve_alpha(d: &GenericDatum, d2: &GenericDatum, sigma: &[usize]) -> Option<Vec<ScalarFraction>> {
    let theta = d.theta();
    let mut alpha = vec![ScalarFraction::one(); theta];
    let comps = d.cartan().components();
    for i in 0..theta {
        for j in i + 1..theta {
            if comps.connected(i, j) {
                continue;
            }
            let (si, sj) = (sigma[i], sigma[j]);
            let (other, factor) = if si < sj {
                (d2.lambda(si, sj), ScalarFraction::one())
            } else {
                let c = d.chi_at(j, d.g(i));
                (d2.lambda(sj, si), -ScalarFraction::from_monomial(&c))
            };
            match (d.lambda(i, j), other) {
                (None, None) => {}
                (Some(l), Some(l2)) => {
                    alpha[j] = l.checked_div(&(&factor * l2)).ok()?;
                }
                _ => return None,
            }
        }
    }
    Some(alpha)
}

/// Isomorphisms `𝒟 → 𝒟'` with free lattice coordinates within the bound.
pub fn datum_isomorphisms(d: &GenericDatum, d2: &GenericDatum, cfg: &IsomConfig) -> IsomorphismSearch {
    let s = d.s();
    if d.theta() != d2.theta() || s != d2.s() {
        return IsomorphismSearch::Found(Vec::new());
    }
    let theta = d.theta();
    let a: Vec<Vec<i64>> = (0..theta).map(|i| d.g(i).to_vec()).collect();
    let mut found = Vec::new();
    for sigma in diagram_isomorphisms(d.cartan(), d2.cartan()) {
        let mut particular = Vec::with_capacity(s);
        let mut kernel = Vec::new();
        let mut feasible = true;
        for r in 0..s {
            let b: Vec<i64> = (0..theta).map(|i| d2.g(sigma[i])[r]).collect();
            match solve_integer(&a, s, &b) {
                Some((x, k)) => {
                    particular.push(x);
                    kernel = k;
                }
                None => {
                    feasible = false;
                    break;
                }
            }
        }
        if !feasible {
            continue;
        }
        let free = s * kernel.len();
        let side = (2 * cfg.bound + 1) as f64;
        if side.powi(free as i32) > cfg.max_candidates as f64 {
            return IsomorphismSearch::Undecided {
                reason: format!("{} free lattice coordinates exceed the search bound", free),
            };
        }
        let Some(alpha) = solve_alpha(d, d2, &sigma) else { continue };
        let mut coords = vec![-cfg.bound; free];
        loop {
            let mut phi = particular.clone();
            for r in 0..s {
                for (k, kv) in kernel.iter().enumerate() {
                    let t = coords[r * kernel.len() + k];
                    for (x, &y) in phi[r].iter_mut().zip(kv) {
                        *x += t * y;
                    }
                }
            }
            if det(&phi).abs() == 1 && phi_preserves_characters(d, d2, &sigma, &phi) {
                found.push(DatumIsomorphism {
                    phi,
                    sigma: sigma.clone(),
                    alpha: alpha.clone(),
                });
            }
            let mut idx = 0;
            while idx < free && coords[idx] == cfg.bound {
                coords[idx] = -cfg.bound;
                idx += 1;
            }
            if idx == free {
                break;
            }
            coords[idx] += 1;
        }
    }
    IsomorphismSearch::Found(found)
}

fn free_to_expr(x: &FreeElement) -> Expr {
    x.terms().fold(Expr::Scalar(ScalarFraction::zero()), |acc, (w, c)| {
        let word = w
            .iter()
            .fold(Expr::Scalar(c.clone()), |e, &v| e * Expr::A(v as usize));
        acc + word
    })
}

/// The defining relations of `U(𝒟)` other than those among the `y_h`.
pub fn relation_exprs(d: &GenericDatum) -> Result<Vec<(String, Expr)>> {
    let q = d.braiding()?;
    let a = d.cartan();
    let comps = a.components();
    let theta = d.theta();
    let mut out = Vec::new();
    for h in 0..d.s() {
        for j in 0..theta {
            let conj = Expr::Y(h) * Expr::A(j) * Expr::Y(h).pow(-1);
            let rhs = Expr::monomial(&d.chi(j)[h]) * Expr::A(j);
            out.push((format!("y{} a{}", h + 1, j + 1), conj - rhs));
        }
    }
    for i in 0..theta {
        for j in 0..theta {
            if i != j && comps.connected(i, j) {
                let r = (1 - a.get(i, j)) as usize;
                out.push((format!("serre({}, {})", i + 1, j + 1), free_to_expr(&serre_formula(&q, i, j, r)?)));
            }
        }
    }
    for i in 0..theta {
        for j in i + 1..theta {
            if comps.connected(i, j) {
                continue;
            }
            let lhs = Expr::A(i) * Expr::A(j) - Expr::monomial(&d.chi_at(j, d.g(i))) * Expr::A(j) * Expr::A(i);
            let lam = d.lambda(i, j).cloned().unwrap_or_else(ScalarFraction::zero);
            let gij: Vec<i64> = d.g(i).iter().zip(d.g(j)).map(|(x, y)| x + y).collect();
            let rhs = Expr::Scalar(lam) * (Expr::Scalar(ScalarFraction::one()) - Expr::group(&gij));
            out.push((format!("link({}, {})", i + 1, j + 1), lhs - rhs));
        }
    }
    Ok(out)
}

/// Transports every defining relation of `𝒟` along `iso` and checks that it
/// vanishes in `U(𝒟')`. Returns the names of relations that fail.
pub fn check_isomorphism(d: &GenericDatum, target: &RewriteSystem, iso: &DatumIsomorphism) -> Result<Vec<String>> {
    let s = d.s();
    let a_map = |i: usize| Expr::Scalar(iso.alpha[i].clone()) * Expr::A(iso.sigma[i]);
    let y_map = |h: usize| {
        let col: Vec<i64> = (0..s).map(|k| iso.phi[k][h]).collect();
        Expr::group(&col)
    };
    let mut failed = Vec::new();
    for (name, rel) in relation_exprs(d)? {
        if !target.eval(&rel.substitute(&a_map, &y_map))?.is_zero() {
            failed.push(name);
        }
    }
    Ok(failed)
}

/// Monomial `χ(φ(Y_h))` helper for callers that render isomorphisms.
pub fn transported_character(d2: &GenericDatum, i: usize, phi: &[Vec<i64>], h: usize) -> MonomialScalar {
    let col: Vec<i64> = (0..d2.s()).map(|k| phi[k][h]).collect();
    d2.chi_at(i, &col)
}
