use thiserror::Error as ThisError;

use super::cartan::{detect_cartan, CartanMatrix, FiniteType, NotCartan, NotFinite};
use super::{BraidingMatrix, ComponentPartition};
use crate::error::{Error, Result};
use crate::rootsys::RootData;
use crate::scalars::MonomialScalar;

/// Result of twisting a braiding to a symmetric one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    /// `q̂` with `q̂_ii = q_ii` and `q̂_ij = q̂_ji = (q_ij q_ji)^{1/2}`.
    pub symmetric: BraidingMatrix,
    /// The bicharacter `σ(g_i, g_j) = q̂_ij q_ij^{-1}` for `i <= j`, 1 otherwise.
    pub sigma: Vec<Vec<MonomialScalar>>,
}

/// Twists `q` by a group 2-cocycle into the symmetric braiding with the same
/// `q_ii` and the same products `q_ij q_ji`.
pub fn twist_to_symmetric(q: &BraidingMatrix) -> Result<Twist> {
    let n = q.theta();
    let mut hat = q.rows().to_vec();
    let mut sigma = vec![vec![MonomialScalar::one(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let p = q.product(i, j);
            let r = p.sqrt().ok_or_else(|| {
                Error::NeedsFieldExtension(format!(
                    "q_{0}{1} q_{1}{0} = {2} has no square root over the rationals",
                    i + 1,
                    j + 1,
                    p
                ))
            })?;
            sigma[i][j] = r.mul(&q.get(i, j).inv());
            hat[i][j] = r.clone();
            hat[j][i] = r;
        }
    }
    Ok(Twist {
        symmetric: BraidingMatrix::new(hat)?,
        sigma,
    })
}

/// Drinfeld-Jimbo data of one connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DJComponent {
    pub vertices: Vec<usize>,
    /// `d_i` for the vertices of the component, in the same order.
    pub d: Vec<i64>,
    /// `q_I` with `q_ii = q_I^{d_i}` and `q_ij q_ji = q_I^{d_i a_ij}`.
    pub q_i: MonomialScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DJPresentation {
    pub components: Vec<DJComponent>,
    /// The full symmetrizer `d`, indexed by vertex.
    pub d: Vec<i64>,
    /// The symmetric DJ matrix `q̂_ij = q_I^{d_i a_ij / 2}`, when its square
    /// roots exist over the rationals.
    pub matrix: Option<BraidingMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum NotDJ {
    #[error("not of Cartan type: {0}")]
    NotCartan(NotCartan),
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("no q_I with q_ii = q_I^(d_i) on component {vertices:?}")]
    NoBase { vertices: Vec<usize> },
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Finds `q_I` per component with `q_ii = q_I^{d_i}`.
///
/// With `gcd(d_i) = 1` a Bezout combination `Σ c_i d_i = 1` gives the only
/// candidate `q_I = Π q_ii^{c_i}` in the torsion-free part, so no root
/// extraction is needed; a candidate is accepted only if it reproduces every
/// diagonal entry exactly, signs included.
pub fn dj_normal_form(q: &BraidingMatrix) -> std::result::Result<DJPresentation, NotDJ> {
    let a = detect_cartan(q).map_err(NotDJ::NotCartan)?;
    let d = a.symmetrize().map_err(|_| NotDJ::NotSymmetrizable)?;
    let comps = a.components();
    let mut components = Vec::new();
    for block in comps.blocks() {
        let (mut g, mut acc) = (0i64, MonomialScalar::one());
        for &v in block {
            let (g2, x, y) = ext_gcd(g, d[v]);
            acc = acc.pow(x).mul(&q.get(v, v).pow(y));
            g = g2;
        }
        if g != 1 || block.iter().any(|&v| &acc.pow(d[v]) != q.get(v, v)) {
            return Err(NotDJ::NoBase {
                vertices: block.iter().map(|v| v + 1).collect(),
            });
        }
        components.push(DJComponent {
            vertices: block.clone(),
            d: block.iter().map(|&v| d[v]).collect(),
            q_i: acc,
        });
    }
    let matrix = dj_matrix(&a, &d, &comps, &components);
    Ok(DJPresentation { components, d, matrix })
}

fn dj_matrix(a: &CartanMatrix, d: &[i64], comps: &ComponentPartition, parts: &[DJComponent]) -> Option<BraidingMatrix> {
    let n = a.rank();
    let mut m = vec![vec![MonomialScalar::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if comps.connected(i, j) {
                let qi = &parts[comps.block_of(i)].q_i;
                m[i][j] = qi.pow(d[i] * a.get(i, j)).sqrt()?;
            }
        }
    }
    BraidingMatrix::new(m).ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteReason {
    /// Generic but not of Cartan type.
    NotCartan(NotCartan),
    /// DJ type with a Cartan matrix that is not of finite type.
    NotFinite(NotFinite),
}

/// Verdict for one connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentVerdict {
    Finite { type_name: String, gk: usize },
    Infinite(NotFinite),
    /// Cartan type but not twist-equivalent to DJ type; left open.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    FiniteGK { gk: usize },
    InfiniteGK(InfiniteReason),
    Unknown { reason: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::FiniteGK { .. } => "FiniteGK",
            Verdict::InfiniteGK(_) => "InfiniteGK",
            Verdict::Unknown { .. } => "Unknown",
        }
    }
}

/// Full analysis of a generic diagonal braiding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub generic: bool,
    pub positive: bool,
    pub components: ComponentPartition,
    pub cartan: std::result::Result<CartanMatrix, NotCartan>,
    pub d: Option<Vec<i64>>,
    pub finite_type: Option<std::result::Result<FiniteType, NotFinite>>,
    pub dj: Option<std::result::Result<DJPresentation, NotDJ>>,
    pub per_component: Vec<ComponentVerdict>,
    pub verdict: Verdict,
}

/// Decides finiteness of the Gelfand-Kirillov dimension of the Nichols
/// algebra of a generic braiding, when the theory allows it.
///
/// Generic braidings that are not of Cartan type have infinite GK dimension.
/// For braidings twist-equivalent to DJ type the dimension is finite exactly
/// when the Cartan matrix is of finite type, and then equals the number of
/// positive roots. Generic Cartan braidings that are not twist-equivalent to
/// DJ type are reported as unknown.
pub fn classify(q: &BraidingMatrix) -> Result<Classification> {
    if !q.is_generic() {
        let i = (0..q.theta()).find(|&i| q.get(i, i).is_root_of_unity()).unwrap_or(0);
        return Err(Error::OutOfScope(format!(
            "q_{0}{0} = {1} is a root of unity; only generic braidings are supported",
            i + 1,
            q.get(i, i)
        )));
    }
    let components = q.components();
    let positive = q.is_positive();
    let a = match detect_cartan(q) {
        Ok(a) => a,
        Err(nc) => {
            return Ok(Classification {
                generic: true,
                positive,
                components,
                cartan: Err(nc.clone()),
                d: None,
                finite_type: None,
                dj: None,
                per_component: Vec::new(),
                verdict: Verdict::InfiniteGK(InfiniteReason::NotCartan(nc)),
            })
        }
    };
    let d = a.symmetrize().ok();
    let finite_type = a.finite_type();
    let dj = dj_normal_form(q);

    let mut per_component = Vec::new();
    for block in components.blocks() {
        let sub_q = BraidingMatrix::new(block.iter().map(|&i| block.iter().map(|&j| q.get(i, j).clone()).collect()).collect())?;
        let sub_a = a.restrict(block);
        let sub_dj = dj_normal_form(&sub_q).is_ok();
        let verdict = match (sub_dj, sub_a.finite_type()) {
            (true, Ok(ft)) => {
                let p = RootData::new(&sub_a)?.num_positive_roots();
                ComponentVerdict::Finite {
                    type_name: ft.name(),
                    gk: p,
                }
            }
            (true, Err(nf)) => ComponentVerdict::Infinite(nf),
            (false, _) => ComponentVerdict::Unknown,
        };
        per_component.push(verdict);
    }

    let verdict = if let Some(nf) = per_component.iter().find_map(|v| match v {
        ComponentVerdict::Infinite(nf) => Some(nf.clone()),
        _ => None,
    }) {
        Verdict::InfiniteGK(InfiniteReason::NotFinite(nf))
    } else if per_component.iter().any(|v| matches!(v, ComponentVerdict::Unknown)) {
        Verdict::Unknown {
            reason: "Cartan type but not twist-equivalent to DJ type; the finite-GK criterion does not extend to this case"
                .into(),
        }
    } else {
        Verdict::FiniteGK {
            gk: per_component
                .iter()
                .map(|v| match v {
                    ComponentVerdict::Finite { gk, .. } => *gk,
                    _ => 0,
                })
                .sum(),
        }
    };

    Ok(Classification {
        generic: true,
        positive,
        components,
        cartan: Ok(a),
        d,
        finite_type: Some(finite_type),
        dj: Some(dj),
        per_component,
        verdict,
    })
}
