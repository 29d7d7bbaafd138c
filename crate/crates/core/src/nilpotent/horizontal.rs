//! Horizontality of the `sl(2)` through a nilpotent, by root degrees and by
//! the Hodge degree of `X₊`, and the decomposition of `Y` along Σ.

use crate::algebra::{int, Matrix, Rational, Scalar, Subspace, Vector};
use crate::error::{Error, Result};
use crate::lie::{cayley_element, restricted_id, CayleyTransform, Structure};

use super::triple::Sl2Triple;

fn negate(c: &[i64]) -> Vec<i64> {
    c.iter().map(|x| -x).collect()
}

fn parse_id(id: &str) -> Option<Vec<i64>> {
    let inner = id.strip_prefix("q:(")?.strip_suffix(')')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

/// `N = Σ a_α N_{−α}` from coefficients keyed by restricted-root ids. A root
/// of multiplicity `k` takes `k` coefficients against the rational basis of
/// `g_{−α}`; multiplicity one also accepts a single value.
pub fn nilpotent_from_coefficients(st: &Structure, coeffs: &[(String, Vec<Rational>)]) -> Result<Matrix> {
    let n = st.sys.reference.dim();
    let mut acc = Matrix::zeros(n, n);
    for (id, a) in coeffs {
        let alpha = parse_id(id).ok_or_else(|| Error::UnknownRoot(id.clone()))?;
        st.restricted.root(&alpha).ok_or_else(|| Error::UnknownRoot(id.clone()))?;
        let target = st.restricted.root(&negate(&alpha)).ok_or_else(|| Error::UnknownRoot(id.clone()))?;
        if a.len() != target.rational_vectors.len() {
            return Err(Error::DecompositionUnavailable);
        }
        for (x, v) in a.iter().zip(&target.rational_vectors) {
            acc = &acc + &v.scale_rational(x);
        }
    }
    Ok(acc)
}

/// Coefficients of `N` against the rational restricted root vectors, keyed by
/// `α` for the component along `N_{−α}`. Fails when `N` has a component in
/// the centralizer of `a`.
pub fn restricted_coefficients(st: &Structure, n: &Matrix) -> Result<Vec<(Vec<i64>, Vec<Rational>)>> {
    let alg = &st.sys.algebra;
    let target = alg.coords(n)?;
    let zero_space = alg.centralizer(&st.restricted.cartan);
    let mut cols: Vec<Vector> = zero_space.basis().to_vec();
    let mut owners: Vec<Option<usize>> = vec![None; cols.len()];
    for (k, r) in st.restricted.roots.iter().enumerate() {
        for v in &r.rational_vectors {
            cols.push(alg.coords(v)?);
            owners.push(Some(k));
        }
    }
    let sol = Matrix::from_columns(alg.dim(), &cols).solve(&target).ok_or(Error::DecompositionUnavailable)?;
    let mut out: Vec<(Vec<i64>, Vec<Rational>)> = Vec::new();
    for (k, r) in st.restricted.roots.iter().enumerate() {
        let a: Vec<Rational> = owners
            .iter()
            .zip(&sol)
            .filter(|(o, _)| **o == Some(k))
            .map(|(_, x)| x.as_rational().ok_or(Error::DecompositionUnavailable))
            .collect::<Result<_>>()?;
        if a.iter().any(|x| *x != int(0)) {
            out.push((negate(&r.coords), a));
        }
    }
    let in_zero = owners.iter().zip(&sol).any(|(o, x)| o.is_none() && !x.is_zero());
    if in_zero {
        return Err(Error::DecompositionUnavailable);
    }
    Ok(out)
}

/// A complex root space met by `Ad(C) N`, recorded through the root `β` with
/// `Ad(C)N` having a component along `X_{−β}`.
#[derive(Clone, Debug)]
pub struct Contribution {
    pub root: Vec<i64>,
    pub degree: i64,
    pub restricted: Vec<i64>,
    /// `res(β) ∈ Δ^{−1}_Q`.
    pub in_degree_minus_one: bool,
}

#[derive(Clone, Debug)]
pub struct HorizontalityReport {
    pub contributions: Vec<Contribution>,
    pub root_criterion: bool,
    /// `X₊ = ½(N₊ + N) + (i/2) Y`.
    pub x_plus: Matrix,
    /// Hodge degrees in which `X₊` has a nonzero component.
    pub x_plus_degrees: Vec<i64>,
    pub direct_criterion: bool,
}

impl HorizontalityReport {
    pub fn agree(&self) -> bool {
        self.root_criterion == self.direct_criterion
    }

    pub fn horizontal(&self) -> bool {
        self.root_criterion && self.direct_criterion
    }
}

pub fn horizontality_check(st: &Structure, triple: &Sl2Triple) -> Result<HorizontalityReport> {
    let sys = &st.sys;
    let w = &sys.reference.weights;
    let moved = &(&sys.weight_basis_inv * &st.cayley.ad(&triple.n)) * &sys.weight_basis;
    let mut roots: Vec<Vec<i64>> = Vec::new();
    for b in 0..w.len() {
        for a in 0..w.len() {
            if moved[(b, a)].is_zero() {
                continue;
            }
            let r: Vec<i64> = w[b].coords.iter().zip(&w[a].coords).map(|(x, y)| x - y).collect();
            if r.iter().all(|&x| x == 0) {
                return Err(Error::DecompositionUnavailable);
            }
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.sort();
    let minus_one: Vec<&[i64]> = st.restricted.degree_set(-1).iter().map(|r| r.coords.as_slice()).collect();
    let contributions = roots
        .iter()
        .map(|r| {
            let beta = negate(r);
            let datum = sys.root(&beta).ok_or(Error::DecompositionUnavailable)?;
            let restricted = st.restricted.restriction[&beta].clone();
            Ok(Contribution {
                degree: datum.degree,
                in_degree_minus_one: minus_one.contains(&restricted.as_slice()),
                restricted,
                root: beta,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let root_criterion = contributions.iter().all(|c| c.in_degree_minus_one);

    let half = Scalar::from_rational(crate::algebra::rat(1, 2));
    let x_plus = &(&triple.n_plus + &triple.n).scale(&half) + &triple.y.scale(&(&Scalar::i() * &half));
    let coords = sys.algebra.coords(&x_plus)?;
    let x_plus_degrees: Vec<i64> = sys
        .grading
        .pieces
        .keys()
        .copied()
        .filter(|r| {
            let p = crate::lie::HodgeGrading::project(
                &sys.weight_basis,
                &sys.weight_basis_inv,
                &sys.reference.weight_degrees(),
                &x_plus,
                *r,
            );
            !p.is_zero()
        })
        .collect();
    let direct_criterion = sys.grading.get(-1).is_some_and(|s: &Subspace| s.contains(&coords));
    Ok(HorizontalityReport { contributions, root_criterion, x_plus, x_plus_degrees, direct_criterion })
}

#[derive(Clone, Debug)]
pub struct Sl2Decomposition {
    /// `a_γ` with `Y = Σ a_γ Y_γ`, before sign normalization.
    pub coefficients: Vec<i64>,
    /// `Σ_φ`, with `γ` replaced by `−γ` where `a_γ = −1`.
    pub sigma_phi: Vec<Vec<i64>>,
    /// `Ad(ψ(c)) Y = Ad(C) Y`.
    pub cayley_identity: bool,
}

impl Sl2Decomposition {
    pub fn sigma_phi_ids(&self) -> Vec<String> {
        self.sigma_phi.iter().map(|c| restricted_id(c)).collect()
    }
}

pub fn sl2_decompose_y(st: &Structure, triple: &Sl2Triple) -> Result<Sl2Decomposition> {
    let c = st.sigma.y_coords(&triple.y).ok_or(Error::NotAlignedWithSigma)?;
    let mut coefficients = Vec::with_capacity(c.len());
    for x in &c {
        let q = x.as_rational().ok_or(Error::NotAlignedWithSigma)?;
        let v = [-1, 0, 1].into_iter().find(|k| q == int(*k)).ok_or(Error::NotAlignedWithSigma)?;
        coefficients.push(v);
    }
    let sigma_phi: Vec<Vec<i64>> = st
        .sigma
        .roots
        .iter()
        .zip(&coefficients)
        .filter(|(_, a)| **a != 0)
        .map(|(g, a)| if *a < 0 { negate(g) } else { g.clone() })
        .collect();
    let psi = CayleyTransform::from_element(cayley_element(&(&triple.n_plus + &triple.n))?)?;
    let cayley_identity = psi.ad(&triple.y) == st.cayley.ad(&triple.y);
    Ok(Sl2Decomposition { coefficients, sigma_phi, cayley_identity })
}
