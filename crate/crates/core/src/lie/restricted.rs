//! Restricted roots with respect to `a_R` (and the rational `a_Q ⊆ a_R`).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, Rational, Scalar, Subspace};
use crate::error::{Error, Result};
use crate::par::Exec;

use super::roots::GradedSystem;
use super::sigma::{CayleyTransform, StronglyOrthogonalSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "Q")]
    Rational,
}

/// A restricted root `λ` with coordinates `λ(Y_{γ_j})`.
#[derive(Clone, Debug)]
pub struct RestrictedRoot {
    pub coords: Vec<i64>,
    pub multiplicity: usize,
    /// Hodge degrees of the complex roots restricting to `λ`.
    pub degrees: BTreeSet<i64>,
    /// Complex roots `β` with `res(β) = λ`.
    pub preimages: Vec<Vec<i64>>,
    /// `Ad(C⁻¹) X_β` for each preimage, in the same order.
    pub vectors: Vec<Matrix>,
    /// Rational basis of `g_λ`: the line of `vectors[0]` when `λ` has
    /// multiplicity one, otherwise the canonical basis of the eigenspace.
    pub rational_vectors: Vec<Matrix>,
}

impl RestrictedRoot {
    pub fn id(&self) -> String {
        restricted_id(&self.coords)
    }

    /// `α(Y)` for `Y = Σ y_j Y_{γ_j}`.
    pub fn eval(&self, y: &[Rational]) -> Rational {
        self.coords.iter().zip(y).fold(Rational::from_integer(0.into()), |acc, (a, b)| acc + b * Rational::from_integer((*a).into()))
    }
}

pub fn restricted_id(coords: &[i64]) -> String {
    let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
    format!("q:({})", parts.join(","))
}

#[derive(Clone, Debug)]
pub struct RestrictedRootSystem {
    pub field: Field,
    /// The basis `Y_{γ_j}`.
    pub cartan: Vec<Matrix>,
    pub roots: Vec<RestrictedRoot>,
    /// `res(β)` for every complex root, keyed by its coordinates.
    pub restriction: BTreeMap<Vec<i64>, Vec<i64>>,
}

impl RestrictedRootSystem {
    pub fn build(sys: &GradedSystem, sigma: &StronglyOrthogonalSet, field: Field, exec: Exec) -> Result<Self> {
        let cartan = sigma.y_basis();
        if field == Field::Rational && cartan.iter().any(|y| !y.is_rational()) {
            return Err(Error::NoRationalCartan);
        }
        let cayley = CayleyTransform::new(sigma, sys.dim())?;
        let zs = sigma.z_basis();
        let mut restriction = BTreeMap::new();
        for beta in &sys.roots {
            let mut coords = Vec::with_capacity(zs.len());
            for z in &zs {
                let v = sys.eval_root(&beta.coords, z).ok_or_else(|| Error::Internal("Z_γ outside t".into()))?;
                let q = v.as_rational().filter(|q| q.is_integer()).ok_or_else(|| Error::Internal("non-integral restriction".into()))?;
                coords.push(q.to_integer().try_into().map_err(|_| Error::Internal("restriction overflow".into()))?);
            }
            restriction.insert(beta.coords.clone(), coords);
        }
        let mut grouped: BTreeMap<Vec<i64>, Vec<&super::RootDatum>> = BTreeMap::new();
        for beta in &sys.roots {
            let lam = &restriction[&beta.coords];
            if lam.iter().any(|&x| x != 0) {
                grouped.entry(lam.clone()).or_default().push(beta);
            }
        }
        let entries: Vec<(Vec<i64>, Vec<&super::RootDatum>)> = grouped.into_iter().collect();
        let roots = exec.try_map(&entries, |(lam, betas)| {
            let vectors: Vec<Matrix> = betas.iter().map(|b| cayley.ad_inv(&b.vector)).collect();
            let rational_vectors = if vectors.len() == 1 {
                vec![rationalize(&vectors[0])?]
            } else {
                sys.algebra.elements(&joint_eigenspace(sys, &cartan, lam))
            };
            Ok(RestrictedRoot {
                coords: lam.clone(),
                multiplicity: betas.len(),
                degrees: betas.iter().map(|b| b.degree).collect(),
                preimages: betas.iter().map(|b| b.coords.clone()).collect(),
                vectors,
                rational_vectors,
            })
        })?;
        Ok(RestrictedRootSystem { field, cartan, roots, restriction })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn root(&self, coords: &[i64]) -> Option<&RestrictedRoot> {
        self.roots.iter().find(|r| r.coords == coords)
    }

    pub fn root_by_id(&self, id: &str) -> Result<&RestrictedRoot> {
        self.roots.iter().find(|r| r.id() == id).ok_or_else(|| Error::UnknownRoot(id.to_string()))
    }

    /// `Δ^l_k = res_k(Δ^l_C)`.
    pub fn degree_set(&self, l: i64) -> Vec<&RestrictedRoot> {
        self.roots.iter().filter(|r| r.degrees.contains(&l)).collect()
    }

    /// Joint eigenspace `g_λ = ∩_j ker(ad Y_j − λ_j)` computed directly in `g`.
    pub fn root_space_direct(&self, sys: &GradedSystem, lam: &[i64]) -> Subspace {
        joint_eigenspace(sys, &self.cartan, lam)
    }

    /// Gram matrix of the trace form on `a`.
    pub fn trace_gram(&self) -> Matrix {
        let rows = self
            .cartan
            .iter()
            .map(|a| self.cartan.iter().map(|b| (a * b).trace()).collect())
            .collect();
        Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zeros(0, 0))
    }

    /// Squared length `λᵀ G⁻¹ λ` in the dual of the trace form.
    pub fn length_squared(&self, lam: &[i64]) -> Rational {
        let g = self.trace_gram();
        let inv = g.inverse().expect("trace form nondegenerate on a");
        let v: Vec<Scalar> = lam.iter().map(|&x| Scalar::from_int(x)).collect();
        let w = inv.apply(&v);
        let s = v.iter().zip(&w).fold(Scalar::zero(), |acc, (a, b)| acc + a * b);
        s.as_rational().expect("rational length")
    }

    /// Roots of minimal length when at least two lengths occur.
    pub fn short_roots(&self) -> Vec<&RestrictedRoot> {
        let lens: Vec<Rational> = self.roots.iter().map(|r| self.length_squared(&r.coords)).collect();
        let distinct: BTreeSet<&Rational> = lens.iter().collect();
        if distinct.len() < 2 {
            return Vec::new();
        }
        let min = (*distinct.iter().next().unwrap()).clone();
        self.roots.iter().zip(&lens).filter(|(_, l)| **l == min).map(|(r, _)| r).collect()
    }

    /// Positive system: `α > 0` iff `(−α(Y), −α_1, −α_2, …)` has positive
    /// leading entry. Without `y` the ordering is lexicographic alone.
    pub fn is_positive(&self, lam: &[i64], y: Option<&[Rational]>) -> bool {
        if let Some(y) = y {
            let v = lam.iter().zip(y).fold(Rational::from_integer(0.into()), |acc, (a, b)| acc + b * Rational::from_integer((*a).into()));
            if v != Rational::from_integer(0.into()) {
                return v < Rational::from_integer(0.into());
            }
        }
        lam.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
    }

    pub fn positive_roots(&self, y: Option<&[Rational]>) -> Vec<&RestrictedRoot> {
        self.roots.iter().filter(|r| self.is_positive(&r.coords, y)).collect()
    }

    /// Positive roots that are not a sum of two positive roots.
    pub fn simple_roots(&self, y: Option<&[Rational]>) -> Vec<&RestrictedRoot> {
        simple_of(&self.positive_roots(y).iter().map(|r| r.coords.clone()).collect::<Vec<_>>())
            .into_iter()
            .map(|c| self.root(&c).expect("positive root"))
            .collect()
    }
}

fn joint_eigenspace(sys: &GradedSystem, cartan: &[Matrix], lam: &[i64]) -> Subspace {
    let d = sys.algebra.dim();
    let mut acc = Subspace::full(d);
    for (y, l) in cartan.iter().zip(lam) {
        let shifted = &sys.algebra.ad(y) - &Matrix::identity(d).scale(&Scalar::from_int(*l));
        acc = acc.intersection(&shifted.kernel());
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// A rational matrix on the same complex line as `v`: `v` itself when it is
/// already rational, otherwise `v` divided by its first nonzero entry.
fn rationalize(v: &Matrix) -> Result<Matrix> {
    if v.is_rational() {
        return Ok(v.clone());
    }
    let lead = v.entries().iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Scalar::one);
    let inv = lead.inv().unwrap_or_else(Scalar::one);
    let r = v.scale(&inv);
    if !r.is_rational() {
        return Err(Error::NoRationalCartan);
    }
    Ok(r)
}

/// Elements of `pos` that are not the sum of two elements of `pos`.
pub fn simple_of(pos: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let set: BTreeSet<&Vec<i64>> = pos.iter().collect();
    pos.iter()
        .filter(|c| {
            !pos.iter().any(|a| {
                let rest: Vec<i64> = c.iter().zip(a).map(|(x, y)| x - y).collect();
                set.contains(&rest)
            })
        })
        .cloned()
        .collect()
}
