//! The canonical parabolic `q = W_0 g`, its root description
//! `z(a_I) + u_I`, Langlands pieces, and the weighted Dynkin diagram.

use std::collections::BTreeMap;

use crate::algebra::{int, integer_eigenspaces, Matrix, Rational, Scalar, Subspace};
use crate::error::{Error, Result};
use crate::lie::{simple_of, Structure};

use super::filtration::{weight_filtration_g, WeightFiltration};
use super::triple::Sl2Triple;

/// A simple root with its value `α(Y)`; the diagram label is `−α(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinNode {
    pub root: Vec<i64>,
    pub value: Rational,
}

impl DynkinNode {
    pub fn label(&self) -> Rational {
        -self.value.clone()
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalParabolic {
    /// Coordinates of `Y` in the basis `Y_{γ_j}` of `a_Q`.
    pub y_coords: Vec<Rational>,
    /// Simple restricted roots for the ordering refined by `Y`.
    pub simple: Vec<DynkinNode>,
    /// `I = {α ∈ Π : α(Y) = 0}`.
    pub i_set: Vec<Vec<i64>>,
    /// `q = ⊕_{j≤0} g(j)`, in algebra coordinates.
    pub q: Subspace,
    /// Basis of `a_I = ∩_{α∈I} ker α`.
    pub a_i: Vec<Matrix>,
    /// The same basis in coordinates against `Y_{γ_j}`.
    pub a_i_coords: Vec<Vec<Rational>>,
    /// `z(a_I)`.
    pub levi: Subspace,
    /// `u_Q = u_I = ⊕_{j<0} g(j)`.
    pub u: Subspace,
    /// Trace-orthogonal complement of `a_I` in `z(a_I)`.
    pub m_q: Subspace,
}

fn y_coords(st: &Structure, y: &Matrix) -> Result<Vec<Rational>> {
    let c = st.sigma.y_coords(y).ok_or(Error::NotInCartan)?;
    c.iter().map(|x| x.as_rational().ok_or(Error::NotInCartan)).collect()
}

fn eval(lam: &[i64], y: &[Rational]) -> Rational {
    lam.iter().zip(y).fold(int(0), |acc, (a, b)| acc + b * int(*a))
}

pub fn canonical_parabolic(st: &Structure, triple: &Sl2Triple) -> Result<CanonicalParabolic> {
    let alg = &st.sys.algebra;
    let y = y_coords(st, &triple.y)?;
    let rs = &st.restricted;
    let simple: Vec<DynkinNode> = rs
        .simple_roots(Some(&y))
        .into_iter()
        .map(|r| DynkinNode { root: r.coords.clone(), value: eval(&r.coords, &y) })
        .collect();
    if let Some(bad) = simple.iter().find(|n| n.value > int(0)) {
        return Err(Error::OrderingIncompatible(crate::lie::restricted_id(&bad.root)));
    }
    let i_set: Vec<Vec<i64>> = simple.iter().filter(|n| n.value == int(0)).map(|n| n.root.clone()).collect();

    let cartan = &rs.cartan;
    let a_i_coords: Vec<Vec<Rational>> = if i_set.is_empty() {
        (0..cartan.len()).map(|j| (0..cartan.len()).map(|k| int((j == k) as i64)).collect()).collect()
    } else {
        let rows: Vec<&[i64]> = i_set.iter().map(Vec::as_slice).collect();
        let ker = Matrix::from_ints(&rows).kernel();
        ker.basis().iter().map(|c| c.iter().map(|x| x.as_rational().expect("rational kernel")).collect()).collect()
    };
    let a_i: Vec<Matrix> = a_i_coords.iter().map(|c| st.sigma.y_combination(&c.iter().cloned().map(Scalar::from_rational).collect::<Vec<_>>())).collect();
    if !alg.span(&a_i)?.contains(&alg.coords(&triple.y)?) {
        return Err(Error::Internal("Y outside a_I".into()));
    }

    let w = weight_filtration_g(alg, triple)?;
    let q = w.get(0);
    let u = w.get(-1);

    let u_root = rs
        .positive_roots(Some(&y))
        .into_iter()
        .filter(|r| eval(&r.coords, &y) != int(0))
        .fold(Subspace::zero(alg.dim()), |acc, r| acc.sum(&rs.root_space_direct(&st.sys, &r.coords)));
    let levi = alg.centralizer(&a_i);
    if u_root != u || levi.sum(&u_root) != q {
        return Err(Error::Internal("root description of q disagrees with eigenspaces".into()));
    }

    let zs = alg.elements(&levi);
    let m_q = if a_i.is_empty() {
        levi.clone()
    } else {
        let rows: Vec<Vec<Scalar>> = a_i.iter().map(|a| zs.iter().map(|z| alg.trace_form(z, a)).collect()).collect();
        let ker = Matrix::from_rows(rows)?.kernel();
        let elems: Vec<Matrix> = ker
            .basis()
            .iter()
            .map(|c| zs.iter().zip(c).fold(Matrix::zeros(alg.n(), alg.n()), |acc, (z, x)| &acc + &z.scale(x)))
            .collect();
        alg.span(&elems)?
    };
    Ok(CanonicalParabolic { y_coords: y, simple, i_set, q, a_i, a_i_coords, levi, u, m_q })
}

impl CanonicalParabolic {
    /// Weight spaces of `a_I` on `H`, keyed by the values on the `a_I` basis.
    pub fn a_i_weight_spaces(&self, st: &Structure) -> BTreeMap<Vec<Rational>, Subspace> {
        let n = st.sys.reference.dim();
        let mut joint: Vec<(Vec<i64>, Subspace)> = vec![(Vec::new(), Subspace::full(n))];
        for y in &st.restricted.cartan {
            let eig = integer_eigenspaces(y, n as i64).expect("Y_γ semisimple with integer spectrum");
            joint = joint
                .into_iter()
                .flat_map(|(mu, s)| {
                    eig.iter()
                        .map(move |(j, e)| {
                            let mut mu = mu.clone();
                            mu.push(*j);
                            (mu, s.intersection(e))
                        })
                        .filter(|(_, s)| !s.is_zero())
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        let mut out: BTreeMap<Vec<Rational>, Subspace> = BTreeMap::new();
        for (mu, s) in joint {
            let key: Vec<Rational> = self.a_i_coords.iter().map(|c| eval(&mu, c)).collect();
            let entry = out.entry(key).or_insert_with(|| Subspace::zero(n));
            *entry = entry.sum(&s);
        }
        out
    }

    /// Every weight space of `a_I` on `H` lies in one eigenspace of `Y`.
    pub fn weight_spaces_refine_eigenspaces(&self, st: &Structure, w: &WeightFiltration) -> bool {
        self.a_i_weight_spaces(st).values().all(|s| w.eigenspaces.values().any(|e| e.contains_subspace(s)))
    }
}

#[derive(Clone, Debug)]
pub struct WeightedDynkin {
    /// Simple complex roots `β` with `β(Ad(C) Y)`.
    pub complex: Vec<DynkinNode>,
    /// Simple restricted roots with `α(Y)`.
    pub restricted: Vec<DynkinNode>,
}

impl WeightedDynkin {
    /// All complex labels lie in `{0, 1, 2}`.
    pub fn labels_admissible(&self) -> bool {
        self.complex.iter().all(|n| [int(0), int(1), int(2)].contains(&n.label()))
    }
}

/// Labels `−β(Y)` on the simple roots of the positive system in which
/// `β > 0` iff the first nonzero of `(β(Y), res(β), β)` is negative.
pub fn weighted_dynkin(st: &Structure, triple: &Sl2Triple) -> Result<WeightedDynkin> {
    let y = y_coords(st, &triple.y)?;
    let rs = &st.restricted;
    let value = |b: &Vec<i64>| eval(&rs.restriction[b], &y);
    let positive: Vec<Vec<i64>> = st
        .sys
        .roots
        .iter()
        .map(|r| &r.coords)
        .filter(|b| {
            let v = value(b);
            if v != int(0) {
                return v < int(0);
            }
            rs.restriction[*b].iter().chain(b.iter()).find(|&&x| x != 0).is_some_and(|&x| x < 0)
        })
        .cloned()
        .collect();
    let complex = simple_of(&positive).into_iter().map(|b| DynkinNode { value: value(&b), root: b }).collect();
    let restricted = rs
        .simple_roots(Some(&y))
        .into_iter()
        .map(|r| DynkinNode { root: r.coords.clone(), value: eval(&r.coords, &y) })
        .collect();
    Ok(WeightedDynkin { complex, restricted })
}
