//! Weight filtrations `W_k = ⊕_{j ≤ k−c} E_j(Y)` read off a triple.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{integer_eigenspaces, Direction, Flag, Matrix, Subspace};
use crate::error::{Error, Result};
use crate::lie::IsometryAlgebra;

use super::triple::Sl2Triple;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Space {
    H,
    #[serde(rename = "g")]
    G,
}

#[derive(Clone, Debug)]
pub struct WeightFiltration {
    pub space: Space,
    pub center: i64,
    /// Increasing flag, `W_k` for `k` in the recorded range.
    pub flag: Flag,
    /// Eigenspaces of `Y` (or `ad Y`) keyed by eigenvalue.
    pub eigenspaces: BTreeMap<i64, Subspace>,
}

impl WeightFiltration {
    /// Builds `W` from a semisimple operator with integer spectrum.
    pub fn from_grading(space: Space, y: &Matrix, center: i64) -> Result<Self> {
        let bound = 2 * y.rows() as i64;
        let eigen: BTreeMap<i64, Subspace> = integer_eigenspaces(y, bound)?.into_iter().collect();
        let n = y.rows();
        let (lo, hi) = match (eigen.keys().next(), eigen.keys().next_back()) {
            (Some(a), Some(b)) => (*a, *b),
            _ => return Err(Error::Dimension("empty space".into())),
        };
        let mut members = Vec::new();
        let mut acc = Subspace::zero(n);
        for j in lo..=hi {
            if let Some(e) = eigen.get(&j) {
                acc = acc.sum(e);
            }
            members.push(acc.clone());
        }
        Ok(WeightFiltration { space, center, flag: Flag::new(Direction::Increasing, lo + center, members), eigenspaces: eigen })
    }

    pub fn get(&self, k: i64) -> Subspace {
        self.flag.get(k)
    }

    pub fn gr_dim(&self, k: i64) -> usize {
        self.get(k).dim() - self.get(k - 1).dim()
    }

    /// Nonzero `dim Gr_k`, ascending in `k`.
    pub fn gr_dims(&self) -> BTreeMap<i64, usize> {
        (self.flag.start..=self.flag.end()).map(|k| (k, self.gr_dim(k))).filter(|(_, d)| *d > 0).collect()
    }

    pub fn range(&self) -> (i64, i64) {
        (self.flag.start, self.flag.end())
    }

    /// `N W_k ⊆ W_{k−2}` and `N^l: Gr_{c+l} ≅ Gr_{c−l}`, for the operator
    /// `n` acting on the same space.
    pub fn satisfies_invariants(&self, n: &Matrix) -> bool {
        let (lo, hi) = self.range();
        let shifts = (lo..=hi + 1).all(|k| self.get(k - 2).contains_subspace(&self.get(k).image_under(n)));
        let c = self.center;
        let isos = (0..=(hi - c).max(c - lo)).all(|l| {
            let top = self.get(c + l);
            let below = self.get(c - l - 1);
            let pow = n.pow(l as u32);
            let img = top.image_under(&pow).sum(&below);
            self.gr_dim(c + l) == self.gr_dim(c - l) && img == self.get(c - l)
        });
        shifts && isos
    }

    /// `S(W_l, W_{l'}) = 0` whenever `l + l' < 2c`.
    pub fn pairing_vanishes(&self, gram: &Matrix) -> bool {
        let (lo, hi) = self.range();
        (lo..=hi).all(|l| {
            (lo..=hi).filter(|l2| l + l2 < 2 * self.center).all(|l2| {
                let a = self.get(l);
                let b = self.get(l2);
                a.basis().iter().all(|x| b.basis().iter().all(|y| crate::algebra::matrix::dot(x, &gram.apply(y)).is_zero()))
            })
        })
    }
}

/// The weight filtration of `N` on `H`, centered at `c`.
pub fn weight_filtration_h(triple: &Sl2Triple, center: i64) -> Result<WeightFiltration> {
    WeightFiltration::from_grading(Space::H, &triple.y, center)
}

/// The weight filtration of `ad N` on `g` (in basis coordinates), centered at 0.
pub fn weight_filtration_g(alg: &IsometryAlgebra, triple: &Sl2Triple) -> Result<WeightFiltration> {
    WeightFiltration::from_grading(Space::G, &alg.ad(&triple.y), 0)
}
