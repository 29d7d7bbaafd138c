//! Subspaces in canonical (reduced row echelon) form, and flags.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{is_zero_vector, Matrix, Vector};
use super::scalar::Scalar;

/// A subspace of `Scalar^ambient`, stored as the nonzero rows of the RREF of
/// any spanning set. Two subspaces are equal iff their stored bases agree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Matrix::identity(ambient).row_space()
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        Matrix::from_rows(vectors.to_vec()).expect("vectors of equal length").row_space_in(ambient)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Basis vectors as columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if is_zero_vector(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).expect("same ambient").rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &v)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // a ∈ U ∩ V  iff  a = Σ x_i u_i = Σ y_j v_j
        let u = self.basis_matrix();
        let v = other.basis_matrix();
        let k = u.hstack(&-&v).kernel();
        let vecs: Vec<Vector> = k.basis().iter().map(|c| u.apply(&c[..self.dim()])).collect();
        Subspace::span(self.ambient, &vecs)
    }

    /// Complex conjugate subspace.
    pub fn conj(&self) -> Subspace {
        let v: Vec<Vector> = self.basis.iter().map(|b| b.iter().map(Scalar::conj).collect()).collect();
        Subspace::span(self.ambient, &v)
    }

    /// True when the subspace is defined over the reals (equal to its conjugate).
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// `M(U)`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        let v: Vec<Vector> = self.basis.iter().map(|b| m.apply(b)).collect();
        Subspace::span(m.rows(), &v)
    }

    /// `{a ∈ self : M a ∈ target}`.
    pub fn preimage_within(&self, m: &Matrix, target: &Subspace) -> Subspace {
        if self.is_zero() {
            return self.clone();
        }
        let b = self.basis_matrix();
        let mb = m * &b;
        // coefficients x with (M B x) ∈ target  iff  M B x − T y = 0
        let t = target.basis_matrix();
        let system = if target.is_zero() { mb.clone() } else { mb.hstack(&-&t) };
        let k = system.kernel();
        let vecs: Vec<Vector> = k.basis().iter().map(|c| b.apply(&c[..self.dim()])).collect();
        Subspace::span(self.ambient, &vecs)
    }

    /// Extends the canonical basis of `self` to a basis of `larger` and returns
    /// the added vectors, which span a complement of `self` inside `larger`.
    pub fn complement_in(&self, larger: &Subspace) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut added = Vec::new();
        for v in larger.basis() {
            if !acc.contains(v) {
                acc = acc.sum(&Subspace::span(self.ambient, std::slice::from_ref(v)));
                added.push(v.clone());
            }
        }
        added
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.is_zero() {
            return is_zero_vector(v).then(Vec::new);
        }
        self.basis_matrix().solve(v)
    }
}

impl Matrix {
    /// Row space in canonical form.
    pub fn row_space(&self) -> Subspace {
        self.row_space_in(self.cols())
    }

    fn row_space_in(&self, ambient: usize) -> Subspace {
        let e = self.echelon();
        let basis = (0..e.pivots.len()).map(|i| e.reduced.row(i)).collect();
        Subspace { ambient, basis }
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (k, v) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Decreasing,
    Increasing,
}

/// A chain of subspaces indexed by consecutive integers starting at `start`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flag {
    pub direction: Direction,
    pub start: i64,
    pub members: Vec<Subspace>,
}

impl Flag {
    pub fn new(direction: Direction, start: i64, members: Vec<Subspace>) -> Self {
        Flag { direction, start, members }
    }

    pub fn ambient(&self) -> usize {
        self.members.first().map_or(0, Subspace::ambient)
    }

    pub fn end(&self) -> i64 {
        self.start + self.members.len() as i64 - 1
    }

    /// Member at index `k`; outside the recorded range the chain is extended
    /// by the full space or zero according to the direction.
    pub fn get(&self, k: i64) -> Subspace {
        let n = self.ambient();
        let below = match self.direction {
            Direction::Decreasing => Subspace::full(n),
            Direction::Increasing => Subspace::zero(n),
        };
        let above = match self.direction {
            Direction::Decreasing => Subspace::zero(n),
            Direction::Increasing => Subspace::full(n),
        };
        if k < self.start {
            below
        } else if k > self.end() {
            above
        } else {
            self.members[(k - self.start) as usize].clone()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.members.iter().map(Subspace::dim).collect()
    }

    /// Each member contains (decreasing) or is contained in (increasing) the next.
    pub fn is_nested(&self) -> bool {
        self.members.windows(2).all(|w| match self.direction {
            Direction::Decreasing => w[0].contains_subspace(&w[1]),
            Direction::Increasing => w[1].contains_subspace(&w[0]),
        })
    }
}
