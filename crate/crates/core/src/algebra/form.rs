//! Bilinear and sesquilinear forms given by Gram matrices.

use serde::{Deserialize, Serialize};

use super::matrix::{conj_vector, dot, Matrix, Vector};
use super::scalar::Scalar;
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Skew,
    Hermitian,
}

/// `F(x, y) = xᵀ G y` (bilinear tags) or `xᵀ G ȳ` (hermitian tag).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SesquiForm {
    pub gram: Matrix,
    pub symmetry: Symmetry,
}

impl SesquiForm {
    pub fn new(gram: Matrix, symmetry: Symmetry) -> Result<Self> {
        let ok = match symmetry {
            Symmetry::Symmetric => gram.transpose() == gram,
            Symmetry::Skew => gram.transpose() == -&gram,
            Symmetry::Hermitian => gram.conj_transpose() == gram,
        };
        if !gram.is_square() || !ok {
            return Err(Error::DegenerateForm(format!("Gram matrix is not {symmetry:?}")));
        }
        Ok(SesquiForm { gram, symmetry })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = match self.symmetry {
            Symmetry::Hermitian => self.gram.apply(&conj_vector(y)),
            _ => self.gram.apply(y),
        };
        dot(x, &gy)
    }

    /// Gram matrix of the form restricted to the canonical basis of `u`.
    pub fn restricted_gram(&self, u: &Subspace) -> Matrix {
        let b = u.basis();
        let rows: Vec<Vector> = b.iter().map(|x| b.iter().map(|y| self.eval(x, y)).collect()).collect();
        if rows.is_empty() {
            return Matrix::zeros(0, 0);
        }
        Matrix::from_rows(rows).expect("square")
    }

    /// True when `F(U, V) = 0`.
    pub fn annihilates(&self, u: &Subspace, v: &Subspace) -> bool {
        u.basis().iter().all(|x| v.basis().iter().all(|y| self.eval(x, y).is_zero()))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }
}

/// Decides positive definiteness of a hermitian Gram matrix by its leading
/// principal minors.
pub fn gram_positive(g: &Matrix) -> Result<bool> {
    if g.conj_transpose() != *g {
        return Err(Error::NotHermitian);
    }
    for k in 1..=g.rows() {
        let idx: Vec<usize> = (0..k).collect();
        let minor = g.submatrix(&idx, &idx).determinant();
        match minor.real_sign() {
            Some(std::cmp::Ordering::Greater) => {}
            Some(_) => return Ok(false),
            None => return Err(Error::NotHermitian),
        }
    }
    Ok(true)
}

/// Positivity of `F` restricted to `U`; the restriction must be hermitian.
pub fn hermitian_positive(f: &SesquiForm, u: &Subspace) -> Result<bool> {
    gram_positive(&f.restricted_gram(u))
}
