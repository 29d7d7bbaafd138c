//! The isometry algebra `g = o(S)` or `sp(S)` and its Hodge grading.

use std::collections::BTreeMap;

use crate::algebra::{Matrix, Scalar, Subspace, Vector};
use crate::error::{Error, Result};
use crate::hodge::PolarizedLattice;

/// `{X : XᵀS + SX = 0}` with a rational basis in canonical form.
///
/// Elements are handled both as matrices and as coordinate vectors against
/// the stored basis; the basis matrices have a unit entry at their pivot
/// position and zeros at the other pivots, so coordinates are read off there.
#[derive(Clone, Debug)]
pub struct IsometryAlgebra {
    pub gram: Matrix,
    n: usize,
    basis: Vec<Matrix>,
    pivots: Vec<usize>,
}

impl IsometryAlgebra {
    pub fn new(lattice: &PolarizedLattice) -> Result<Self> {
        let s = lattice.gram().clone();
        if s.rank() != s.rows() {
            return Err(Error::DegenerateForm("polarization is degenerate".into()));
        }
        let n = s.rows();
        // row (a,b) of the linear system: (XᵀS + SX)_{ab} = Σ_k X_{ka} S_{kb} + S_{ak} X_{kb}
        let mut sys = Matrix::zeros(n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                let row = a * n + b;
                for k in 0..n {
                    let t = &sys[(row, k * n + a)] + &s[(k, b)];
                    sys[(row, k * n + a)] = t;
                    let t = &sys[(row, k * n + b)] + &s[(a, k)];
                    sys[(row, k * n + b)] = t;
                }
            }
        }
        let kernel = sys.kernel();
        let basis: Vec<Matrix> = kernel.basis().iter().map(|v| Matrix::from_entries(n, n, v.clone())).collect();
        let pivots = kernel
            .basis()
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector"))
            .collect();
        Ok(IsometryAlgebra { gram: s, n, basis, pivots })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Size of the matrices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn is_element(&self, x: &Matrix) -> bool {
        x.rows() == self.n
            && x.cols() == self.n
            && (&(&x.transpose() * &self.gram) + &(&self.gram * x)).is_zero()
    }

    pub fn coords(&self, x: &Matrix) -> Result<Vector> {
        if !self.is_element(x) {
            return Err(Error::NotInAlgebra);
        }
        Ok(self.pivots.iter().map(|&p| x.entries()[p].clone()).collect())
    }

    pub fn element(&self, c: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.n, self.n);
        for (x, b) in c.iter().zip(&self.basis) {
            if !x.is_zero() {
                acc = &acc + &b.scale(x);
            }
        }
        acc
    }

    pub fn bracket(&self, x: &Matrix, y: &Matrix) -> Matrix {
        x.commutator(y)
    }

    /// Matrix of `ad(X)` in basis coordinates.
    pub fn ad(&self, x: &Matrix) -> Matrix {
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .map(|b| self.coords(&x.commutator(b)).expect("g is closed under bracket"))
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Coordinate subspace spanned by the given elements.
    pub fn span(&self, xs: &[Matrix]) -> Result<Subspace> {
        let v = xs.iter().map(|x| self.coords(x)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.dim(), &v))
    }

    /// Canonical basis of a coordinate subspace, as matrices.
    pub fn elements(&self, s: &Subspace) -> Vec<Matrix> {
        s.basis().iter().map(|c| self.element(c)).collect()
    }

    /// Trace form `tr(XY)`, proportional to the Killing form on simple `g`.
    pub fn trace_form(&self, x: &Matrix, y: &Matrix) -> Scalar {
        (x * y).trace()
    }

    /// `{X ∈ g : [X, A] = 0 for all A ∈ set}`.
    pub fn centralizer(&self, set: &[Matrix]) -> Subspace {
        if set.is_empty() {
            return Subspace::full(self.dim());
        }
        let mut stacked = self.ad(&set[0]);
        for a in &set[1..] {
            stacked = stacked.vstack(&self.ad(a));
        }
        stacked.kernel()
    }
}

/// Multiplicative grading of matrices by a diagonalizing basis: conjugates `X`
/// into the basis given by the columns of `p`, keeps the entries selected by
/// `keep(row, col)`, and conjugates back.
pub fn masked_projection(p: &Matrix, p_inv: &Matrix, x: &Matrix, keep: impl Fn(usize, usize) -> bool) -> Matrix {
    let mut y = &(p_inv * x) * p;
    for a in 0..y.rows() {
        for b in 0..y.cols() {
            if !keep(a, b) {
                y[(a, b)] = Scalar::zero();
            }
        }
    }
    &(p * &y) * p_inv
}

/// The Hodge grading `g = ⊕_r g^{r,-r}` as coordinate subspaces.
#[derive(Clone, Debug)]
pub struct HodgeGrading {
    pub pieces: BTreeMap<i64, Subspace>,
}

impl HodgeGrading {
    /// Degree-`r` component of `X ∈ g`, given the weight basis `p` and the
    /// Hodge degree of each basis vector.
    pub fn project(p: &Matrix, p_inv: &Matrix, degrees: &[usize], x: &Matrix, r: i64) -> Matrix {
        masked_projection(p, p_inv, x, |a, b| degrees[a] as i64 - degrees[b] as i64 == r)
    }

    pub fn compute(alg: &IsometryAlgebra, p: &Matrix, degrees: &[usize], m: usize) -> Result<Self> {
        let p_inv = p.inverse().ok_or_else(|| Error::Internal("weight basis not invertible".into()))?;
        let mut pieces = BTreeMap::new();
        for r in -(m as i64)..=(m as i64) {
            let proj: Vec<Matrix> = alg.basis().iter().map(|x| Self::project(p, &p_inv, degrees, x, r)).collect();
            let s = alg.span(&proj)?;
            if !s.is_zero() {
                pieces.insert(r, s);
            }
        }
        Ok(HodgeGrading { pieces })
    }

    pub fn get(&self, r: i64) -> Option<&Subspace> {
        self.pieces.get(&r)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.pieces.iter().map(|(r, s)| (*r, s.dim())).collect()
    }

    /// Degree of a homogeneous element.
    pub fn degree_of(&self, coords: &[Scalar]) -> Option<i64> {
        if coords.iter().all(Scalar::is_zero) {
            return None;
        }
        self.pieces.iter().find(|(_, s)| s.contains(coords)).map(|(r, _)| *r)
    }

    /// `⊕_{r ∈ set}` of the pieces.
    pub fn sum_where(&self, dim: usize, pred: impl Fn(i64) -> bool) -> Subspace {
        self.pieces.iter().filter(|(r, _)| pred(**r)).fold(Subspace::zero(dim), |acc, (_, s)| acc.sum(s))
    }
}
