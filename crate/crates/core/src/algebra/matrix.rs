//! Dense matrices over [`Scalar`] with exact Gaussian elimination.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{int, Rational, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, k: usize) -> Vector {
    let mut v = zero_vector(n);
    v[k] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn conj_vector(v: &[Scalar]) -> Vector {
    v.iter().map(Scalar::conj).collect()
}

pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
}

pub fn vec_add(u: &[Scalar], v: &[Scalar]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(u: &[Scalar], v: &[Scalar]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(v: &[Scalar], s: &Scalar) -> Vector {
    v.iter().map(|a| a * s).collect()
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer-entry constructor, handy for fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Self::from_rows(v).expect("rectangular integer rows")
    }

    pub fn from_columns(n_rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(n_rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n_rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m[(k, k)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(Scalar::is_rational)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        self.conj().transpose()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.scale(q)).collect() }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, k| acc + &self[(k, k)])
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form with deterministic first-nonzero pivoting.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// `{v : Mv = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = zero_vector(self.cols);
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&reduced[(r, f)];
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::span(self.cols, &basis)
    }

    /// Column space as a subspace of the target.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, &self.columns())
    }

    /// A particular solution of `Mx = b` with free variables set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Echelon { reduced, pivots } = self.hstack(&Matrix::identity(n)).echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(reduced.submatrix(&rows, &cols))
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] -= &t;
                }
            }
        }
        det
    }

    /// Nilpotency test: `M^n = 0` for an `n × n` matrix.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }

    /// Largest `k` with `M^k ≠ 0`, for nilpotent `M` (0 for the zero matrix).
    pub fn nilpotency_index(&self) -> Option<u32> {
        if !self.is_nilpotent() {
            return None;
        }
        let mut k = 0;
        let mut p = self.clone();
        while !p.is_zero() {
            k += 1;
            p = &p * self;
        }
        Some(k)
    }
}

/// `exp(zN) = Σ_j (zN)^j / j!` for nilpotent `N`; the series is finite.
pub fn nilpotent_exp(n: &Matrix, z: &Scalar) -> Result<Matrix> {
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let zn = n.scale(z);
    let mut term = Matrix::identity(n.rows());
    let mut acc = term.clone();
    for j in 1..=n.rows() {
        term = (&term * &zn).scale_rational(&Rational::new(1.into(), (j as i64).into()));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Splits the space into `ker(A − λ)` for each listed `λ`.
pub fn eigenspace_decomposition(a: &Matrix, spectrum: &[Rational]) -> Result<Vec<Subspace>> {
    if !a.is_square() {
        return Err(Error::Dimension("eigenspaces need a square matrix".into()));
    }
    let n = a.rows();
    let spaces: Vec<Subspace> = spectrum
        .iter()
        .map(|l| (a - &Matrix::identity(n).scale(&Scalar::from_rational(l.clone()))).kernel())
        .collect();
    let total: usize = spaces.iter().map(Subspace::dim).sum();
    if total < n {
        return Err(Error::NotSemisimple);
    }
    Ok(spaces)
}

/// Eigenspaces of a semisimple matrix with integer spectrum inside `[-bound, bound]`.
/// Returns `(eigenvalue, eigenspace)` for the nonzero eigenspaces, ascending.
pub fn integer_eigenspaces(a: &Matrix, bound: i64) -> Result<Vec<(i64, Subspace)>> {
    let spectrum: Vec<Rational> = (-bound..=bound).map(int).collect();
    let spaces = eigenspace_decomposition(a, &spectrum)?;
    Ok((-bound..=bound).zip(spaces).filter(|(_, s)| s.dim() > 0).collect())
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        m[(i, j)] += &t;
                    }
                }
            }
        }
        m
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;
    use proptest::prelude::*;

    fn arb_rational_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-3i64..4, 1i64..3), n * n).prop_map(move |v| {
            let data = v.into_iter().map(|(a, b)| Scalar::from_rational(rat(a, b))).collect();
            Matrix::from_entries(n, n, data)
        })
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = Matrix::zeros(2, 2).kernel();
        assert_eq!(k, Subspace::full(2));
    }

    #[test]
    fn kernel_of_jordan_block() {
        let k = Matrix::from_ints(&[&[0, 1], &[0, 0]]).kernel();
        assert_eq!(k, Subspace::span(2, &[unit_vector(2, 0)]));
    }

    #[test]
    fn nilpotent_exp_of_zero_and_block() {
        let z = Matrix::zeros(3, 3);
        assert!(nilpotent_exp(&z, &Scalar::from_int(5)).unwrap().is_identity());
        let n = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(nilpotent_exp(&n, &Scalar::one()).unwrap(), Matrix::from_ints(&[&[1, 1], &[0, 1]]));
    }

    #[test]
    fn nilpotent_exp_rejects_non_nilpotent() {
        let a = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert_eq!(nilpotent_exp(&a, &Scalar::one()), Err(Error::NotNilpotent));
    }

    #[test]
    fn exp_of_four_block_matches_series_and_inverts() {
        // N with N³ ≠ 0 = N⁴
        let n = Matrix::from_ints(&[&[0, 1, 2, 0], &[0, 0, 1, 3], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        assert!(!n.pow(3).is_zero());
        let z = Scalar::from_int(2);
        let e = nilpotent_exp(&n, &z).unwrap();
        // term-by-term series: I + 2N + 2N² + (4/3)N³
        let series = &(&(&Matrix::identity(4) + &n.scale(&z)) + &n.pow(2).scale(&Scalar::from_int(2)))
            + &n.pow(3).scale_rational(&rat(4, 3));
        assert_eq!(e, series);
        let e_neg = nilpotent_exp(&n, &-z).unwrap();
        assert!((&e * &e_neg).is_identity());
    }

    #[test]
    fn eigenspaces_of_diagonal() {
        let a = Matrix::from_ints(&[&[-1, 0], &[0, 1]]);
        let sp = eigenspace_decomposition(&a, &[int(-1), int(1)]).unwrap();
        assert_eq!(sp[0], Subspace::span(2, &[unit_vector(2, 0)]));
        assert_eq!(sp[1], Subspace::span(2, &[unit_vector(2, 1)]));
        let id = eigenspace_decomposition(&Matrix::identity(3), &[int(1)]).unwrap();
        assert_eq!(id[0], Subspace::full(3));
    }

    #[test]
    fn eigenspaces_reject_jordan_block() {
        let a = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(eigenspace_decomposition(&a, &[int(1)]), Err(Error::NotSemisimple));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.determinant(), Scalar::one());
        assert!((&a * &a.inverse().unwrap()).is_identity());
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    /// Independent oracle: a vector lies in the kernel iff `Mv = 0`, and a
    /// separately row-reduced copy of `M` must have the same rank.
    fn oracle_rank(m: &Matrix) -> usize {
        let mut rows = m.to_rows();
        let mut rank = 0;
        let cols = m.cols();
        for c in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(rank, p);
            for i in rank + 1..rows.len() {
                let f = &rows[i][c] / &rows[rank][c];
                let pr = rows[rank].clone();
                rows[i] = vec_sub(&rows[i], &vec_scale(&pr, &f));
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_rational_matrix(4)) {
            let k = m.kernel();
            prop_assert_eq!(k.dim() + m.rank(), 4);
            prop_assert_eq!(m.rank(), oracle_rank(&m));
            for v in k.basis() {
                prop_assert!(is_zero_vector(&m.apply(v)));
            }
        }

        #[test]
        fn product_is_associative(a in arb_rational_matrix(3), b in arb_rational_matrix(3), c in arb_rational_matrix(3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn exp_is_additive(entries in proptest::collection::vec(-3i64..4, 6), z1 in -4i64..5, z2 in -4i64..5) {
            // strictly upper-triangular 4×4
            let mut n = Matrix::zeros(4, 4);
            let mut it = entries.into_iter();
            for i in 0..4 { for j in i + 1..4 { n[(i, j)] = Scalar::from_int(it.next().unwrap()); } }
            let a = Scalar::from_int(z1);
            let b = Scalar::from_int(z2);
            let lhs = &nilpotent_exp(&n, &a).unwrap() * &nilpotent_exp(&n, &b).unwrap();
            prop_assert_eq!(lhs, nilpotent_exp(&n, &(&a + &b)).unwrap());
        }
    }
}
