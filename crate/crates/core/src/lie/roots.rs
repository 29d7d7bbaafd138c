//! Compact Cartan, weights, roots with Hodge degrees, root vectors and the
//! `sl(2)` embeddings of non-compact roots.

use std::collections::BTreeSet;

use crate::algebra::{Matrix, Scalar, Subspace};
use crate::error::{Error, Result};
use crate::hodge::{build_reference, HodgeNumbers, ReferenceStructure};
use crate::par::Exec;

use super::algebra::{masked_projection, HodgeGrading, IsometryAlgebra};

/// A root of `g_C` with respect to the compact Cartan `t_C`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub coords: Vec<i64>,
    pub degree: i64,
    /// Root space in algebra coordinates (always one-dimensional).
    pub space: Subspace,
    /// The chosen root vector `X_α`.
    pub vector: Matrix,
    /// Weight-basis indices `(δ, ε)` when `X_α` was built from `α = −δ + ε`.
    pub construction: Option<(usize, usize)>,
}

impl RootDatum {
    pub fn id(&self) -> String {
        root_id(&self.coords)
    }

    pub fn is_compact(&self) -> bool {
        self.degree % 2 == 0
    }
}

pub fn root_id(coords: &[i64]) -> String {
    let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
    format!("a:({})", parts.join(","))
}

/// The images of `z, x₊, x₋, y, n₊, n₋` under `φ_α`.
#[derive(Clone, Debug)]
pub struct Sl2Embedding {
    pub z: Matrix,
    pub x_plus: Matrix,
    pub x_minus: Matrix,
    pub y: Matrix,
    pub n_plus: Matrix,
    pub n_minus: Matrix,
}

impl Sl2Embedding {
    /// Builds the real triple from `X_α` and `X_{−α} = conj(X_α)`.
    pub fn from_root_vector(x: &Matrix) -> Self {
        let xm = x.conj();
        let z = x.commutator(&xm);
        let i = Scalar::i();
        let half = Scalar::from_rational(crate::algebra::rat(1, 2));
        let y = (&xm - x).scale(&i);
        let sum = x + &xm;
        let iz = z.scale(&i);
        let n_plus = (&sum - &iz).scale(&half);
        let n_minus = (&sum + &iz).scale(&half);
        Sl2Embedding { z, x_plus: x.clone(), x_minus: xm, y, n_plus, n_minus }
    }

    /// `φ(n₊ + n₋) = X_α + X_{−α}`, the generator of the Cayley element.
    pub fn sigma(&self) -> Matrix {
        &self.x_plus + &self.x_minus
    }
}

/// Everything attached to a set of Hodge numbers: the reference structure,
/// the algebra with its grading, the compact Cartan and the graded roots.
#[derive(Clone, Debug)]
pub struct GradedSystem {
    pub reference: ReferenceStructure,
    pub algebra: IsometryAlgebra,
    pub grading: HodgeGrading,
    /// Columns are the weight vectors.
    pub weight_basis: Matrix,
    pub weight_basis_inv: Matrix,
    /// `T_j`, acting by `+1` on `v_j`, `−1` on `v̄_j`, `0` elsewhere.
    pub cartan: Vec<Matrix>,
    pub roots: Vec<RootDatum>,
}

impl GradedSystem {
    pub fn build(h: &HodgeNumbers) -> Result<Self> {
        Self::build_with(h, Exec::default())
    }

    pub fn build_with(h: &HodgeNumbers, exec: Exec) -> Result<Self> {
        let reference = build_reference(h)?;
        let algebra = IsometryAlgebra::new(&reference.lattice)?;
        let weight_basis = reference.weight_basis();
        let weight_basis_inv =
            weight_basis.inverse().ok_or_else(|| Error::Internal("weight basis not invertible".into()))?;
        let grading = HodgeGrading::compute(&algebra, &weight_basis, &reference.weight_degrees(), h.m)?;
        let r = reference.rank();
        let cartan: Vec<Matrix> = (0..r)
            .map(|j| {
                let d: Vec<Scalar> = reference.weights.iter().map(|w| Scalar::from_int(w.coords[j])).collect();
                &(&weight_basis * &Matrix::diagonal(&d)) * &weight_basis_inv
            })
            .collect();
        let mut sys = GradedSystem { reference, algebra, grading, weight_basis, weight_basis_inv, cartan, roots: Vec::new() };
        sys.roots = sys.compute_roots(exec)?;
        Ok(sys)
    }

    pub fn m(&self) -> usize {
        self.reference.m()
    }

    pub fn rank(&self) -> usize {
        self.reference.rank()
    }

    pub fn dim(&self) -> usize {
        self.reference.dim()
    }

    fn weight_coords(&self, a: usize) -> &[i64] {
        &self.reference.weights[a].coords
    }

    fn compute_roots(&self, exec: Exec) -> Result<Vec<RootDatum>> {
        let nw = self.reference.weights.len();
        let mut candidates = BTreeSet::new();
        for a in 0..nw {
            for b in 0..nw {
                let d: Vec<i64> = self.weight_coords(b).iter().zip(self.weight_coords(a)).map(|(x, y)| x - y).collect();
                if d.iter().any(|&x| x != 0) {
                    candidates.insert(d);
                }
            }
        }
        let candidates: Vec<Vec<i64>> = candidates.into_iter().collect();
        let spaces = exec.try_map(&candidates, |alpha| self.root_space(alpha))?;
        let mut found: Vec<(Vec<i64>, Subspace, i64)> = Vec::new();
        for (alpha, space) in candidates.into_iter().zip(spaces) {
            if space.is_zero() {
                continue;
            }
            if space.dim() != 1 {
                return Err(Error::Internal(format!("root space of {} has dimension {}", root_id(&alpha), space.dim())));
            }
            let degree = self
                .grading
                .degree_of(&space.basis()[0])
                .ok_or_else(|| Error::Internal("root space not homogeneous".into()))?;
            found.push((alpha, space, degree));
        }
        found.sort_by(|x, y| (x.2, &x.0).cmp(&(y.2, &y.0)).reverse());

        // Build negative-degree and lexicographically positive compact roots
        // first, then fill in their opposites by conjugation.
        let mut roots: Vec<RootDatum> = Vec::with_capacity(found.len());
        for (alpha, space, degree) in &found {
            let primary = *degree < 0 || (*degree == 0 && lex_positive(alpha));
            if !primary {
                continue;
            }
            let (vector, construction) = match self.admissible_pair(alpha) {
                Some((a, b)) => (self.root_vector(a, b)?, Some((a, b))),
                None => (self.algebra.element(&space.basis()[0]), None),
            };
            roots.push(RootDatum { coords: alpha.clone(), degree: *degree, space: space.clone(), vector, construction });
        }
        let opposites: Vec<RootDatum> = roots
            .iter()
            .map(|r| {
                let coords: Vec<i64> = r.coords.iter().map(|x| -x).collect();
                let (_, space, degree) = found.iter().find(|f| f.0 == coords).expect("roots come in ± pairs");
                RootDatum { coords, degree: *degree, space: space.clone(), vector: r.vector.conj(), construction: None }
            })
            .collect();
        roots.extend(opposites);
        roots.sort_by(|x, y| (x.degree, &x.coords).cmp(&(y.degree, &y.coords)));
        Ok(roots)
    }

    /// `g^α`: elements of `g` whose weight-basis matrix is supported on the
    /// entries `(b, a)` with `ε_b − ε_a = α`.
    pub fn root_space(&self, alpha: &[i64]) -> Result<Subspace> {
        let w = &self.reference.weights;
        let keep = |b: usize, a: usize| w[b].coords.iter().zip(&w[a].coords).zip(alpha).all(|((x, y), z)| x - y == *z);
        let proj: Vec<Matrix> = self
            .algebra
            .basis()
            .iter()
            .map(|x| masked_projection(&self.weight_basis, &self.weight_basis_inv, x, keep))
            .collect();
        self.algebra.span(&proj)
    }

    /// The pair `(δ, ε)` used to build `X_α` with `α = −δ + ε`, choosing the
    /// admissible representation with the largest `p(δ)`.
    fn admissible_pair(&self, alpha: &[i64]) -> Option<(usize, usize)> {
        let w = &self.reference.weights;
        let mut best: Option<(usize, usize)> = None;
        for a in 0..w.len() {
            for b in 0..w.len() {
                let diff_ok = w[b].coords.iter().zip(&w[a].coords).zip(alpha).all(|((x, y), z)| x - y == *z);
                if diff_ok && self.check_admissible(a, b).is_ok() && best.is_none_or(|(ba, _)| w[a].p > w[ba].p) {
                    best = Some((a, b));
                }
            }
        }
        best
    }

    fn check_admissible(&self, a: usize, b: usize) -> Result<bool> {
        let w = &self.reference.weights;
        let m = self.m();
        let doubling = w[a].coords.iter().zip(&w[b].coords).all(|(x, y)| x == &-y);
        if a == b || w[a].coords == w[b].coords {
            return Err(Error::InadmissibleWeights);
        }
        if doubling {
            if m % 2 == 0 || 2 * w[a].p <= m {
                return Err(Error::InadmissibleWeights);
            }
        } else if w[a].p <= w[b].p || 2 * w[a].p < m {
            return Err(Error::InadmissibleWeights);
        }
        Ok(doubling)
    }

    /// `X_α` for `α = −δ + ε` (or `α = −2δ` when `ε = −δ`), with `δ, ε` given
    /// as weight-basis indices: `X_α v_δ = (−1)^{p_ε − p_δ + 1} i v_ε`, resp.
    /// `X_α v_δ = −i v̄_δ`.
    pub fn root_vector(&self, delta: usize, eps: usize) -> Result<Matrix> {
        let doubling = self.check_admissible(delta, eps)?;
        let w = &self.reference.weights;
        let alpha: Vec<i64> = w[eps].coords.iter().zip(&w[delta].coords).map(|(x, y)| x - y).collect();
        let space = self.root_space(&alpha)?;
        if space.dim() != 1 {
            return Err(Error::InadmissibleWeights);
        }
        let x0 = self.algebra.element(&space.basis()[0]);
        let in_weights = &(&self.weight_basis_inv * &x0) * &self.weight_basis;
        let c0 = in_weights[(eps, delta)].clone();
        let target = if doubling {
            -Scalar::i()
        } else {
            let sign = if (w[eps].p as i64 - w[delta].p as i64 + 1).rem_euclid(2) == 0 { 1 } else { -1 };
            Scalar::i().scale(&crate::algebra::int(sign))
        };
        if c0.is_zero() {
            return Err(Error::InadmissibleWeights);
        }
        Ok(x0.scale(&(&target / &c0)))
    }

    pub fn root(&self, coords: &[i64]) -> Option<&RootDatum> {
        self.roots.iter().find(|r| r.coords == coords)
    }

    pub fn root_by_id(&self, id: &str) -> Result<&RootDatum> {
        self.roots.iter().find(|r| r.id() == id).ok_or_else(|| Error::UnknownRoot(id.to_string()))
    }

    pub fn roots_of_degree(&self, r: i64) -> impl Iterator<Item = &RootDatum> {
        self.roots.iter().filter(move |x| x.degree == r)
    }

    /// Writes an element of `t_C` as `Σ c_j T_j`; `None` if it is not in `t_C`.
    pub fn cartan_coords(&self, z: &Matrix) -> Option<Vec<Scalar>> {
        let d = &(&self.weight_basis_inv * z) * &self.weight_basis;
        let n = d.rows();
        for a in 0..n {
            for b in 0..n {
                if a != b && !d[(a, b)].is_zero() {
                    return None;
                }
            }
        }
        let c: Vec<Scalar> = (0..self.rank()).map(|j| d[(2 * j, 2 * j)].clone()).collect();
        let rebuilt = self.cartan.iter().zip(&c).fold(Matrix::zeros(n, n), |acc, (t, x)| &acc + &t.scale(x));
        (rebuilt == *z).then_some(c)
    }

    /// `α(Z)` for `Z ∈ t_C`.
    pub fn eval_root(&self, alpha: &[i64], z: &Matrix) -> Option<Scalar> {
        let c = self.cartan_coords(z)?;
        Some(alpha.iter().zip(&c).fold(Scalar::zero(), |acc, (a, x)| acc + x.scale(&crate::algebra::int(*a))))
    }

    /// `φ_α` for a root of odd degree.
    pub fn sl2_embedding(&self, root: &RootDatum) -> Result<Sl2Embedding> {
        if root.is_compact() {
            return Err(Error::CompactRoot);
        }
        let z = root.vector.commutator(&root.vector.conj());
        let val = self.eval_root(&root.coords, &z).ok_or_else(|| Error::Internal("Z_α not in t".into()))?;
        if val == Scalar::from_int(2) {
            return Ok(Sl2Embedding::from_root_vector(&root.vector));
        }
        // Roots through the zero weight only reach α(Z_α) = 1 with the
        // normalized vectors; |1 + i|² = 2 restores the sl(2) relations
        // while keeping Y_α and N_α rational.
        if val == Scalar::one() {
            let t = Scalar::gaussian(crate::algebra::int(1), crate::algebra::int(1));
            return Ok(Sl2Embedding::from_root_vector(&root.vector.scale(&t)));
        }
        Err(Error::Internal(format!("unexpected normalization α(Z_α) = {val}")))
    }

    /// Elements of `t_C` of the form `i·t` with `t` real span `i t`; this
    /// returns a basis of the real span of the `T_j`'s `i`-multiples.
    pub fn t_real_basis(&self) -> Vec<Matrix> {
        self.cartan.iter().map(|t| t.scale(&Scalar::i())).collect()
    }
}

fn lex_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Vector;

    fn sys(m: usize, h: &[usize]) -> GradedSystem {
        GradedSystem::build(&HodgeNumbers::new(m, h.to_vec()).unwrap()).unwrap()
    }

    fn weight_vec(s: &GradedSystem, a: usize) -> Vector {
        s.reference.weights[a].vector.clone()
    }

    fn scaled(v: &Vector, c: &Scalar) -> Vector {
        v.iter().map(|x| x * c).collect()
    }

    #[test]
    fn elliptic_model_matrices() {
        let s = sys(1, &[1, 1]);
        let alpha = s.root(&[-2]).unwrap();
        assert_eq!(alpha.degree, -1);
        let half = Scalar::from_rational(crate::algebra::rat(1, 2));
        let i = Scalar::i();
        let x_plus = Matrix::from_rows(vec![vec![-&i, Scalar::one()], vec![Scalar::one(), i.clone()]]).unwrap().scale(&half);
        let x_minus = Matrix::from_rows(vec![vec![i.clone(), Scalar::one()], vec![Scalar::one(), -&i]]).unwrap().scale(&half);
        let z = Matrix::from_rows(vec![vec![Scalar::zero(), -&i], vec![i.clone(), Scalar::zero()]]).unwrap();
        let e = s.sl2_embedding(alpha).unwrap();
        assert_eq!(e.x_plus, x_plus);
        assert_eq!(e.x_minus, x_minus);
        assert_eq!(e.z, z);
        assert_eq!(e.y, Matrix::from_ints(&[&[-1, 0], &[0, 1]]));
        assert_eq!(e.n_plus, Matrix::from_ints(&[&[0, 0], &[1, 0]]));
        assert_eq!(e.n_minus, Matrix::from_ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(s.eval_root(&alpha.coords, &e.z), Some(Scalar::from_int(2)));
    }

    #[test]
    fn grading_dims_sl2() {
        let s = sys(1, &[1, 1]);
        let d = s.grading.dims();
        assert_eq!((d[&-1], d[&0], d[&1]), (1, 1, 1));
        let e = s.sl2_embedding(s.root(&[-2]).unwrap()).unwrap();
        let c = s.algebra.coords(&e.x_plus).unwrap();
        assert_eq!(s.grading.degree_of(&c), Some(-1));
    }

    #[test]
    fn root_counts() {
        for (m, h, n_roots, rank) in [
            (1, vec![1, 1], 2, 1),
            (1, vec![2, 2], 8, 2),
            (2, vec![1, 2, 1], 4, 2),
            (2, vec![1, 1, 1], 2, 1),
            (3, vec![1, 1, 1, 1], 8, 2),
            (2, vec![1, 3, 1], 8, 2),
        ] {
            let s = sys(m, &h);
            assert_eq!(s.roots.len(), n_roots, "{h:?}");
            assert_eq!(s.roots.len() + rank, s.algebra.dim(), "{h:?}");
        }
    }

    #[test]
    fn zero_weight_iff_middle_odd() {
        assert!(sys(2, &[1, 1, 1]).reference.has_zero_weight);
        assert!(!sys(2, &[1, 2, 1]).reference.has_zero_weight);
    }

    #[test]
    fn paper_formulas_hold_for_constructed_vectors() {
        for (m, h) in [(1, vec![2, 2]), (2, vec![1, 2, 1]), (2, vec![1, 1, 1]), (3, vec![1, 1, 1, 1]), (4, vec![1, 1, 1, 1, 1])] {
            let s = sys(m, &h);
            let w = &s.reference.weights;
            for r in s.roots.iter().filter(|r| r.construction.is_some()) {
                let (a, b) = r.construction.unwrap();
                let x = &r.vector;
                assert!(s.algebra.is_element(x));
                let doubling = w[a].coords.iter().zip(&w[b].coords).all(|(p, q)| *p == -q);
                let z = x.commutator(&x.conj());
                let val = s.eval_root(&r.coords, &z).unwrap();
                if doubling {
                    assert_eq!(x.apply(&weight_vec(&s, a)), scaled(&weight_vec(&s, b), &-Scalar::i()));
                    assert_eq!(val, Scalar::from_int(2));
                } else {
                    let sign = if (w[b].p + 1 + w[a].p) % 2 == 0 { 1 } else { -1 };
                    let coeff = Scalar::i().scale(&crate::algebra::int(sign));
                    assert_eq!(x.apply(&weight_vec(&s, a)), scaled(&weight_vec(&s, b), &coeff));
                    // X_α v̄_2 = i v̄_1
                    let vb2: Vector = weight_vec(&s, b).iter().map(Scalar::conj).collect();
                    let vb1: Vector = weight_vec(&s, a).iter().map(Scalar::conj).collect();
                    assert_eq!(x.apply(&vb2), scaled(&vb1, &Scalar::i()), "{h:?} {a} {b}");
                    let through_zero = s.reference.has_zero_weight && b == w.len() - 1;
                    let expected = if through_zero { sign } else { 2 * sign };
                    assert_eq!(val, Scalar::from_int(expected));
                    assert_eq!(r.degree, w[b].p as i64 - w[a].p as i64);
                }
            }
        }
    }

    #[test]
    fn sp4_mixed_root_normalization() {
        let s = sys(1, &[2, 2]);
        // weights ε1 of degree (1,0) and −ε2 of degree (0,1): α = −ε1 − ε2
        let x = s.root_vector(0, 3).unwrap();
        // oracle: bracket with the conjugate directly and read the diagonal
        let z = x.commutator(&x.conj());
        let d = &(&s.weight_basis_inv * &z) * &s.weight_basis;
        let val = &d[(3, 3)] - &d[(0, 0)];
        assert_eq!(val, Scalar::from_int(2));
    }

    #[test]
    fn inadmissible_pairs_error() {
        let s = sys(2, &[1, 2, 1]);
        assert_eq!(s.root_vector(0, 1), Err(Error::InadmissibleWeights));
        assert_eq!(s.root_vector(2, 0), Err(Error::InadmissibleWeights));
        let s = sys(2, &[1, 3, 1]);
        let compact = s.roots.iter().find(|r| r.is_compact()).unwrap();
        assert_eq!(s.sl2_embedding(compact).unwrap_err(), Error::CompactRoot);
    }

    #[test]
    fn sl2_relations_and_reality() {
        for (m, h) in [(1, vec![2, 2]), (2, vec![1, 2, 1]), (3, vec![1, 1, 1, 1]), (2, vec![1, 1, 1]), (2, vec![1, 3, 1])] {
            let s = sys(m, &h);
            for r in s.roots.iter().filter(|r| !r.is_compact()) {
                let e = s.sl2_embedding(r).unwrap();
                assert_eq!(e.z.commutator(&e.x_plus), e.x_plus.scale(&Scalar::from_int(2)));
                assert_eq!(e.z.commutator(&e.x_minus), e.x_minus.scale(&Scalar::from_int(-2)));
                assert!(e.y.is_rational() && e.n_plus.is_rational() && e.n_minus.is_rational());
                assert_eq!(e.y.commutator(&e.n_plus), e.n_plus.scale(&Scalar::from_int(2)));
                assert_eq!(e.y.commutator(&e.n_minus), e.n_minus.scale(&Scalar::from_int(-2)));
                assert_eq!(e.n_plus.commutator(&e.n_minus), e.y);
                let span = s.algebra.span(&[e.z.clone(), e.x_plus.clone(), e.x_minus.clone()]).unwrap();
                assert_eq!(span.dim(), 3);
            }
        }
    }

    #[test]
    fn opposite_root_vector_is_conjugate() {
        let s = sys(2, &[1, 1, 1]);
        for r in &s.roots {
            let neg: Vec<i64> = r.coords.iter().map(|x| -x).collect();
            assert_eq!(s.root(&neg).unwrap().vector, r.vector.conj());
        }
    }
}
