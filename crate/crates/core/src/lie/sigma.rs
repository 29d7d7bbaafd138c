//! Strongly orthogonal roots, the split Cartan `a_R` and the Cayley transform.

use crate::algebra::{integer_eigenspaces, Matrix, Scalar, Subspace, Vector};
use crate::error::{Error, Result};
use crate::hodge::HodgeNumbers;

use super::roots::{GradedSystem, Sl2Embedding};

/// Real rank `s` of `g_R`.
pub fn rank_s(h: &HodgeNumbers) -> usize {
    let m = h.m;
    if m % 2 == 1 {
        return (0..=m).filter(|&p| 2 * p > m).map(|p| h.h[p]).sum();
    }
    let n = m / 2;
    let a: usize = (0..=m).filter(|&p| (p as i64 - n as i64).rem_euclid(2) == 0).map(|p| h.h[p]).sum();
    let b = h.dim() - a;
    a.min(b)
}

/// `Σ = {γ_1, …, γ_s}` with the `sl(2)` data of each root.
#[derive(Clone, Debug)]
pub struct StronglyOrthogonalSet {
    pub roots: Vec<Vec<i64>>,
    pub embeddings: Vec<Sl2Embedding>,
}

impl StronglyOrthogonalSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// The basis `Y_{γ_j}` of `a_R`.
    pub fn y_basis(&self) -> Vec<Matrix> {
        self.embeddings.iter().map(|e| e.y.clone()).collect()
    }

    pub fn z_basis(&self) -> Vec<Matrix> {
        self.embeddings.iter().map(|e| e.z.clone()).collect()
    }

    /// `Σ_j c_j Y_{γ_j}`.
    pub fn y_combination(&self, c: &[Scalar]) -> Matrix {
        let n = self.embeddings.first().map_or(0, |e| e.y.rows());
        self.embeddings.iter().zip(c).fold(Matrix::zeros(n, n), |acc, (e, x)| &acc + &e.y.scale(x))
    }

    /// Coordinates of `Y` in the basis `Y_{γ_j}`, if `Y ∈ a_R`.
    pub fn y_coords(&self, y: &Matrix) -> Option<Vector> {
        if self.is_empty() {
            return y.is_zero().then(Vec::new);
        }
        let n = y.rows();
        let cols: Vec<Vector> = self.embeddings.iter().map(|e| e.y.entries().to_vec()).collect();
        let a = Matrix::from_columns(n * n, &cols);
        let c = a.solve(y.entries())?;
        (self.y_combination(&c) == *y).then_some(c)
    }
}

/// Builds Σ: `{−2ε_j}` for odd weight, and for even weight pairs
/// `−ε_1 ± ε_2` matching a weight with `p − n` even against one with `p − n`
/// odd, greedily by decreasing `p`.
///
/// When `dim H` is odd and an odd-parity weight is left unpaired, the root
/// `−ε` through the zero weight completes Σ to `rank_s(h)` elements.
pub fn build_sigma(sys: &GradedSystem) -> Result<StronglyOrthogonalSet> {
    let x0 = &sys.reference;
    let r = x0.rank();
    let m = x0.m();
    let unit = |j: usize, s: i64| {
        let mut v = vec![0i64; r];
        v[j] = s;
        v
    };
    let mut roots: Vec<Vec<i64>> = Vec::new();
    if m % 2 == 1 {
        roots.extend((0..r).map(|j| unit(j, -2)));
    } else {
        let n = m / 2;
        let (even, odd): (Vec<usize>, Vec<usize>) = (0..r).partition(|&j| (x0.pair_degrees[j] - n) % 2 == 0);
        for (&e, &o) in even.iter().zip(&odd) {
            let (first, second) = if x0.pair_degrees[e] > x0.pair_degrees[o] { (e, o) } else { (o, e) };
            let mut plus = unit(first, -1);
            plus[second] += 1;
            let mut minus = unit(first, -1);
            minus[second] -= 1;
            roots.push(plus);
            roots.push(minus);
        }
        if x0.has_zero_weight && odd.len() > even.len() {
            roots.push(unit(odd[even.len()], -1));
        }
    }
    let mut embeddings = Vec::with_capacity(roots.len());
    for g in &roots {
        let datum = sys.root(g).ok_or_else(|| Error::Internal(format!("{} is not a root", super::root_id(g))))?;
        embeddings.push(sys.sl2_embedding(datum)?);
    }
    let sigma = StronglyOrthogonalSet { roots, embeddings };
    verify_sigma(sys, &sigma)?;
    Ok(sigma)
}

/// Pairwise strong orthogonality, odd degrees, and commuting `Y`'s.
pub fn verify_sigma(sys: &GradedSystem, sigma: &StronglyOrthogonalSet) -> Result<()> {
    for (i, a) in sigma.roots.iter().enumerate() {
        let da = sys.root(a).ok_or_else(|| Error::Internal("Σ root missing".into()))?;
        if da.is_compact() {
            return Err(Error::Internal("Σ contains a compact root".into()));
        }
        for b in &sigma.roots[i + 1..] {
            if !strongly_orthogonal(sys, a, b) {
                return Err(Error::Internal("Σ not strongly orthogonal".into()));
            }
        }
    }
    let ys = sigma.y_basis();
    for (i, a) in ys.iter().enumerate() {
        for b in &ys[i + 1..] {
            if !a.commutator(b).is_zero() {
                return Err(Error::Internal("Y_γ do not commute".into()));
            }
        }
    }
    Ok(())
}

/// Neither `a + b` nor `a − b` is a root (and `a ≠ ±b`).
pub fn strongly_orthogonal(sys: &GradedSystem, a: &[i64], b: &[i64]) -> bool {
    let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let zero = |v: &[i64]| v.iter().all(|&x| x == 0);
    !zero(&sum) && !zero(&diff) && sys.root(&sum).is_none() && sys.root(&diff).is_none()
}

/// `exp(−iπ/4 · A)` for a semisimple `A` with integer eigenvalues, assembled
/// from its eigenprojectors.
pub fn cayley_element(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    let spaces = integer_eigenspaces(a, n as i64)?;
    let eigen: Vec<i64> = spaces.iter().map(|(l, _)| *l).collect();
    let id = Matrix::identity(n);
    let mut c = Matrix::zeros(n, n);
    for &l in &eigen {
        // Lagrange projector onto the λ-eigenspace
        let mut proj = id.clone();
        for &mu in eigen.iter().filter(|&&mu| mu != l) {
            let factor = (a - &id.scale(&Scalar::from_int(mu))).scale_rational(&crate::algebra::rat(1, l - mu));
            proj = &proj * &factor;
        }
        c = &c + &proj.scale(&Scalar::eighth_root_pow(l));
    }
    Ok(c)
}

/// The Cayley element `C = ∏_{γ∈Σ} C_γ` with `C_γ = exp(−iπ/4 (X_γ + X_{−γ}))`.
#[derive(Clone, Debug)]
pub struct CayleyTransform {
    pub c: Matrix,
    pub c_inv: Matrix,
}

impl CayleyTransform {
    pub fn new(sigma: &StronglyOrthogonalSet, n: usize) -> Result<Self> {
        let mut c = Matrix::identity(n);
        for e in &sigma.embeddings {
            c = &c * &cayley_element(&e.sigma())?;
        }
        Self::from_element(c)
    }

    pub fn from_element(c: Matrix) -> Result<Self> {
        let c_inv = c.inverse().ok_or_else(|| Error::Internal("Cayley element not invertible".into()))?;
        Ok(CayleyTransform { c, c_inv })
    }

    /// `Ad(C)X = C X C⁻¹`.
    pub fn ad(&self, x: &Matrix) -> Matrix {
        &(&self.c * x) * &self.c_inv
    }

    pub fn ad_inv(&self, x: &Matrix) -> Matrix {
        &(&self.c_inv * x) * &self.c
    }
}

/// `a_R` as a coordinate subspace of `g`.
pub fn split_cartan(sys: &GradedSystem, sigma: &StronglyOrthogonalSet) -> Result<Subspace> {
    sys.algebra.span(&sigma.y_basis())
}

/// Signature `(positive, negative)` of a real symmetric rational matrix, by
/// symmetric Gaussian elimination.
pub fn signature(g: &Matrix) -> (usize, usize) {
    let mut a = g.clone();
    let n = a.rows();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_sym(&mut a, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // replace e_k by e_k + e_j to create a nonzero pivot
                add_sym(&mut a, k, j);
                if a[(k, k)].is_zero() {
                    let minus = Scalar::from_int(-2);
                    add_scaled_sym(&mut a, k, j, &minus);
                }
            } else {
                k += 1;
                continue;
            }
        }
        let p = a[(k, k)].clone();
        match p.real_sign() {
            Some(std::cmp::Ordering::Greater) => pos += 1,
            Some(std::cmp::Ordering::Less) => neg += 1,
            _ => {}
        }
        let inv = p.inv().expect("nonzero pivot");
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] * &inv;
            let neg_f = -f;
            add_scaled_sym(&mut a, i, k, &neg_f);
        }
        k += 1;
    }
    (pos, neg)
}

fn swap_sym(a: &mut Matrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

fn add_sym(a: &mut Matrix, i: usize, j: usize) {
    add_scaled_sym(a, i, j, &Scalar::one());
}

/// Row and column operation `e_i ← e_i + f·e_j`.
fn add_scaled_sym(a: &mut Matrix, i: usize, j: usize, f: &Scalar) {
    let n = a.rows();
    for c in 0..n {
        let t = &a[(j, c)] * f;
        a[(i, c)] += &t;
    }
    for r in 0..n {
        let t = &a[(r, j)] * f;
        a[(r, i)] += &t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn sys(m: usize, h: &[usize]) -> GradedSystem {
        GradedSystem::build(&HodgeNumbers::new(m, h.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn rank_formulas() {
        assert_eq!(rank_s(&HodgeNumbers::new(1, vec![2, 2]).unwrap()), 2);
        assert_eq!(rank_s(&HodgeNumbers::new(1, vec![3, 3]).unwrap()), 3);
        assert_eq!(rank_s(&HodgeNumbers::new(2, vec![1, 2, 1]).unwrap()), 2);
        assert_eq!(rank_s(&HodgeNumbers::new(2, vec![1, 20, 1]).unwrap()), 2);
        assert_eq!(rank_s(&HodgeNumbers::new(2, vec![1, 1, 1]).unwrap()), 1);
    }

    #[test]
    fn paper_sigma_examples() {
        let s = sys(1, &[2, 2]);
        assert_eq!(build_sigma(&s).unwrap().roots, vec![vec![-2, 0], vec![0, -2]]);
        let s = sys(2, &[1, 2, 1]);
        assert_eq!(build_sigma(&s).unwrap().roots, vec![vec![-1, 1], vec![-1, -1]]);
        let s = sys(1, &[1, 1]);
        let sigma = build_sigma(&s).unwrap();
        assert_eq!(sigma.roots, vec![vec![-2]]);
        assert_eq!(sigma.embeddings[0].y, Matrix::from_ints(&[&[-1, 0], &[0, 1]]));
    }

    #[test]
    fn sigma_size_matches_rank() {
        for (m, h) in [
            (1, vec![1, 1]),
            (1, vec![2, 2]),
            (2, vec![1, 2, 1]),
            (2, vec![1, 1, 1]),
            (2, vec![1, 3, 1]),
            (2, vec![2, 1, 2]),
            (3, vec![1, 1, 1, 1]),
            (4, vec![1, 1, 1, 1, 1]),
        ] {
            let hn = HodgeNumbers::new(m, h.clone()).unwrap();
            let s = GradedSystem::build(&hn).unwrap();
            let sigma = build_sigma(&s).unwrap();
            assert_eq!(sigma.len(), rank_s(&hn), "{h:?}");
            let a = split_cartan(&s, &sigma).unwrap();
            assert_eq!(a.dim(), sigma.len());
            for y in sigma.y_basis() {
                assert!(y.is_rational());
            }
        }
    }

    /// Oracle: largest set of odd-degree roots, taken up to sign, that is
    /// pairwise strongly orthogonal.
    fn brute_force_rank(s: &GradedSystem) -> usize {
        let cands: Vec<Vec<i64>> = s
            .roots
            .iter()
            .filter(|r| r.degree % 2 != 0 && r.degree < 0)
            .map(|r| r.coords.clone())
            .collect();
        let mut best = 0;
        let n = cands.len();
        for mask in 0u32..(1 << n) {
            let chosen: Vec<&Vec<i64>> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &cands[i]).collect();
            if chosen.len() <= best {
                continue;
            }
            let ok = chosen.iter().enumerate().all(|(i, a)| chosen[i + 1..].iter().all(|b| strongly_orthogonal(s, a, b)));
            if ok {
                best = chosen.len();
            }
        }
        best
    }

    #[test]
    fn brute_force_agrees_on_small_cases() {
        for (m, h) in [(2, vec![1, 2, 1]), (1, vec![2, 2]), (2, vec![1, 1, 1]), (2, vec![1, 3, 1]), (3, vec![1, 1, 1, 1])] {
            let hn = HodgeNumbers::new(m, h.clone()).unwrap();
            assert_eq!(brute_force_rank(&GradedSystem::build(&hn).unwrap()), rank_s(&hn), "{h:?}");
        }
    }

    #[test]
    fn witt_index_for_large_middle() {
        let hn = HodgeNumbers::new(2, vec![1, 20, 1]).unwrap();
        let x0 = crate::hodge::build_reference(&hn).unwrap();
        let (p, q) = signature(x0.lattice.gram());
        assert_eq!((p, q), (20, 2));
        assert_eq!(rank_s(&hn), p.min(q));
    }

    #[test]
    fn signature_handles_zero_diagonal() {
        assert_eq!(signature(&Matrix::from_ints(&[&[0, 1], &[1, 0]])), (1, 1));
        assert_eq!(signature(&Matrix::from_ints(&[&[2, 1], &[1, 2]])), (2, 0));
    }

    #[test]
    fn model_cayley_element() {
        let s = sys(1, &[1, 1]);
        let sigma = build_sigma(&s).unwrap();
        let c = CayleyTransform::new(&sigma, 2).unwrap();
        let r = Scalar::new(rat(0, 1), rat(0, 1), rat(1, 2), rat(0, 1));
        let ir = Scalar::new(rat(0, 1), rat(0, 1), rat(0, 1), rat(-1, 2));
        let expected = Matrix::from_rows(vec![vec![r.clone(), ir.clone()], vec![ir, r]]).unwrap();
        assert_eq!(c.c, expected);
        let e = &sigma.embeddings[0];
        assert_eq!(c.ad(&e.y), e.z);
        assert_eq!(c.ad(&e.n_plus), e.x_plus);
    }

    #[test]
    fn cayley_identities_and_brackets() {
        for (m, h) in [(1, vec![2, 2]), (2, vec![1, 2, 1]), (2, vec![1, 1, 1]), (3, vec![1, 1, 1, 1])] {
            let s = sys(m, &h);
            let sigma = build_sigma(&s).unwrap();
            let c = CayleyTransform::new(&sigma, s.dim()).unwrap();
            for e in &sigma.embeddings {
                assert_eq!(c.ad(&e.y), e.z, "{h:?}");
                assert_eq!(c.ad(&e.n_plus), e.x_plus, "{h:?}");
            }
            let b = s.algebra.basis();
            for x in b.iter().take(4) {
                for y in b.iter().take(4) {
                    assert_eq!(c.ad(&x.commutator(y)), c.ad(x).commutator(&c.ad(y)));
                }
            }
        }
    }

    #[test]
    fn split_cartan_is_maximal_in_p() {
        for (m, h) in [(1, vec![2, 2]), (2, vec![1, 2, 1]), (2, vec![1, 3, 1])] {
            let s = sys(m, &h);
            let sigma = build_sigma(&s).unwrap();
            let p = s.grading.sum_where(s.algebra.dim(), |r| r % 2 != 0);
            let a = split_cartan(&s, &sigma).unwrap();
            assert!(p.contains_subspace(&a));
            let cent = s.algebra.centralizer(&sigma.y_basis());
            assert_eq!(cent.intersection(&p), a, "{h:?}");
        }
    }
}
