//! Hodge numbers, the polarized reference structure `x_0`, and membership
//! tests for the flag variety `Ď` and the period domain `D`.

use serde::{Deserialize, Serialize};

use crate::algebra::{hermitian_positive, Direction, Flag, Matrix, Scalar, SesquiForm, Subspace, Symmetry, Vector};
use crate::error::{Error, Result};

/// `h[p] = h^{p, m-p}` for `0 ≤ p ≤ m`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeNumbers {
    pub m: usize,
    pub h: Vec<usize>,
}

impl HodgeNumbers {
    pub fn new(m: usize, h: Vec<usize>) -> Result<Self> {
        let hn = HodgeNumbers { m, h };
        hn.validate()?;
        Ok(hn)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidHodgeNumbers("weight must be positive".into()));
        }
        if self.h.len() != self.m + 1 {
            return Err(Error::InvalidHodgeNumbers(format!("expected {} entries, got {}", self.m + 1, self.h.len())));
        }
        if (0..=self.m).any(|p| self.h[p] != self.h[self.m - p]) {
            return Err(Error::InvalidHodgeNumbers("h^{p,q} must equal h^{q,p}".into()));
        }
        if self.dim() == 0 {
            return Err(Error::InvalidHodgeNumbers("total dimension is zero".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.h.iter().sum()
    }

    pub fn is_odd_weight(&self) -> bool {
        self.m % 2 == 1
    }

    /// `Σ_{q ≥ p} h^{q, m-q}`.
    pub fn f_dim(&self, p: usize) -> usize {
        self.h.iter().skip(p).sum()
    }
}

/// A weight line `H^ε` with its normalized weight vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightDatum {
    /// Coordinates of `ε` against the compact Cartan basis.
    pub coords: Vec<i64>,
    /// `ε` has degree `(p, m - p)`.
    pub p: usize,
    pub vector: Vector,
}

/// `H = C^n` with its rational polarization `S`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolarizedLattice {
    pub m: usize,
    pub s: SesquiForm,
}

impl PolarizedLattice {
    pub fn new(m: usize, gram: Matrix) -> Result<Self> {
        let symmetry = if m % 2 == 0 { Symmetry::Symmetric } else { Symmetry::Skew };
        if !gram.is_rational() {
            return Err(Error::DegenerateForm("polarization must be rational".into()));
        }
        let s = SesquiForm::new(gram, symmetry)?;
        if !s.is_nondegenerate() {
            return Err(Error::DegenerateForm("polarization is degenerate".into()));
        }
        Ok(PolarizedLattice { m, s })
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }

    pub fn gram(&self) -> &Matrix {
        &self.s.gram
    }

    /// True when `gᵀ S g = S`.
    pub fn preserves(&self, g: &Matrix) -> bool {
        &(&g.transpose() * self.gram()) * g == *self.gram()
    }
}

/// A decreasing filtration `F^0 ⊇ ⋯ ⊇ F^m` of `H`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeFiltration {
    pub flag: Flag,
}

impl HodgeFiltration {
    pub fn new(members: Vec<Subspace>) -> Self {
        HodgeFiltration { flag: Flag::new(Direction::Decreasing, 0, members) }
    }

    /// Builds `F^p` as the span of the first `dim F^p` vectors of an adapted
    /// basis listed with `F^m` first.
    pub fn from_adapted_basis(h: &HodgeNumbers, basis: &[Vector]) -> Result<Self> {
        let n = h.dim();
        if basis.len() != n || basis.iter().any(|v| v.len() != n) {
            return Err(Error::NotInFlagVariety);
        }
        let members = (0..=h.m).map(|p| Subspace::span(n, &basis[..h.f_dim(p)])).collect();
        Ok(Self::new(members))
    }

    pub fn f(&self, p: i64) -> Subspace {
        self.flag.get(p)
    }

    pub fn ambient(&self) -> usize {
        self.flag.ambient()
    }

    /// Image under a linear automorphism.
    pub fn transform(&self, g: &Matrix) -> Self {
        Self::new(self.flag.members.iter().map(|s| s.image_under(g)).collect())
    }

    /// Adapted basis listing `F^m` first, then complements down to `F^0`.
    pub fn adapted_basis(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = Vec::new();
        let mut prev = Subspace::zero(self.ambient());
        for s in self.flag.members.iter().rev() {
            out.extend(prev.complement_in(s));
            prev = s.clone();
        }
        out
    }
}

/// The basepoint `x_0`: lattice, weight lines, Hodge pieces and `F_0`.
#[derive(Clone, Debug)]
pub struct ReferenceStructure {
    pub hodge: HodgeNumbers,
    pub lattice: PolarizedLattice,
    /// Degrees `p_j` of the positive weights `ε_j`, in basis order.
    pub pair_degrees: Vec<usize>,
    pub has_zero_weight: bool,
    /// Weight lines in weight-basis order: `v_0, v̄_0, v_1, v̄_1, …, [v_zero]`.
    pub weights: Vec<WeightDatum>,
    /// `H^{p, m-p}_0` indexed by `p`.
    pub pieces: Vec<Subspace>,
    pub f0: HodgeFiltration,
}

impl ReferenceStructure {
    pub fn rank(&self) -> usize {
        self.pair_degrees.len()
    }

    pub fn dim(&self) -> usize {
        self.hodge.dim()
    }

    pub fn m(&self) -> usize {
        self.hodge.m
    }

    /// Columns are the weight vectors in weight-basis order.
    pub fn weight_basis(&self) -> Matrix {
        let cols: Vec<Vector> = self.weights.iter().map(|w| w.vector.clone()).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Hodge degree `p` of each weight-basis vector.
    pub fn weight_degrees(&self) -> Vec<usize> {
        self.weights.iter().map(|w| w.p).collect()
    }
}

/// Builds the canonical reference structure for `h`.
///
/// The real basis comes in pairs `e_{2j}, e_{2j+1}` with weight vectors
/// `v_j = e_{2j} − i e_{2j+1}`; the pairs are ordered by decreasing `p`, and a
/// zero-weight vector (m even, `h^{n,n}` odd) goes last.
pub fn build_reference(h: &HodgeNumbers) -> Result<ReferenceStructure> {
    h.validate()?;
    let m = h.m;
    let dim = h.dim();
    let mut pair_degrees = Vec::new();
    for p in (0..=m).rev().filter(|&p| 2 * p > m) {
        pair_degrees.extend(std::iter::repeat_n(p, h.h[p]));
    }
    let mut has_zero_weight = false;
    if m % 2 == 0 {
        let n = m / 2;
        pair_degrees.extend(std::iter::repeat_n(n, h.h[n] / 2));
        has_zero_weight = h.h[n] % 2 == 1;
    }
    let r = pair_degrees.len();

    let mut gram = Matrix::zeros(dim, dim);
    for (j, &p) in pair_degrees.iter().enumerate() {
        let (a, b) = (2 * j, 2 * j + 1);
        if m % 2 == 1 {
            let k = (2 * p + 1 - m) / 2;
            let s = Scalar::from_int(if k % 2 == 0 { 1 } else { -1 });
            gram[(b, a)] = -&s;
            gram[(a, b)] = s;
        } else {
            let s = Scalar::from_int(if (p - m / 2) % 2 == 0 { 1 } else { -1 });
            gram[(a, a)] = s.clone();
            gram[(b, b)] = s;
        }
    }
    if has_zero_weight {
        gram[(2 * r, 2 * r)] = Scalar::from_int(2);
    }
    let lattice = PolarizedLattice::new(m, gram)?;

    let mut weights = Vec::with_capacity(dim);
    for (j, &p) in pair_degrees.iter().enumerate() {
        let mut e = vec![0i64; r];
        e[j] = 1;
        let mut v = vec![Scalar::zero(); dim];
        v[2 * j] = Scalar::one();
        v[2 * j + 1] = -Scalar::i();
        let vbar = v.iter().map(Scalar::conj).collect();
        weights.push(WeightDatum { coords: e.clone(), p, vector: v });
        weights.push(WeightDatum { coords: e.iter().map(|x| -x).collect(), p: m - p, vector: vbar });
    }
    if has_zero_weight {
        let mut v = vec![Scalar::zero(); dim];
        v[2 * r] = Scalar::one();
        weights.push(WeightDatum { coords: vec![0; r], p: m / 2, vector: v });
    }

    let pieces: Vec<Subspace> = (0..=m)
        .map(|p| {
            let vs: Vec<Vector> = weights.iter().filter(|w| w.p == p).map(|w| w.vector.clone()).collect();
            Subspace::span(dim, &vs)
        })
        .collect();
    let f0 = HodgeFiltration::new((0..=m).map(|p| sum_pieces(dim, &pieces[p..])).collect());
    Ok(ReferenceStructure { hodge: h.clone(), lattice, pair_degrees, has_zero_weight, weights, pieces, f0 })
}

fn sum_pieces(dim: usize, pieces: &[Subspace]) -> Subspace {
    pieces.iter().fold(Subspace::zero(dim), |acc, s| acc.sum(s))
}

/// `H^{p, m-p} = F^p ∩ conj(F^{m-p})`, requiring the pieces to span `H`.
pub fn hodge_decomposition(f: &HodgeFiltration, m: usize) -> Result<Vec<Subspace>> {
    let n = f.ambient();
    let pieces: Vec<Subspace> = (0..=m).map(|p| f.f(p as i64).intersection(&f.f((m - p) as i64).conj())).collect();
    let total: usize = pieces.iter().map(Subspace::dim).sum();
    if total != n || !sum_pieces(n, &pieces).is_full() {
        return Err(Error::NotHodgeDecomposition);
    }
    Ok(pieces)
}

/// The operator acting by `i^{p-q}` on `H^{p,q}`.
pub fn weil_operator(f: &HodgeFiltration, lattice: &PolarizedLattice) -> Result<Matrix> {
    let m = lattice.m;
    let pieces = hodge_decomposition(f, m)?;
    weil_from_pieces(&pieces, m, f.ambient())
}

fn weil_from_pieces(pieces: &[Subspace], m: usize, n: usize) -> Result<Matrix> {
    let mut cols = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for (p, piece) in pieces.iter().enumerate() {
        for v in piece.basis() {
            cols.push(v.clone());
            diag.push(Scalar::i_pow(2 * p as i64 - m as i64));
        }
    }
    let basis = Matrix::from_columns(n, &cols);
    let inv = basis.inverse().ok_or(Error::NotHodgeDecomposition)?;
    Ok(&(&basis * &Matrix::diagonal(&diag)) * &inv)
}

fn check_profile(f: &HodgeFiltration, lattice: &PolarizedLattice) -> Result<()> {
    let m = lattice.m;
    let n = lattice.dim();
    let members = &f.flag.members;
    if members.len() != m + 1 || f.ambient() != n || !members[0].is_full() || !f.flag.is_nested() {
        return Err(Error::NotInFlagVariety);
    }
    Ok(())
}

/// Checks the dimension profile against `h` and then `S(F^p, F^{m-p+1}) = 0`.
pub fn in_check_d_with(f: &HodgeFiltration, lattice: &PolarizedLattice, h: &HodgeNumbers) -> Result<bool> {
    check_profile(f, lattice)?;
    if (0..=h.m).any(|p| f.f(p as i64).dim() != h.f_dim(p)) {
        return Err(Error::NotInFlagVariety);
    }
    Ok(isotropic(f, lattice))
}

/// Isotropy test `S(F^p, F^{m-p+1}) = 0`; the profile must be a nested flag
/// of full length.
pub fn in_check_d(f: &HodgeFiltration, lattice: &PolarizedLattice) -> Result<bool> {
    check_profile(f, lattice)?;
    Ok(isotropic(f, lattice))
}

fn isotropic(f: &HodgeFiltration, lattice: &PolarizedLattice) -> bool {
    let m = lattice.m as i64;
    (1..=m).all(|p| lattice.s.annihilates(&f.f(p), &f.f(m - p + 1)))
}

/// Membership in `D`: isotropy plus positivity of `S(C·, ·̄)` on every `H^{p,q}`.
/// A filtration whose pieces do not decompose `H` is reported as outside `D`.
pub fn in_d(f: &HodgeFiltration, lattice: &PolarizedLattice) -> Result<bool> {
    if !in_check_d(f, lattice)? {
        return Ok(false);
    }
    let m = lattice.m;
    let pieces = match hodge_decomposition(f, m) {
        Ok(p) => p,
        Err(Error::NotHodgeDecomposition) => return Ok(false),
        Err(e) => return Err(e),
    };
    let c = weil_from_pieces(&pieces, m, f.ambient())?;
    let form = SesquiForm { gram: &c.transpose() * lattice.gram(), symmetry: Symmetry::Hermitian };
    for piece in pieces.iter().filter(|p| !p.is_zero()) {
        match hermitian_positive(&form, piece) {
            Ok(true) => {}
            Ok(false) | Err(Error::NotHermitian) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Dimensions attached to the period domain of `h`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DomainDimensions {
    pub dim_c_check_d: usize,
    pub dim_c_d: usize,
    pub dim_r_d: usize,
    pub dim_g: usize,
    pub dim_v: usize,
}

/// `dim_C Ď = Σ_{r<0} dim g^{r,-r}`, `dim_R D = dim g − dim v`.
pub fn domain_dimensions(h: &HodgeNumbers) -> Result<DomainDimensions> {
    let sys = crate::lie::GradedSystem::build(h)?;
    let graded = sys.grading.dims();
    let neg: usize = graded.iter().filter(|(r, _)| **r < 0).map(|(_, d)| *d).sum();
    let dim_v = graded.get(&0).copied().unwrap_or(0);
    let dim_g = sys.algebra.dim();
    Ok(DomainDimensions { dim_c_check_d: neg, dim_c_d: neg, dim_r_d: dim_g - dim_v, dim_g, dim_v })
}
