//! Boundary components: graded pieces of the weight filtration, the induced
//! forms `S_l`, primitive parts, limit Hodge numbers and fibration data.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{hermitian_positive, nilpotent_exp, Matrix, Scalar, SesquiForm, Subspace, Symmetry, Vector};
use crate::error::{Error, Result};
use crate::hodge::{domain_dimensions, HodgeFiltration, HodgeNumbers};
use crate::lie::Structure;
use crate::nilpotent::{canonical_parabolic, jm_triple, weight_filtration_h, Sl2Triple, WeightFiltration};
use crate::par::Exec;

/// `Gr^W_k = W_k / W_{k−1}` with lifts extending an echelon basis of `W_{k−1}`.
#[derive(Clone, Debug)]
pub struct GradedPieces {
    pub center: i64,
    /// Lift bases of the nonzero `Gr_k`.
    pub lifts: BTreeMap<i64, Vec<Vector>>,
    w: WeightFiltration,
}

impl GradedPieces {
    pub fn new(w: &WeightFiltration) -> Self {
        let (lo, hi) = w.range();
        let lifts = (lo..=hi)
            .map(|k| (k, w.get(k - 1).complement_in(&w.get(k))))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        GradedPieces { center: w.center, lifts, w: w.clone() }
    }

    pub fn dim(&self, k: i64) -> usize {
        self.lifts.get(&k).map_or(0, Vec::len)
    }

    pub fn ambient(&self) -> usize {
        self.w.flag.ambient()
    }

    /// Coordinates of the class of `v ∈ W_k` against the lifts of `Gr_k`.
    pub fn class(&self, k: i64, v: &[Scalar]) -> Option<Vector> {
        let lifts = self.lifts.get(&k).cloned().unwrap_or_default();
        let below = self.w.get(k - 1);
        let mut cols = below.basis().to_vec();
        let skip = cols.len();
        cols.extend(lifts);
        if cols.is_empty() {
            return v.iter().all(Scalar::is_zero).then(Vec::new);
        }
        let x = Matrix::from_columns(self.ambient(), &cols).solve(v)?;
        Some(x[skip..].to_vec())
    }

    /// Matrix of `op: Gr_from → Gr_to`, for `op` mapping `W_from` into `W_to`.
    pub fn induced_map(&self, op: &Matrix, from: i64, to: i64) -> Matrix {
        let cols: Vec<Vector> = self
            .lifts
            .get(&from)
            .map(|l| l.iter().map(|v| self.class(to, &op.apply(v)).expect("operator respects W")).collect())
            .unwrap_or_default();
        Matrix::from_columns(self.dim(to), &cols)
    }

    pub fn filtration(&self) -> &WeightFiltration {
        &self.w
    }
}

/// `S_l(ṽ, w̃) = S(v, N^l w)` on `Gr_{c+l}`.
#[derive(Clone, Debug)]
pub struct InducedForm {
    pub l: i64,
    pub gram: Matrix,
    /// `+1` symmetric, `−1` skew: the sign `(−1)^{m+l}` actually satisfied.
    pub parity: i64,
    /// `(−1)^{c+l}`.
    pub nominal_parity: i64,
    /// The value does not depend on the lifts.
    pub well_defined: bool,
    pub nondegenerate: bool,
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 { 1 } else { -1 }
}

fn bilinear(gram: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    crate::algebra::matrix::dot(x, &gram.apply(y))
}

pub fn induced_form(gram: &Matrix, m: usize, n: &Matrix, pieces: &GradedPieces, l: i64) -> InducedForm {
    let k = pieces.center + l;
    let nl = n.pow(l as u32);
    let lifts = pieces.lifts.get(&k).cloned().unwrap_or_default();
    let rows = lifts.iter().map(|a| lifts.iter().map(|b| bilinear(gram, a, &nl.apply(b))).collect()).collect();
    let g = Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zeros(0, 0));
    let w = pieces.filtration();
    let (top, below) = (w.get(k), w.get(k - 1));
    let kills = |a: &Subspace, b: &Subspace| a.basis().iter().all(|x| b.basis().iter().all(|y| bilinear(gram, x, &nl.apply(y)).is_zero()));
    let well_defined = kills(&below, &top) && kills(&top, &below);
    let nondegenerate = g.rank() == g.rows();
    InducedForm { l, gram: g, parity: sign(m as i64 + l), nominal_parity: sign(pieces.center + l), well_defined, nondegenerate }
}

/// `P_{c+l} = ker(N^{l+1}: Gr_{c+l} → Gr_{c−l−2})`, in lift coordinates.
#[derive(Clone, Debug)]
pub struct PrimitivePart {
    pub l: i64,
    pub space: Subspace,
}

pub fn primitive_parts(n: &Matrix, pieces: &GradedPieces) -> Vec<PrimitivePart> {
    let c = pieces.center;
    let top = pieces.lifts.keys().next_back().copied().unwrap_or(c);
    (0..=(top - c).max(0))
        .map(|l| {
            let k = c + l;
            let map = pieces.induced_map(&n.pow(l as u32 + 1), k, c - l - 2);
            let space = if map.rows() == 0 { Subspace::full(pieces.dim(k)) } else { map.kernel() };
            PrimitivePart { l, space }
        })
        .collect()
}

/// `dim Gr_{c+l} = Σ_{j≥0} dim P_{c+l+2j}` for every `l ≥ 0`.
pub fn lefschetz_holds(pieces: &GradedPieces, prims: &[PrimitivePart]) -> bool {
    let c = pieces.center;
    let p = |l: i64| prims.iter().find(|x| x.l == l).map_or(0, |x| x.space.dim());
    let top = prims.last().map_or(0, |x| x.l);
    (0..=top).all(|l| pieces.dim(c + l) == (l..=top).step_by(2).map(p).sum::<usize>() && pieces.dim(c + l) == pieces.dim(c - l))
}

/// Induced filtration `F^p P_{c+l}` and its dimension table.
#[derive(Clone, Debug)]
pub struct LimitLevel {
    pub l: i64,
    /// Hodge weight `m + l` of `P_{c+l}`.
    pub weight: i64,
    pub f: BTreeMap<i64, Subspace>,
}

impl LimitLevel {
    pub fn f_dims(&self) -> BTreeMap<i64, usize> {
        self.f.iter().map(|(p, s)| (*p, s.dim())).collect()
    }

    /// `h^{p, w−p} = f^p − f^{p+1}` for `0 ≤ p ≤ w`.
    pub fn hodge_numbers(&self) -> Vec<usize> {
        let d = |p: i64| self.f.get(&p).map_or(0, Subspace::dim);
        (0..=self.weight).map(|p| d(p) - d(p + 1)).collect()
    }
}

/// Induced filtrations on the primitive parts. Each `Gr_k` must carry a
/// Hodge structure of weight `k − c + m` under `F_∞`.
pub fn limit_hodge_numbers(f_inf: &HodgeFiltration, m: usize, pieces: &GradedPieces, prims: &[PrimitivePart]) -> Result<Vec<LimitLevel>> {
    let w = pieces.filtration();
    let shift = m as i64 - pieces.center;
    let induced = |p: i64, k: i64| -> Subspace {
        let inter = f_inf.f(p).intersection(&w.get(k));
        let classes: Vec<Vector> = inter.basis().iter().map(|v| pieces.class(k, v).expect("vector in W_k")).collect();
        Subspace::span(pieces.dim(k), &classes)
    };
    for &k in pieces.lifts.keys() {
        let weight = k + shift;
        let total: usize = (0..=weight).map(|p| induced(p, k).intersection(&induced(weight - p, k).conj()).dim()).sum();
        if total != pieces.dim(k) {
            return Err(Error::IncompatibleFiltration);
        }
    }
    Ok(prims
        .iter()
        .map(|prim| {
            let k = pieces.center + prim.l;
            let weight = k + shift;
            let f = (0..=weight).map(|p| (p, induced(p, k).intersection(&prim.space))).collect();
            LimitLevel { l: prim.l, weight, f }
        })
        .collect())
}

/// `i^{p−q} S_l(x, x̄) > 0` on every `P^{p,q}`; `None` for an empty level.
pub fn polarization_check(level: &LimitLevel, form: &InducedForm) -> Result<Option<bool>> {
    let w = level.weight;
    let total = level.f.get(&0).map_or(0, Subspace::dim);
    if total == 0 {
        return Ok(None);
    }
    let f = |p: i64| level.f.get(&p).cloned().unwrap_or_else(|| Subspace::zero(form.gram.rows()));
    let pieces: Vec<(i64, Subspace)> = (0..=w).map(|p| (p, f(p).intersection(&f(w - p).conj()))).collect();
    if pieces.iter().map(|(_, s)| s.dim()).sum::<usize>() != total {
        return Err(Error::NotHodgeOnPrimitive(level.l as usize));
    }
    for (p, piece) in pieces.iter().filter(|(_, s)| !s.is_zero()) {
        let gram = form.gram.scale(&Scalar::i_pow(2 * p - w));
        match hermitian_positive(&SesquiForm { gram, symmetry: Symmetry::Hermitian }, piece) {
            Ok(true) => {}
            Ok(false) | Err(Error::NotHermitian) => return Ok(Some(false)),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(true))
}

/// `dim {X : XᵀG + GX = 0}`.
fn isometry_dim(g: &Matrix) -> usize {
    let d = g.rows();
    if d == 0 {
        return 0;
    }
    let mut sys = Matrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            for k in 0..d {
                let t = &sys[(a * d + b, k * d + a)] + &g[(k, b)];
                sys[(a * d + b, k * d + a)] = t;
                let t = &sys[(a * d + b, k * d + b)] + &g[(a, k)];
                sys[(a * d + b, k * d + b)] = t;
            }
        }
    }
    sys.kernel().dim()
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub l: i64,
    pub weight: i64,
    pub gr_dim: usize,
    pub primitive_dim: usize,
    /// `+1` symmetric, `−1` skew.
    pub parity: i64,
    pub nominal_parity: i64,
    pub well_defined: bool,
    pub nondegenerate_on_gr: bool,
    pub nondegenerate_on_primitive: bool,
    /// Positive and negative inertia of the real part of `S_l` (symmetric
    /// levels) on the primitive part.
    pub signature: Option<(usize, usize)>,
    pub f: BTreeMap<i64, usize>,
    pub hodge_numbers: Vec<usize>,
    pub polarized: Option<bool>,
    pub orthogonal_dim: usize,
    /// Real dimension of the classifying space `D_l(N)`.
    pub domain_dim: Option<usize>,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct FibrationData {
    pub dim_m_q: usize,
    pub dim_z_n_m_q: usize,
    pub dim_v_m_q: usize,
    pub sum_dim_o_s_l: usize,
    pub dim_d_prim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub center: i64,
    /// Largest `k` with `N^{k+1} = 0`, recorded alongside the center.
    pub nilpotency_k: u32,
    pub levels: Vec<LevelReport>,
    pub lefschetz: bool,
    pub fibration: FibrationData,
    /// `exp(−iN) F_0 = F_∞`.
    pub g_inf_moves_basepoint: bool,
    /// `exp(−iN)` is the identity on every `Gr^W_k`.
    pub g_inf_trivial_on_gr: bool,
}

impl BoundaryReport {
    pub fn fibration_consistent(&self) -> bool {
        self.fibration.dim_z_n_m_q == self.fibration.sum_dim_o_s_l
    }
}

/// Full report for `N` with limit filtration `F_∞` (default `exp(−iN) F_0`).
pub fn boundary_report(st: &Structure, n: &Matrix, f_inf: Option<&HodgeFiltration>, center: i64, exec: Exec) -> Result<BoundaryReport> {
    let x0 = &st.sys.reference;
    let alg = &st.sys.algebra;
    let dim = x0.dim();
    let m = x0.m();
    alg.coords(n)?;
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let triple = if n.is_zero() {
        Sl2Triple { n: n.clone(), y: Matrix::zeros(dim, dim), n_plus: Matrix::zeros(dim, dim) }
    } else {
        jm_triple(alg, n, &st.sigma.y_basis())?
    };
    let w = weight_filtration_h(&triple, center)?;
    let pieces = GradedPieces::new(&w);
    let prims = primitive_parts(n, &pieces);
    let g_inf = nilpotent_exp(n, &-Scalar::i())?;
    let default_f = x0.f0.transform(&g_inf);
    let f_inf = f_inf.cloned().unwrap_or_else(|| default_f.clone());
    let limits = limit_hodge_numbers(&f_inf, m, &pieces, &prims)?;
    let gram = x0.lattice.gram();

    let items: Vec<(&PrimitivePart, &LimitLevel)> =
        prims.iter().zip(&limits).filter(|(p, _)| pieces.dim(center + p.l) > 0).collect();
    let levels = exec.try_map(&items, |(prim, lim)| -> Result<LevelReport> {
        let form = induced_form(gram, m, n, &pieces, prim.l);
        let restricted = prim.space.basis_matrix();
        let gp = if prim.space.is_zero() { Matrix::zeros(0, 0) } else { &(&restricted.transpose() * &form.gram) * &restricted };
        let polarized = polarization_check(lim, &form)?;
        let hodge_numbers = lim.hodge_numbers();
        let domain_dim = if prim.space.is_zero() || lim.weight < 1 {
            None
        } else {
            HodgeNumbers::new(lim.weight as usize, hodge_numbers.clone()).ok().and_then(|h| domain_dimensions(&h).ok()).map(|d| d.dim_r_d)
        };
        let signature = (form.parity == 1 && gp.rows() > 0 && gp.is_real()).then(|| crate::lie::sigma::signature(&gp));
        Ok(LevelReport {
            l: prim.l,
            weight: lim.weight,
            gr_dim: pieces.dim(center + prim.l),
            primitive_dim: prim.space.dim(),
            parity: form.parity,
            nominal_parity: form.nominal_parity,
            well_defined: form.well_defined,
            nondegenerate_on_gr: form.nondegenerate,
            nondegenerate_on_primitive: gp.rank() == gp.rows(),
            signature,
            f: lim.f_dims(),
            hodge_numbers,
            polarized,
            orthogonal_dim: isometry_dim(&gp),
            domain_dim,
        })
    })?;

    let parabolic = canonical_parabolic(st, &triple)?;
    let z_n = alg.centralizer(std::slice::from_ref(n));
    let v = st.sys.grading.get(0).cloned().unwrap_or_else(|| Subspace::zero(alg.dim()));
    let fibration = FibrationData {
        dim_m_q: parabolic.m_q.dim(),
        dim_z_n_m_q: z_n.intersection(&parabolic.m_q).dim(),
        dim_v_m_q: v.intersection(&parabolic.m_q).dim(),
        sum_dim_o_s_l: levels.iter().map(|l| l.orthogonal_dim).sum(),
        dim_d_prim: levels.iter().filter_map(|l| l.domain_dim).sum(),
    };
    let id = Matrix::identity(dim);
    let shift = &g_inf - &id;
    let (lo, hi) = w.range();
    let g_inf_trivial_on_gr = (lo..=hi).all(|k| w.get(k - 1).contains_subspace(&w.get(k).image_under(&shift)));
    Ok(BoundaryReport {
        center,
        nilpotency_k: n.nilpotency_index().unwrap_or(0),
        lefschetz: lefschetz_holds(&pieces, &prims),
        levels,
        fibration,
        g_inf_moves_basepoint: default_f == f_inf,
        g_inf_trivial_on_gr,
    })
}
