//! Nilpotent orbits `z ↦ exp(zN) F_∞`, membership scans along `i·y`,
//! untwisting of monodromy, Siegel sets and finite convergence diagnostics.

use serde::{Deserialize, Serialize};

use crate::algebra::{int, nilpotent_exp, Matrix, Rational, Scalar};
use crate::error::{Error, Result};
use crate::hodge::{in_check_d, in_d, HodgeFiltration, PolarizedLattice};
use crate::nilpotent::{CanonicalParabolic, MonodromyElement};
use crate::par::Exec;

#[derive(Clone, Debug)]
pub struct NilpotentOrbit {
    pub n: Matrix,
    pub f_inf: HodgeFiltration,
}

impl NilpotentOrbit {
    /// Requires `N` nilpotent and `F_∞ ∈ Ď`.
    pub fn new(n: Matrix, f_inf: HodgeFiltration, lattice: &PolarizedLattice) -> Result<Self> {
        if !n.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        if !in_check_d(&f_inf, lattice)? {
            return Err(Error::NotInFlagVariety);
        }
        Ok(NilpotentOrbit { n, f_inf })
    }

    /// `N F^p_∞ ⊆ F^{p−1}_∞` for all `p`.
    pub fn is_horizontal(&self) -> bool {
        let fl = &self.f_inf.flag;
        (fl.start..=fl.end()).all(|p| self.f_inf.f(p - 1).contains_subspace(&self.f_inf.f(p).image_under(&self.n)))
    }

    /// `exp(zN) F_∞`.
    pub fn at(&self, z: &Scalar) -> HodgeFiltration {
        self.f_inf.transform(&nilpotent_exp(&self.n, z).expect("nilpotent by construction"))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MembershipScan {
    /// `(y, exp(iyN)F_∞ ∈ D)` in ascending `y`.
    #[serde(serialize_with = "ser_samples")]
    pub samples: Vec<(Rational, bool)>,
    /// Least sampled `y` from which every later sample lies in `D`.
    #[serde(serialize_with = "ser_opt")]
    pub threshold: Option<Rational>,
}

fn ser_samples<S: serde::Serializer>(v: &[(Rational, bool)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (y, b) in v {
        seq.serialize_element(&(crate::algebra::scalar::format_rational(y), b))?;
    }
    seq.end()
}

fn ser_opt<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_some(&crate::algebra::scalar::format_rational(q)),
        None => s.serialize_none(),
    }
}

/// Samples `in_D(exp(iyN) F_∞)` on the given grid (sorted and deduplicated).
pub fn membership_scan(orbit: &NilpotentOrbit, lattice: &PolarizedLattice, ys: &[Rational], exec: Exec) -> Result<MembershipScan> {
    let mut ys = ys.to_vec();
    ys.sort();
    ys.dedup();
    let flags = exec.try_map(&ys, |y| in_d(&orbit.at(&Scalar::gaussian(int(0), y.clone())), lattice))?;
    let samples: Vec<(Rational, bool)> = ys.into_iter().zip(flags).collect();
    let mut threshold = None;
    for (y, ok) in samples.iter().rev() {
        if !ok {
            break;
        }
        threshold = Some(y.clone());
    }
    Ok(MembershipScan { samples, threshold })
}

/// `Ψ̃(z) = exp(−lzN_0) Φ̃(lz)`, checked against `Ψ̃(z+1)`.
pub fn untwist<F>(phi: F, mono: &MonodromyElement, z: &Scalar) -> Result<HodgeFiltration>
where
    F: Fn(&Scalar) -> Result<HodgeFiltration>,
{
    let l = Scalar::from_int(mono.l as i64);
    let psi = |w: &Scalar| -> Result<HodgeFiltration> {
        let lw = &l * w;
        let back = nilpotent_exp(&mono.n0, &-lw.clone())?;
        Ok(phi(&lw)?.transform(&back))
    };
    let here = psi(z)?;
    let next = psi(&(z + &Scalar::one()))?;
    if here != next {
        return Err(Error::NotEquivariant);
    }
    Ok(here)
}

/// Simple roots `Π(P, A_P)` as linear functionals on log-coordinates of `A_P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicDescriptor {
    #[serde(with = "crate::algebra::scalar::rational_serde::mat")]
    pub simple_roots: Vec<Vec<Rational>>,
}

impl ParabolicDescriptor {
    /// Coordinates are the simple-root values themselves.
    pub fn identity(rank: usize) -> Self {
        ParabolicDescriptor { simple_roots: (0..rank).map(|i| (0..rank).map(|j| int((i == j) as i64)).collect()).collect() }
    }

    /// Restrictions of `Π \ I` to `a_I`, against the stored basis of `a_I`.
    pub fn from_parabolic(p: &CanonicalParabolic) -> Self {
        let simple_roots = p
            .simple
            .iter()
            .filter(|s| !p.i_set.contains(&s.root))
            .map(|s| p.a_i_coords.iter().map(|c| s.root.iter().zip(c).fold(int(0), |acc, (a, x)| acc + x * int(*a))).collect())
            .collect();
        ParabolicDescriptor { simple_roots }
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.first().map_or(0, Vec::len)
    }

    pub fn values(&self, log_a: &[Rational]) -> Result<Vec<Rational>> {
        if self.simple_roots.iter().any(|r| r.len() != log_a.len()) {
            return Err(Error::Dimension(format!("log a has {} coordinates, A_P has {}", log_a.len(), self.rank())));
        }
        Ok(self.simple_roots.iter().map(|r| r.iter().zip(log_a).fold(int(0), |acc, (a, x)| acc + a * x)).collect())
    }
}

/// `a ∈ A_{P,t}`: every simple-root value of `log a` exceeds `t`.
pub fn siegel_membership(log_a: &[Rational], descriptor: &ParabolicDescriptor, t: &Rational) -> Result<bool> {
    Ok(descriptor.values(log_a)?.iter().all(|v| v > t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceTerm {
    #[serde(with = "crate::algebra::scalar::rational_serde::vec", default)]
    pub u: Vec<Rational>,
    #[serde(with = "crate::algebra::scalar::rational_serde::vec")]
    pub log_a: Vec<Rational>,
    #[serde(with = "crate::algebra::scalar::rational_serde::vec")]
    pub m: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HorosphericalSequence {
    pub parabolic: ParabolicDescriptor,
    pub terms: Vec<SequenceTerm>,
    #[serde(with = "crate::algebra::scalar::rational_serde::vec")]
    pub limit: Vec<Rational>,
}

/// Finite-prefix policy: the last `window` terms are inspected (all terms
/// when `window` is zero or exceeds the length).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailPolicy {
    pub window: usize,
    /// Minimum increase of every simple-root value between consecutive terms.
    #[serde(with = "crate::algebra::scalar::rational_serde")]
    pub growth_margin: Rational,
    /// Sup-norm bound on `m_j − m_∞`.
    #[serde(with = "crate::algebra::scalar::rational_serde")]
    pub tolerance: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithConvergence,
    /// Some `α(log a_j)` fails to grow at this index.
    #[serde(rename = "violates-(1)")]
    ViolatesGrowth { index: usize },
    /// `m_j` is farther than the tolerance from `m_∞` at this index.
    #[serde(rename = "violates-(2)")]
    ViolatesLimit { index: usize },
}

/// Diagnostic for the two convergence conditions on a finite prefix; it
/// cannot prove that a limit exists.
pub fn convergence_check(seq: &HorosphericalSequence, policy: &TailPolicy) -> Result<Verdict> {
    let n = seq.terms.len();
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let start = if policy.window == 0 || policy.window >= n { 0 } else { n - policy.window };
    let values = seq.terms.iter().map(|t| seq.parabolic.values(&t.log_a)).collect::<Result<Vec<_>>>()?;
    for j in start + 1..n {
        let grows = values[j].iter().zip(&values[j - 1]).all(|(b, a)| b - a >= policy.growth_margin);
        if !grows {
            return Ok(Verdict::ViolatesGrowth { index: j });
        }
    }
    for (j, t) in seq.terms.iter().enumerate().skip(start) {
        if t.m.len() != seq.limit.len() {
            return Err(Error::Dimension(format!("term {j} has {} M-coordinates, limit has {}", t.m.len(), seq.limit.len())));
        }
        let far = t.m.iter().zip(&seq.limit).any(|(x, y)| {
            let d = x - y;
            let d = if d < int(0) { -d } else { d };
            d > policy.tolerance
        });
        if far {
            return Ok(Verdict::ViolatesLimit { index: j });
        }
    }
    Ok(Verdict::ConsistentWithConvergence)
}
