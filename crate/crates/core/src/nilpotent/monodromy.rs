//! Quasi-unipotent monodromy `γ` and its logarithm: `γ^l = exp(l N_0)`.

use crate::algebra::{int, nilpotent_exp, Matrix, Rational, Scalar};
use crate::error::{Error, Result};
use crate::hodge::PolarizedLattice;
use crate::par::Exec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyElement {
    pub gamma: Matrix,
    /// Order of the semisimple part.
    pub l: u64,
    pub n0: Matrix,
}

impl MonodromyElement {
    /// Checks that `γ` preserves `S` and the standard lattice, then takes the
    /// logarithm.
    pub fn new(gamma: Matrix, lattice: &PolarizedLattice, exec: Exec) -> Result<Self> {
        if gamma.rows() != lattice.dim() || !gamma.is_square() {
            return Err(Error::Dimension("monodromy size differs from H".into()));
        }
        if !lattice.preserves(&gamma) || !preserves_standard_lattice(&gamma) {
            return Err(Error::NotIsometry);
        }
        let (l, n0) = unipotent_log(&gamma, exec)?;
        Ok(MonodromyElement { gamma, l, n0 })
    }
}

/// `g` and `g⁻¹` both have integer entries.
pub fn preserves_standard_lattice(g: &Matrix) -> bool {
    let integral = |m: &Matrix| m.entries().iter().all(|x| x.as_rational().is_some_and(|q| q.is_integer()));
    integral(g) && g.inverse().is_some_and(|inv| integral(&inv))
}

fn euler_phi(mut d: u64) -> u64 {
    let mut out = d;
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            while d % p == 0 {
                d /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if d > 1 {
        out -= out / d;
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Integer polynomials, lowest degree first.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd] / den[dd];
        q[k] = c;
        for (j, b) in den.iter().enumerate() {
            rem[k + j] -= c * b;
        }
    }
    q
}

/// `Φ_d` for every `d ≤ max`.
fn cyclotomics(max: u64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new(); max as usize + 1];
    for d in 1..=max {
        let mut p = vec![0i64; d as usize + 1];
        p[0] = -1;
        p[d as usize] = 1;
        for e in 1..d {
            if d % e == 0 {
                p = poly_div_exact(&p, &out[e as usize]);
            }
        }
        out[d as usize] = p;
    }
    out
}

fn eval_poly(p: &[i64], a: &Matrix) -> Matrix {
    let n = a.rows();
    p.iter().rev().fold(Matrix::zeros(n, n), |acc, c| &(&acc * a) + &Matrix::identity(n).scale(&Scalar::from_int(*c)))
}

/// `(l, N_0)` with `l` least such that `γ^l` is unipotent and
/// `N_0 = log(γ^l) / l`.
///
/// The eigenvalue orders are found from the generalized kernels of `Φ_d(γ)`
/// for every `d` with `φ(d) ≤ dim H`.
pub fn unipotent_log(gamma: &Matrix, exec: Exec) -> Result<(u64, Matrix)> {
    if !gamma.is_square() {
        return Err(Error::Dimension("monodromy must be square".into()));
    }
    let n = gamma.rows();
    let max = (2 * n * n).max(2) as u64;
    let phis = cyclotomics(max);
    let candidates: Vec<u64> = (1..=max).filter(|&d| euler_phi(d) <= n as u64).collect();
    let dims = exec.map(&candidates, |&d| eval_poly(&phis[d as usize], gamma).pow(n as u32).kernel().dim());
    let total: usize = dims.iter().sum();
    if total != n {
        return Err(Error::NotQuasiUnipotent);
    }
    let l = candidates.iter().zip(&dims).filter(|(_, k)| **k > 0).fold(1u64, |acc, (d, _)| acc / gcd(acc, *d) * d);
    let u = gamma.pow(l as u32);
    let e = &u - &Matrix::identity(n);
    if !e.is_nilpotent() {
        return Err(Error::Internal("γ^l not unipotent".into()));
    }
    let mut log = Matrix::zeros(n, n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = &term * &e;
        if term.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        log = &log + &term.scale_rational(&Rational::new(sign.into(), (k as i64).into()));
    }
    let n0 = log.scale_rational(&Rational::new(1.into(), (l as i64).into()));
    if nilpotent_exp(&n0, &Scalar::from_rational(int(l as i64)))? != u {
        return Err(Error::Internal("exp(l N_0) differs from γ^l".into()));
    }
    Ok((l, n0))
}
