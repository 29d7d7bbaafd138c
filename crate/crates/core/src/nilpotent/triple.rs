//! Jacobson–Morozov triples `(N, Y, N₊)` with `[Y,N] = −2N`, `[Y,N₊] = 2N₊`,
//! `[N₊,N] = Y`.

use crate::algebra::{Matrix, Scalar, Vector};
use crate::error::{Error, Result};
use crate::lie::IsometryAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub n: Matrix,
    pub y: Matrix,
    pub n_plus: Matrix,
}

impl Sl2Triple {
    pub fn satisfies_relations(&self) -> bool {
        self.y.commutator(&self.n) == self.n.scale(&Scalar::from_int(-2))
            && self.y.commutator(&self.n_plus) == self.n_plus.scale(&Scalar::from_int(2))
            && self.n_plus.commutator(&self.n) == self.y
    }

    pub fn is_rational(&self) -> bool {
        self.n.is_rational() && self.y.is_rational() && self.n_plus.is_rational()
    }
}

/// Builds a triple through `N`, trying `Y ∈ span(cartan)` first and falling
/// back to the general solution of `ad(N)² W = 2N`.
pub fn jm_triple(alg: &IsometryAlgebra, n: &Matrix, cartan: &[Matrix]) -> Result<Sl2Triple> {
    let nc = alg.coords(n)?;
    if n.is_zero() {
        return Err(Error::ZeroNilpotent);
    }
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let ad_n = alg.ad(n);
    if !cartan.is_empty() {
        if let Some((y, e)) = cartan_route(alg, n, &nc, &ad_n, cartan)? {
            if let Some(t) = complete(alg, n, &ad_n, y, e)? {
                return Ok(t);
            }
        }
    }
    let two_n: Vector = nc.iter().map(|x| x.scale(&crate::algebra::int(2))).collect();
    let w = (&ad_n * &ad_n).solve(&two_n).ok_or(Error::NoTriple)?;
    let y = alg.element(&ad_n.apply(&w));
    let e = alg.element(&w).scale(&Scalar::from_int(-1));
    complete(alg, n, &ad_n, y, e)?.ok_or(Error::NoTriple)
}

/// Solves `[Σ y_j Y_j, N] = −2N` and `[X, N] = Σ y_j Y_j` jointly.
fn cartan_route(alg: &IsometryAlgebra, n: &Matrix, nc: &[Scalar], ad_n: &Matrix, cartan: &[Matrix]) -> Result<Option<(Matrix, Matrix)>> {
    let d = alg.dim();
    let s = cartan.len();
    let mut sys = Matrix::zeros(2 * d, s + d);
    for (j, yj) in cartan.iter().enumerate() {
        let top = alg.coords(&yj.commutator(n))?;
        let bottom = alg.coords(yj)?;
        for r in 0..d {
            sys[(r, j)] = top[r].clone();
            sys[(d + r, j)] = -&bottom[r];
        }
    }
    for r in 0..d {
        for k in 0..d {
            sys[(d + r, s + k)] = -&ad_n[(r, k)];
        }
    }
    let mut rhs: Vector = nc.iter().map(|x| x.scale(&crate::algebra::int(-2))).collect();
    rhs.extend(std::iter::repeat_n(Scalar::zero(), d));
    let Some(sol) = sys.solve(&rhs) else {
        return Ok(None);
    };
    let y = cartan.iter().zip(&sol[..s]).fold(Matrix::zeros(n.rows(), n.rows()), |acc, (yj, c)| &acc + &yj.scale(c));
    Ok(Some((y, alg.element(&sol[s..]))))
}

/// Given `[Y,N] = −2N` and `[E,N] = Y`, corrects `E` by an element of the
/// centralizer of `N` so that `[Y, N₊] = 2N₊`.
fn complete(alg: &IsometryAlgebra, n: &Matrix, ad_n: &Matrix, y: Matrix, e: Matrix) -> Result<Option<Sl2Triple>> {
    let d = alg.dim();
    let shifted = &alg.ad(&y) - &Matrix::identity(d).scale(&Scalar::from_int(2));
    let target = &e.scale(&Scalar::from_int(2)) - &y.commutator(&e);
    let mut rhs = alg.coords(&target)?;
    rhs.extend(std::iter::repeat_n(Scalar::zero(), d));
    let Some(z) = shifted.vstack(ad_n).solve(&rhs) else {
        return Ok(None);
    };
    let t = Sl2Triple { n: n.clone(), y, n_plus: &e + &alg.element(&z) };
    Ok(t.satisfies_relations().then_some(t))
}
