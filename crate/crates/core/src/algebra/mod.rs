//! Exact scalars, matrices, subspaces and forms over `Q(i, √2)`.

pub mod form;
pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use form::{gram_positive, hermitian_positive, SesquiForm, Symmetry};
pub use matrix::{eigenspace_decomposition, integer_eigenspaces, nilpotent_exp, Matrix, Vector};
pub use scalar::{int, rat, Rational, Scalar};
pub use subspace::{Direction, Flag, Subspace};
