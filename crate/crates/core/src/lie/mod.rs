//! The isometry algebra, its Hodge grading, roots, strongly orthogonal roots,
//! the Cayley transform and restricted roots.

pub mod algebra;
pub mod restricted;
pub mod roots;
pub mod sigma;
pub mod structure;

pub use algebra::{HodgeGrading, IsometryAlgebra};
pub use roots::{root_id, GradedSystem, RootDatum, Sl2Embedding};
pub use sigma::{build_sigma, cayley_element, rank_s, CayleyTransform, StronglyOrthogonalSet};
pub use restricted::{simple_of, restricted_id, Field, RestrictedRoot, RestrictedRootSystem};
pub use structure::Structure;
