//! Rational nilpotents: `sl(2)`-triples, weight filtrations, canonical
//! parabolics, horizontality and monodromy logarithms.

pub mod filtration;
pub mod horizontal;
pub mod monodromy;
pub mod parabolic;
pub mod triple;

pub use filtration::{weight_filtration_g, weight_filtration_h, Space, WeightFiltration};
pub use horizontal::{
    horizontality_check, nilpotent_from_coefficients, restricted_coefficients, sl2_decompose_y, Contribution, HorizontalityReport,
    Sl2Decomposition,
};
pub use monodromy::{preserves_standard_lattice, unipotent_log, MonodromyElement};
pub use parabolic::{canonical_parabolic, weighted_dynkin, CanonicalParabolic, DynkinNode, WeightedDynkin};
pub use triple::{jm_triple, Sl2Triple};
