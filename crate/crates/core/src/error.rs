use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix not nilpotent")]
    NotNilpotent,
    #[error("form not hermitian on subspace")]
    NotHermitian,
    #[error("operator not semisimple over the given spectrum")]
    NotSemisimple,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid Hodge numbers: {0}")]
    InvalidHodgeNumbers(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("filtration not a real Hodge decomposition")]
    NotHodgeDecomposition,
    #[error("not a point of the flag variety")]
    NotInFlagVariety,
    #[error("weights not admissible for this construction")]
    InadmissibleWeights,
    #[error("compact root has no real sl(2) of this form")]
    CompactRoot,
    #[error("no rational Cartan in chosen position")]
    NoRationalCartan,
    #[error("monodromy not quasi-unipotent")]
    NotQuasiUnipotent,
    #[error("matrix does not preserve the polarization")]
    NotIsometry,
    #[error("element not in the isometry algebra")]
    NotInAlgebra,
    #[error("zero nilpotent has no triple")]
    ZeroNilpotent,
    #[error("no sl(2)-triple found for this nilpotent")]
    NoTriple,
    #[error("ordering incompatible with Y: {0}")]
    OrderingIncompatible(String),
    #[error("Y not in the rational Cartan subalgebra")]
    NotInCartan,
    #[error("decomposition unavailable; supply coefficients")]
    DecompositionUnavailable,
    #[error("Y not aligned with Σ; re-run basepoint alignment")]
    NotAlignedWithSigma,
    #[error("filtration does not induce constant-dimension filtrations on Gr")]
    IncompatibleFiltration,
    #[error("limit filtration not a Hodge filtration on the primitive part at level {0}")]
    NotHodgeOnPrimitive(usize),
    #[error("input not γ-equivariant")]
    NotEquivariant,
    #[error("empty sequence")]
    EmptySequence,
    #[error("unknown root identifier {0}")]
    UnknownRoot(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
