//! Input documents and their validation, plus the output documents of each
//! subcommand. Every input type round-trips through JSON.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::scalar::{format_rational, rational_serde};
use crate::algebra::{Matrix, Rational, Scalar};
use crate::asymptotics::{HorosphericalSequence, ParabolicDescriptor, TailPolicy};
use crate::hodge::{HodgeFiltration, HodgeNumbers};
use crate::nilpotent::Space;

/// A schema violation with a JSON path to the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "schema error at `{}`: {}", self.path, self.message)
    }
}

fn schema(path: &str, message: impl Into<String>) -> SchemaError {
    SchemaError { path: path.into(), message: message.into() }
}

/// Parses `text` as `T`, reporting the path of the first failing field.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        SchemaError { path, message: e.into_inner().to_string() }
    })
}

pub trait Validate {
    fn validate(&self) -> Result<(), SchemaError>;
}

fn hodge_numbers(m: usize, h: &[usize]) -> Result<HodgeNumbers, SchemaError> {
    let hn = HodgeNumbers { m, h: h.to_vec() };
    hn.validate().map_err(|e| {
        let field = if h.len() != m + 1 || m == 0 { "m" } else { "h" };
        schema(field, e.to_string())
    })?;
    Ok(hn)
}

fn check_square(path: &str, mat: &Matrix, dim: usize) -> Result<(), SchemaError> {
    if mat.rows() != dim || mat.cols() != dim {
        return Err(schema(path, format!("expected a {dim}×{dim} matrix, got {}×{}", mat.rows(), mat.cols())));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainDoc {
    pub m: usize,
    pub h: Vec<usize>,
}

impl DomainDoc {
    pub fn hodge(&self) -> HodgeNumbers {
        HodgeNumbers { m: self.m, h: self.h.clone() }
    }
}

impl Validate for DomainDoc {
    fn validate(&self) -> Result<(), SchemaError> {
        hodge_numbers(self.m, &self.h).map(|_| ())
    }
}

/// A coefficient `a_α`: one rational, or one per basis vector of `g_{−α}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    One(#[serde(with = "rational_serde")] Rational),
    Many(#[serde(with = "rational_serde::vec")] Vec<Rational>),
}

impl Coefficient {
    pub fn values(&self) -> Vec<Rational> {
        match self {
            Coefficient::One(q) => vec![q.clone()],
            Coefficient::Many(v) => v.clone(),
        }
    }
}

/// Either an explicit matrix on `H` or coefficients over `{N_{−α}}` keyed by
/// restricted-root ids such as `"q:(1,0)"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NilpotentSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<BTreeMap<String, Coefficient>>,
}

impl NilpotentSpec {
    fn validate(&self, dim: usize) -> Result<(), SchemaError> {
        match (&self.matrix, &self.coefficients) {
            (Some(m), None) => check_square("nilpotent.matrix", m, dim),
            (None, Some(_)) => Ok(()),
            _ => Err(schema("nilpotent", "exactly one of `matrix` or `coefficients` is required")),
        }
    }
}

/// Filtration by an adapted basis listed with `F^m` first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationSpec {
    pub basis: Vec<Vec<Scalar>>,
}

impl FiltrationSpec {
    fn validate(&self, path: &str, dim: usize) -> Result<(), SchemaError> {
        if self.basis.len() != dim {
            return Err(schema(&format!("{path}.basis"), format!("expected {dim} vectors, got {}", self.basis.len())));
        }
        if let Some((i, v)) = self.basis.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(schema(&format!("{path}.basis[{i}]"), format!("expected {dim} entries, got {}", v.len())));
        }
        if Matrix::from_rows(self.basis.clone()).map(|m| m.rank()).unwrap_or(0) != dim {
            return Err(schema(&format!("{path}.basis"), "vectors are not linearly independent"));
        }
        Ok(())
    }

    pub fn filtration(&self, h: &HodgeNumbers) -> HodgeFiltration {
        HodgeFiltration::from_adapted_basis(h, &self.basis).expect("validated")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NilpotentDoc {
    pub m: usize,
    pub h: Vec<usize>,
    pub nilpotent: NilpotentSpec,
    /// Only read by `weight-filtration`; `H` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceName>,
    /// Limit filtration for `boundary-report`; `exp(−iN) F_0` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<FiltrationSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceName {
    H,
    #[serde(rename = "g")]
    G,
}

impl From<SpaceName> for Space {
    fn from(s: SpaceName) -> Space {
        match s {
            SpaceName::H => Space::H,
            SpaceName::G => Space::G,
        }
    }
}

impl NilpotentDoc {
    pub fn hodge(&self) -> HodgeNumbers {
        HodgeNumbers { m: self.m, h: self.h.clone() }
    }
}

impl Validate for NilpotentDoc {
    fn validate(&self) -> Result<(), SchemaError> {
        let hn = hodge_numbers(self.m, &self.h)?;
        self.nilpotent.validate(hn.dim())?;
        if let Some(f) = &self.filtration {
            f.validate("filtration", hn.dim())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDoc {
    pub m: usize,
    pub h: Vec<usize>,
    pub nilpotent: NilpotentSpec,
    pub filtration: FiltrationSpec,
    #[serde(with = "rational_serde::vec")]
    pub y_grid: Vec<Rational>,
}

impl OrbitDoc {
    pub fn hodge(&self) -> HodgeNumbers {
        HodgeNumbers { m: self.m, h: self.h.clone() }
    }
}

impl Validate for OrbitDoc {
    fn validate(&self) -> Result<(), SchemaError> {
        let hn = hodge_numbers(self.m, &self.h)?;
        self.nilpotent.validate(hn.dim())?;
        self.filtration.validate("filtration", hn.dim())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeDoc {
    pub sequence: HorosphericalSequence,
    pub policy: TailPolicy,
}

impl Validate for ConvergeDoc {
    fn validate(&self) -> Result<(), SchemaError> {
        let rank = self.sequence.parabolic.rank();
        if let Some(i) = self.sequence.parabolic.simple_roots.iter().position(|r| r.len() != rank) {
            return Err(schema(&format!("sequence.parabolic.simple_roots[{i}]"), format!("expected {rank} entries")));
        }
        for (j, t) in self.sequence.terms.iter().enumerate() {
            if t.log_a.len() != rank {
                return Err(schema(&format!("sequence.terms[{j}].log_a"), format!("expected {rank} entries, got {}", t.log_a.len())));
            }
            if t.m.len() != self.sequence.limit.len() {
                return Err(schema(&format!("sequence.terms[{j}].m"), format!("expected {} entries, got {}", self.sequence.limit.len(), t.m.len())));
            }
        }
        if self.policy.growth_margin < Rational::from_integer(0.into()) || self.policy.tolerance < Rational::from_integer(0.into()) {
            return Err(schema("policy", "margin and tolerance must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiegelDoc {
    #[serde(with = "rational_serde::vec")]
    pub log_a: Vec<Rational>,
    /// Identity (coordinates are simple-root values) when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parabolic: Option<ParabolicDescriptor>,
    #[serde(with = "rational_serde")]
    pub t: Rational,
}

impl SiegelDoc {
    pub fn descriptor(&self) -> ParabolicDescriptor {
        self.parabolic.clone().unwrap_or_else(|| ParabolicDescriptor::identity(self.log_a.len()))
    }
}

impl Validate for SiegelDoc {
    fn validate(&self) -> Result<(), SchemaError> {
        Ok(())
    }
}

// Output documents.

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DomainOut {
    pub m: usize,
    pub h: Vec<usize>,
    pub dim_h: usize,
    #[serde(rename = "dim_D_complex")]
    pub dim_d_complex: usize,
    #[serde(rename = "dim_check_D_complex")]
    pub dim_check_d_complex: usize,
    #[serde(rename = "dim_D_real")]
    pub dim_d_real: usize,
    pub dim_g: usize,
    pub dim_v: usize,
    pub rank_t: usize,
    pub rank_s: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootOut {
    pub id: String,
    pub coords: Vec<i64>,
    pub degree: i64,
    pub multiplicity: usize,
    pub compact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedOut {
    pub id: String,
    pub coords: Vec<i64>,
    pub degrees: Vec<i64>,
    pub multiplicity: usize,
    pub preimages: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootsOut {
    pub roots: Vec<RootOut>,
    pub restricted: Vec<RestrictedOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaOut {
    pub rank_s: usize,
    pub sigma: Vec<RootOut>,
    pub y_basis: Vec<Matrix>,
    pub cayley: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingOut {
    pub dims: BTreeMap<i64, usize>,
    pub dim_k: usize,
    pub dim_p: usize,
    pub roots_by_degree: BTreeMap<i64, Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightFiltrationOut {
    pub space: Space,
    pub center: i64,
    pub jumps: Vec<i64>,
    pub gr_dims: BTreeMap<i64, usize>,
    pub w_dims: BTreeMap<i64, usize>,
    pub y: Matrix,
    pub n_plus: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeOut {
    pub id: String,
    pub value: String,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicOut {
    pub y_coords: Vec<String>,
    pub simple: Vec<NodeOut>,
    pub i_set: Vec<String>,
    pub a_i_coords: Vec<Vec<String>>,
    pub dim_q: usize,
    pub dim_levi: usize,
    pub dim_u: usize,
    pub dim_m_q: usize,
    pub double_construction: bool,
    pub siegel_descriptor: ParabolicDescriptor,
}

#[derive(Clone, Debug, Serialize)]
pub struct DynkinOut {
    pub complex: Vec<NodeOut>,
    pub restricted: Vec<NodeOut>,
    pub admissible: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContributionOut {
    pub root: String,
    pub degree: i64,
    pub restricted: String,
    pub in_degree_minus_one: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionOut {
    pub coefficients: Vec<i64>,
    pub sigma_phi: Vec<String>,
    pub cayley_identity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HorizontalOut {
    pub coefficients: BTreeMap<String, Vec<String>>,
    pub contributions: Vec<ContributionOut>,
    pub x_plus_degrees: Vec<i64>,
    pub root_criterion: bool,
    pub direct_criterion: bool,
    pub horizontal: bool,
    /// `None` when `Y` is not a `{0, ±1}` combination of the `Y_γ`.
    pub decomposition: Option<DecompositionOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipOut {
    pub y: String,
    pub in_d: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitOut {
    pub horizontal: bool,
    pub memberships: Vec<MembershipOut>,
    pub threshold: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SiegelOut {
    pub values: Vec<String>,
    pub t: String,
    pub member: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorOut {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub message: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
        let text = serde_json::to_string(x).unwrap();
        assert_eq!(&parse::<T>(&text).unwrap(), x);
    }

    #[test]
    fn asymmetric_h_names_symmetry() {
        let d: DomainDoc = parse(r#"{"m":2,"h":[1,2,2]}"#).unwrap();
        let e = d.validate().unwrap_err();
        assert_eq!(e.path, "h");
        assert!(e.message.contains("h^{p,q} must equal h^{q,p}"));
    }

    #[test]
    fn paths_point_at_fields() {
        let e = parse::<DomainDoc>(r#"{"m":1,"h":[1,"x"]}"#).unwrap_err();
        assert_eq!(e.path, "h[1]");
        let e = parse::<NilpotentDoc>(r#"{"m":1,"h":[1,1],"nilpotent":{"matrix":[[0,1],[0,"1/0"]]}}"#).unwrap_err();
        assert!(e.path.starts_with("nilpotent.matrix"), "{}", e.path);
        let d: NilpotentDoc = parse(r#"{"m":1,"h":[1,1],"nilpotent":{"matrix":[[0,1,0],[0,0,0],[0,0,0]]}}"#).unwrap();
        assert_eq!(d.validate().unwrap_err().path, "nilpotent.matrix");
        let d: NilpotentDoc = parse(r#"{"m":1,"h":[1,1],"nilpotent":{}}"#).unwrap();
        assert_eq!(d.validate().unwrap_err().path, "nilpotent");
        assert_eq!(parse::<DomainDoc>(r#"{"m":1,"h":[1,1],"x":0}"#).unwrap_err().path, "x");
    }

    #[test]
    fn documents_round_trip() {
        round_trip(&DomainDoc { m: 2, h: vec![1, 2, 1] });
        let mut coeffs = BTreeMap::new();
        coeffs.insert("q:(1,0)".to_string(), Coefficient::One(rat(3, 2)));
        coeffs.insert("q:(1,1)".to_string(), Coefficient::Many(vec![int(1), int(-2)]));
        let n = NilpotentDoc {
            m: 2,
            h: vec![1, 2, 1],
            nilpotent: NilpotentSpec { matrix: None, coefficients: Some(coeffs) },
            space: Some(SpaceName::G),
            filtration: None,
        };
        round_trip(&n);
        let f = FiltrationSpec { basis: vec![vec![Scalar::i(), Scalar::one()], vec![Scalar::one(), Scalar::sqrt2()]] };
        let o = OrbitDoc {
            m: 1,
            h: vec![1, 1],
            nilpotent: NilpotentSpec { matrix: Some(Matrix::from_ints(&[&[0, 1], &[0, 0]])), coefficients: None },
            filtration: f,
            y_grid: vec![rat(-1, 2), int(2)],
        };
        round_trip(&o);
        round_trip(&SiegelDoc { log_a: vec![int(3), int(5)], parabolic: Some(ParabolicDescriptor::identity(2)), t: int(2) });
        let seq = HorosphericalSequence {
            parabolic: ParabolicDescriptor::identity(1),
            terms: vec![crate::asymptotics::SequenceTerm { u: vec![int(1)], log_a: vec![rat(1, 3)], m: vec![] }],
            limit: vec![],
        };
        round_trip(&ConvergeDoc { sequence: seq, policy: TailPolicy { window: 2, growth_margin: int(1), tolerance: rat(1, 100) } });
    }
}
