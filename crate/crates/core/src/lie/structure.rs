use crate::error::Result;
use crate::hodge::HodgeNumbers;
use crate::par::Exec;

use super::restricted::{Field, RestrictedRootSystem};
use super::roots::GradedSystem;
use super::sigma::{build_sigma, CayleyTransform, StronglyOrthogonalSet};

/// The graded root system together with Σ, the Cayley transform and the
/// restricted roots over the chosen field.
#[derive(Clone, Debug)]
pub struct Structure {
    pub sys: GradedSystem,
    pub sigma: StronglyOrthogonalSet,
    pub cayley: CayleyTransform,
    pub restricted: RestrictedRootSystem,
}

impl Structure {
    pub fn build(h: &HodgeNumbers) -> Result<Self> {
        Self::build_with(h, Field::Rational, Exec::default())
    }

    pub fn build_with(h: &HodgeNumbers, field: Field, exec: Exec) -> Result<Self> {
        let sys = GradedSystem::build_with(h, exec)?;
        let sigma = build_sigma(&sys)?;
        let cayley = CayleyTransform::new(&sigma, sys.dim())?;
        let restricted = RestrictedRootSystem::build(&sys, &sigma, field, exec)?;
        Ok(Structure { sys, sigma, cayley, restricted })
    }

    pub fn hodge(&self) -> &HodgeNumbers {
        &self.sys.reference.hodge
    }
}
