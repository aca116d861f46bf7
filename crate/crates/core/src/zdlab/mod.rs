//! Zero-divisor pairs in integral group rings: constructions, triviality and
//! primitivity checks, coset machinery, and exact annihilator solvers.

mod annihilator;
mod constructions;
mod cosets;
mod divisibility;
mod primitive;
mod triviality;

use std::fmt;

use thiserror::Error;

use crate::groups::GroupError;
use crate::ring::{RingElement, RingError};

pub use annihilator::{
    annihilator_left, annihilator_right, left_multiplication_matrix, right_multiplication_matrix,
};
pub use constructions::{
    construct_lemma3, construct_theorem1, construct_theorem2_finite, construct_theorem2_freeproduct,
    lemma3_support_pattern, reduce_to_standard_freeproduct, Construction, StandardReduction,
};
pub use cosets::{coset_report, CosetReport, Side};
pub use divisibility::{
    cofactor, solve_a_eq_x_times, solve_b_eq_times_y, solve_by_linear_algebra, CofactorKind,
};
pub use primitive::{
    default_unit_catalog, lemma3_units, primitive_pair_check, trivial_units, PrimitiveVerdict,
    UnitCatalogEntry,
};
pub use triviality::{
    finite_order_candidates, trivial_pair_check, Orientation, Search, SearchSpace,
    TrivialityCertificate, TrivialityVerdict,
};

pub use crate::linalg::integer_kernel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZdError {
    #[error("{0} is zero; a zero-divisor pair needs nonzero factors")]
    ZeroFactor(&'static str),
    #[error("A*B is not zero")]
    NotAnnihilating,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("the elements generate a cyclic subgroup")]
    CyclicGenerators,
    #[error("{0} is not a finite group")]
    NotFinite(String),
    #[error("cofactor element must have finite order > 1, got order {0}")]
    BadCofactorElement(String),
    #[error("exhaustive search over the infinite group {0} needs a conjugator bound")]
    UnboundedSearch(String),
    #[error("catalog entry is not a unit: U*U_inv or U_inv*U differs from 1")]
    NotAUnit,
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl From<GroupError> for ZdError {
    fn from(e: GroupError) -> Self {
        ZdError::Ring(RingError::Group(e))
    }
}

/// Where a pair came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Theorem1,
    Lemma3,
    Theorem2Finite,
    Theorem2FreeProduct,
    User,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Theorem1 => "theorem1",
            Provenance::Lemma3 => "lemma3",
            Provenance::Theorem2Finite => "theorem2-finite",
            Provenance::Theorem2FreeProduct => "theorem2-freeproduct",
            Provenance::User => "user",
        })
    }
}

/// Nonzero `A`, `B` with `AB = 0`, checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisorPair {
    a: RingElement,
    b: RingElement,
    provenance: Provenance,
}

impl ZeroDivisorPair {
    pub fn new(a: RingElement, b: RingElement, provenance: Provenance) -> Result<Self, ZdError> {
        if a.is_zero() {
            return Err(ZdError::ZeroFactor("A"));
        }
        if b.is_zero() {
            return Err(ZdError::ZeroFactor("B"));
        }
        if !a.checked_mul(&b)?.is_zero() {
            return Err(ZdError::NotAnnihilating);
        }
        Ok(ZeroDivisorPair { a, b, provenance })
    }

    pub fn a(&self) -> &RingElement {
        &self.a
    }

    pub fn b(&self) -> &RingElement {
        &self.b
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// One named identity check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;
    use crate::ring::{geometric_sum, one_minus};

    #[test]
    fn pair_rejects_degenerate_inputs() {
        let c2 = GroupSpec::cyclic(2).unwrap();
        let x = c2.generator(0).unwrap();
        let a = one_minus(&c2, &x).unwrap();
        let b = geometric_sum(&c2, &x, 2).unwrap();
        assert!(ZeroDivisorPair::new(a.clone(), b.clone(), Provenance::User).is_ok());
        assert_eq!(
            ZeroDivisorPair::new(RingElement::zero(&c2), b.clone(), Provenance::User),
            Err(ZdError::ZeroFactor("A"))
        );
        assert_eq!(
            ZeroDivisorPair::new(a.clone(), RingElement::zero(&c2), Provenance::User),
            Err(ZdError::ZeroFactor("B"))
        );
        assert_eq!(ZeroDivisorPair::new(a.clone(), a, Provenance::User), Err(ZdError::NotAnnihilating));
    }
}
