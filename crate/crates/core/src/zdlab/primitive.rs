use rayon::prelude::*;

use super::constructions::lemma3_unit;
use super::triviality::{trivial_pair_check, Search, TrivialityCertificate, TrivialityVerdict};
use super::{Provenance, ZdError, ZeroDivisorPair};
use crate::groups::{GroupKind, GroupSpec};
use crate::ring::RingElement;

/// A unit `U` with its verified two-sided inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCatalogEntry {
    u: RingElement,
    u_inv: RingElement,
}

impl UnitCatalogEntry {
    pub fn new(u: RingElement, u_inv: RingElement) -> Result<Self, ZdError> {
        let one = RingElement::one(u.spec());
        if u.checked_mul(&u_inv)? != one || u_inv.checked_mul(&u)? != one {
            return Err(ZdError::NotAUnit);
        }
        Ok(UnitCatalogEntry { u, u_inv })
    }

    pub fn u(&self) -> &RingElement {
        &self.u
    }

    pub fn u_inv(&self) -> &RingElement {
        &self.u_inv
    }

    /// The entry for `U^-1`.
    pub fn inverse(&self) -> Self {
        UnitCatalogEntry { u: self.u_inv.clone(), u_inv: self.u.clone() }
    }
}

/// The trivial units `g` and `-g` for every `g` of length at most `bound`.
pub fn trivial_units(spec: &GroupSpec, bound: usize) -> Result<Vec<UnitCatalogEntry>, ZdError> {
    let mut out = Vec::new();
    for g in spec.elements(Some(bound))? {
        let u = RingElement::from_element(spec, g.clone())?;
        let u_inv = RingElement::from_element(spec, spec.inv_unchecked(&g))?;
        out.push(UnitCatalogEntry { u: u.clone(), u_inv: u_inv.clone() });
        out.push(UnitCatalogEntry { u: -u, u_inv: -u_inv });
    }
    Ok(out)
}

/// `U = 1 + (1 - a) b (a + .. + a^q)` and its inverse, for free products
/// whose first factor has finite order `q`.
pub fn lemma3_units(spec: &GroupSpec) -> Result<Vec<UnitCatalogEntry>, ZdError> {
    match spec.kind() {
        GroupKind::FreeProduct { .. } => {
            let unit = lemma3_unit(spec)?;
            Ok(vec![unit.clone(), unit.inverse()])
        }
        _ => Ok(Vec::new()),
    }
}

/// Trivial units up to `unit_bound`, followed by the free-product units.
pub fn default_unit_catalog(spec: &GroupSpec, unit_bound: usize) -> Result<Vec<UnitCatalogEntry>, ZdError> {
    let mut out = trivial_units(spec, unit_bound)?;
    out.extend(lemma3_units(spec)?);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum PrimitiveVerdict {
    /// `A = X U`, `B = U^-1 Y` and `(X, Y)` is trivial.
    Primitive {
        unit: UnitCatalogEntry,
        x: RingElement,
        y: RingElement,
        certificate: TrivialityCertificate,
    },
    /// No catalog unit led to a trivial pair within the search bound.
    NotShown { units_tried: usize },
}

/// For each catalog unit, forms `X = A U^-1`, `Y = U B` and checks `(X, Y)`
/// for triviality. Returns the first witness in catalog order.
pub fn primitive_pair_check(
    pair: &ZeroDivisorPair,
    catalog: &[UnitCatalogEntry],
    search: Search,
) -> Result<PrimitiveVerdict, ZdError> {
    let found = catalog
        .par_iter()
        .map(|unit| -> Result<Option<PrimitiveVerdict>, ZdError> {
            let x = pair.a().checked_mul(unit.u_inv())?;
            let y = unit.u().checked_mul(pair.b())?;
            let twisted = ZeroDivisorPair::new(x.clone(), y.clone(), Provenance::User)?;
            Ok(match trivial_pair_check(&twisted, search)? {
                TrivialityVerdict::Trivial(certificate) => {
                    Some(PrimitiveVerdict::Primitive { unit: unit.clone(), x, y, certificate })
                }
                TrivialityVerdict::NoneFound(_) => None,
            })
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        Some(Ok(Some(v))) => Ok(v),
        Some(Err(e)) => Err(e),
        _ => Ok(PrimitiveVerdict::NotShown { units_tried: catalog.len() }),
    }
}
