//! Searching for certificates that a zero-divisor pair is trivial, i.e.
//! `A = X(1 - h), B = (1 + h + .. + h^{s-1})Y` or the same with the two
//! cyclic factors swapped, for some `h` of finite order `s > 1`.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use super::divisibility::{cofactor, solve_a_eq_x_times, solve_b_eq_times_y, CofactorKind};
use super::{ZdError, ZeroDivisorPair};
use crate::groups::{GroupElement, GroupKind, GroupSpec, Order, Syllable};
use crate::ring::RingElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `A = X(1 - h)`, `B = (sum h^i) Y`
    OneMinusFirst,
    /// `A = X(sum h^i)`, `B = (1 - h) Y`
    SumFirst,
}

impl Orientation {
    fn kinds(self) -> (CofactorKind, CofactorKind) {
        match self {
            Orientation::OneMinusFirst => (CofactorKind::OneMinusH, CofactorKind::SumH),
            Orientation::SumFirst => (CofactorKind::SumH, CofactorKind::OneMinusH),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::OneMinusFirst => "A = X(1-h), B = (1+h+..+h^(s-1))Y",
            Orientation::SumFirst => "A = X(1+h+..+h^(s-1)), B = (1-h)Y",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialityCertificate {
    pub h: GroupElement,
    pub order: u64,
    pub orientation: Orientation,
    pub x: RingElement,
    pub y: RingElement,
}

impl TrivialityCertificate {
    /// Substitutes the cofactors and compares with the pair exactly.
    pub fn reproduces(&self, pair: &ZeroDivisorPair) -> Result<bool, ZdError> {
        let spec = pair.a().spec();
        if spec.element_order(&self.h)? != Order::Finite(self.order) || self.order < 2 {
            return Ok(false);
        }
        let (ka, kb) = self.orientation.kinds();
        let ca = cofactor(spec, ka, &self.h)?;
        let cb = cofactor(spec, kb, &self.h)?;
        Ok(self.x.checked_mul(&ca)? == *pair.a() && cb.checked_mul(&self.y)? == *pair.b())
    }
}

/// Which finite-order elements `h` to try.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    /// Every finite-order element; only available for finite groups.
    Exhaustive,
    /// For free products: conjugates `w g^k w^-1` of powers of the
    /// finite-factor generators with `|w| <= L`. Finite groups ignore the
    /// bound and are searched exhaustively.
    Bounded(usize),
}

/// Description of an exhausted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub description: String,
    pub candidates: usize,
    pub orientations_tried: usize,
    pub pruned_by_augmentation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrivialityVerdict {
    Trivial(TrivialityCertificate),
    NoneFound(SearchSpace),
}

impl TrivialityVerdict {
    pub fn certificate(&self) -> Option<&TrivialityCertificate> {
        match self {
            TrivialityVerdict::Trivial(c) => Some(c),
            TrivialityVerdict::NoneFound(_) => None,
        }
    }
}

/// Candidate `h` together with their orders, deduplicated, in deterministic
/// order.
pub fn finite_order_candidates(spec: &GroupSpec, search: Search) -> Result<(Vec<(GroupElement, u64)>, String), ZdError> {
    match spec.kind() {
        GroupKind::Free { .. } => Ok((Vec::new(), "free group: no nontrivial finite-order elements".into())),
        GroupKind::FreeProduct { q, r } => {
            let Search::Bounded(bound) = search else {
                return Err(ZdError::UnboundedSearch(spec.to_string()));
            };
            let mut factors = vec![(0u32, *q)];
            if let Order::Finite(r) = r {
                factors.push((1, *r));
            }
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for w in spec.elements(Some(bound))? {
                let w_inv = spec.inv_unchecked(&w);
                for &(gen, order) in &factors {
                    for k in 1..order {
                        let gk = GroupElement::FreeProduct(vec![Syllable::new(gen, k as i64)]);
                        let h = spec.mul_unchecked(&spec.mul_unchecked(&w, &gk), &w_inv);
                        if seen.insert(h.clone()) {
                            let s = order / num_integer::gcd(k, order);
                            out.push((h, s));
                        }
                    }
                }
            }
            let desc = format!(
                "conjugates w g^k w^-1 of finite-factor generator powers with |w| <= {bound} ({} distinct h)",
                out.len()
            );
            Ok((out, desc))
        }
        _ => {
            let out: Vec<_> = spec
                .elements(None)?
                .into_iter()
                .filter(|g| !spec.is_identity(g))
                .map(|g| {
                    let s = spec.order_unchecked(&g).finite().expect("finite group");
                    (g, s)
                })
                .collect();
            let desc = format!("all {} nonidentity elements of {}", out.len(), spec);
            Ok((out, desc))
        }
    }
}

fn try_candidate(
    pair: &ZeroDivisorPair,
    h: &GroupElement,
    order: u64,
    orientations: &[Orientation],
) -> Result<Option<TrivialityCertificate>, ZdError> {
    for &orientation in orientations {
        let (ka, kb) = orientation.kinds();
        let Some(x) = solve_a_eq_x_times(pair.a(), ka, h)? else {
            continue;
        };
        let Some(y) = solve_b_eq_times_y(pair.b(), kb, h)? else {
            continue;
        };
        let cert = TrivialityCertificate { h: h.clone(), order, orientation, x, y };
        debug_assert!(cert.reproduces(pair).unwrap_or(false));
        return Ok(Some(cert));
    }
    Ok(None)
}

/// Looks for a triviality certificate. Candidates run in parallel; the
/// reported certificate is always the first in enumeration order.
///
/// A nonzero augmentation of `A` rules out `A = X(1 - h)`; a nonzero
/// augmentation of `B` rules out `B = (1 - h)Y`.
pub fn trivial_pair_check(pair: &ZeroDivisorPair, search: Search) -> Result<TrivialityVerdict, ZdError> {
    let spec = pair.a().spec();
    let (candidates, description) = finite_order_candidates(spec, search)?;
    let mut orientations = Vec::new();
    let mut pruned = 0;
    if pair.a().augmentation().is_zero() {
        orientations.push(Orientation::OneMinusFirst);
    } else {
        pruned += 1;
    }
    if pair.b().augmentation().is_zero() {
        orientations.push(Orientation::SumFirst);
    } else {
        pruned += 1;
    }

    let found = candidates
        .par_iter()
        .map(|(h, s)| try_candidate(pair, h, *s, &orientations))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        Some(Ok(Some(cert))) => Ok(TrivialityVerdict::Trivial(cert)),
        Some(Err(e)) => Err(e),
        _ => Ok(TrivialityVerdict::NoneFound(SearchSpace {
            description,
            candidates: candidates.len(),
            orientations_tried: candidates.len() * orientations.len(),
            pruned_by_augmentation: candidates.len() * pruned,
        })),
    }
}
