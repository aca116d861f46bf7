//! Exact arithmetic in the integral group ring `Z[G]`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::groups::{GroupElement, GroupError, GroupSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("operands live in different group rings: {0} vs {1}")]
    MixedGroups(String, String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finitely supported formal sum `sum c_g g` with integer coefficients.
///
/// Zero coefficients are never stored, so equality is coefficient-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    spec: GroupSpec,
    terms: HashMap<GroupElement, BigInt>,
}

impl RingElement {
    pub fn zero(spec: &GroupSpec) -> Self {
        RingElement { spec: spec.clone(), terms: HashMap::new() }
    }

    pub fn one(spec: &GroupSpec) -> Self {
        Self::monomial_unchecked(spec, spec.identity(), BigInt::one())
    }

    /// The integer `k` times the identity.
    pub fn constant(spec: &GroupSpec, k: impl Into<BigInt>) -> Self {
        Self::monomial_unchecked(spec, spec.identity(), k.into())
    }

    pub fn from_element(spec: &GroupSpec, g: GroupElement) -> Result<Self, RingError> {
        Self::monomial(spec, g, 1)
    }

    pub fn monomial(spec: &GroupSpec, g: GroupElement, coeff: impl Into<BigInt>) -> Result<Self, RingError> {
        spec.check(&g)?;
        Ok(Self::monomial_unchecked(spec, g, coeff.into()))
    }

    pub(crate) fn monomial_unchecked(spec: &GroupSpec, g: GroupElement, coeff: BigInt) -> Self {
        let mut terms = HashMap::new();
        if !coeff.is_zero() {
            terms.insert(g, coeff);
        }
        RingElement { spec: spec.clone(), terms }
    }

    /// Sums the given terms, merging repeated elements.
    pub fn from_terms<I, C>(spec: &GroupSpec, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (GroupElement, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero(spec);
        for (g, c) in terms {
            spec.check(&g)?;
            out.add_term(g, c.into());
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, g: GroupElement, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(g) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of support elements.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &GroupElement) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in enumeration order of the ambient group.
    pub fn sorted_terms(&self) -> Vec<(&GroupElement, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|x, y| self.spec.cmp_elements(x.0, y.0));
        v
    }

    /// Support in enumeration order.
    pub fn support(&self) -> Vec<GroupElement> {
        self.sorted_terms().into_iter().map(|(g, _)| g.clone()).collect()
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// If this is `±g`, returns the sign and `g`.
    pub fn as_signed_element(&self) -> Option<(bool, &GroupElement)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (g, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((true, g))
        } else if (-c).is_one() {
            Some((false, g))
        } else {
            None
        }
    }

    fn same_ring(&self, other: &Self) -> Result<(), RingError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(RingError::MixedGroups(self.spec.to_string(), other.spec.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), -c);
        }
        Ok(out)
    }

    /// Convolution product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut out = Self::zero(&self.spec);
        for (g, c) in &self.terms {
            for (h, d) in &other.terms {
                out.add_term(self.spec.mul_unchecked(g, h), c * d);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        if k.is_zero() {
            return Self::zero(&self.spec);
        }
        RingElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c * &k)).collect(),
        }
    }

    /// `p^e` for `e >= 0`.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.spec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Left multiplication by a group element: `g p`.
    pub fn left_translate(&self, g: &GroupElement) -> Self {
        RingElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(x, c)| (self.spec.mul_unchecked(g, x), c.clone())).collect(),
        }
    }

    /// Right multiplication by a group element: `p g`.
    pub fn right_translate(&self, g: &GroupElement) -> Self {
        RingElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(x, c)| (self.spec.mul_unchecked(x, g), c.clone())).collect(),
        }
    }

    /// Applies a function to every support element (used for ring maps induced
    /// by group homomorphisms).
    pub(crate) fn map_elements<F>(&self, target: &GroupSpec, f: F) -> Self
    where
        F: Fn(&GroupElement) -> GroupElement,
    {
        let mut out = Self::zero(target);
        for (g, c) in &self.terms {
            out.add_term(f(g), c.clone());
        }
        out
    }
}

/// `1 + h + .. + h^{q-1}`.
pub fn geometric_sum(spec: &GroupSpec, h: &GroupElement, q: u64) -> Result<RingElement, RingError> {
    spec.check(h)?;
    Ok(geometric_range(spec, h, 0, q))
}

/// `h + h^2 + .. + h^q`; equal to [`geometric_sum`] when `h^q = 1`.
pub fn geometric_sum_from_one(spec: &GroupSpec, h: &GroupElement, q: u64) -> Result<RingElement, RingError> {
    spec.check(h)?;
    Ok(geometric_range(spec, h, 1, q + 1))
}

fn geometric_range(spec: &GroupSpec, h: &GroupElement, from: u64, to: u64) -> RingElement {
    let mut out = RingElement::zero(spec);
    let mut x = spec.pow_unchecked(h, from as i64);
    for _ in from..to {
        out.add_term(x.clone(), BigInt::one());
        x = spec.mul_unchecked(&x, h);
    }
    out
}

/// `1 - h`.
pub fn one_minus(spec: &GroupSpec, h: &GroupElement) -> Result<RingElement, RingError> {
    spec.check(h)?;
    let mut out = RingElement::one(spec);
    out.add_term(h.clone(), -BigInt::one());
    Ok(out)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;

            /// Panics when the operands live over different groups; use the
            /// `checked_*` methods to get an error instead.
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<RingElement> for RingElement {
            type Output = RingElement;

            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        RingElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        -&self
    }
}

impl fmt::Display for RingElement {
    /// Canonical text, e.g. `2 - x - y` or `1 - a + 2*a*b^-1*a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if self.spec.is_identity(g) {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&self.spec.format_element(g))?;
            } else {
                write!(f, "{abs}*{}", self.spec.format_element(g))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteTable, Order};

    fn gen(spec: &GroupSpec, i: usize) -> GroupElement {
        spec.generator(i).unwrap()
    }

    #[test]
    fn additive_examples() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        let a = gen(&c3, 0);
        let one_minus_a = one_minus(&c3, &a).unwrap();
        let a_minus_one = -&one_minus_a;
        assert!((&one_minus_a + &a_minus_one).is_zero());
        assert!(one_minus_a.scale(0).is_zero());
        let one_plus_a = RingElement::one(&c3) + RingElement::from_element(&c3, a).unwrap();
        assert_eq!(&one_plus_a + &one_minus_a, RingElement::constant(&c3, 2));
    }

    #[test]
    fn telescoping_in_cyclic_group() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        let h = gen(&c3, 0);
        let prod = one_minus(&c3, &h).unwrap() * geometric_sum(&c3, &h, 3).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn klein_four_product_vanishes() {
        let v4 = GroupSpec::table(FiniteTable::klein_four());
        let x = RingElement::from_element(&v4, GroupElement::Table(1)).unwrap();
        let y = RingElement::from_element(&v4, GroupElement::Table(2)).unwrap();
        let xy = RingElement::from_element(&v4, GroupElement::Table(3)).unwrap();
        let a = RingElement::constant(&v4, 2) - x.clone() - y.clone();
        let b = RingElement::one(&v4) + x + y + xy;
        assert!((&a * &b).is_zero());
        assert_eq!(a.to_string(), "2 - x - y");
    }

    #[test]
    fn identity_is_neutral() {
        let g = GroupSpec::free_product(3, Order::Infinite).unwrap();
        let p = RingElement::from_terms(&g, [(gen(&g, 0), 3), (gen(&g, 1), -2)]).unwrap();
        assert_eq!(&RingElement::one(&g) * &p, p);
        assert_eq!(&p * &RingElement::one(&g), p);
    }

    #[test]
    fn augmentation_examples() {
        let c5 = GroupSpec::cyclic(5).unwrap();
        let a = gen(&c5, 0);
        assert!(one_minus(&c5, &a).unwrap().augmentation().is_zero());
        assert_eq!(geometric_sum_from_one(&c5, &a, 5).unwrap().augmentation(), BigInt::from(5));
    }

    #[test]
    fn geometric_sum_examples() {
        let c4 = GroupSpec::cyclic(4).unwrap();
        assert_eq!(geometric_sum(&c4, &c4.identity(), 3).unwrap(), RingElement::constant(&c4, 3));
        let a = gen(&c4, 0);
        assert_eq!(geometric_sum(&c4, &a, 4).unwrap().to_string(), "1 + a + a^3 + a^2");
        assert_eq!(geometric_sum(&c4, &a, 4).unwrap(), geometric_sum_from_one(&c4, &a, 4).unwrap());
        let n3 = GroupSpec::nil2(3).unwrap();
        let c = GroupElement::Nil2 { a: 0, b: 0, c: 1 };
        assert_eq!(geometric_sum(&n3, &c, 3).unwrap().to_string(), "1 + c + c^2");
    }

    #[test]
    fn support_of_zero_is_empty() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        assert!(RingElement::zero(&c3).support().is_empty());
        assert_eq!(RingElement::zero(&c3).to_string(), "0");
    }

    #[test]
    fn mixed_rings_rejected() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        let c4 = GroupSpec::cyclic(4).unwrap();
        assert!(matches!(
            RingElement::one(&c3).checked_add(&RingElement::one(&c4)),
            Err(RingError::MixedGroups(..))
        ));
        assert!(RingElement::one(&c3).checked_mul(&RingElement::one(&c4)).is_err());
        assert!(RingElement::from_element(&c3, GroupElement::Cyclic(7)).is_err());
    }

    #[test]
    fn display_signs_and_coefficients() {
        let g = GroupSpec::free_product(3, Order::Infinite).unwrap();
        let a = gen(&g, 0);
        let b_inv = g.inv(&gen(&g, 1)).unwrap();
        let aba = g.mul(&g.mul(&a, &b_inv).unwrap(), &a).unwrap();
        let p = RingElement::from_terms(&g, [(g.identity(), 1), (a, -1), (aba, 2)]).unwrap();
        assert_eq!(p.to_string(), "1 - a + 2*a*b^-1*a");
        assert_eq!((-p).to_string(), "-1 + a - 2*a*b^-1*a");
    }
}
