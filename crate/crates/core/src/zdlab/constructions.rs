use std::collections::HashSet;

use num_bigint::BigInt;

use super::annihilator::annihilator_right;
use super::primitive::UnitCatalogEntry;
use super::{Check, Provenance, ZdError, ZeroDivisorPair};
use crate::groups::{CyclicSubgroup, GroupElement, GroupKind, GroupSpec, Order, Syllable};
use crate::ring::{geometric_sum, geometric_sum_from_one, one_minus, RingElement};

/// A constructed pair together with the identity checks performed on it.
#[derive(Clone, Debug)]
pub struct Construction {
    pub pair: ZeroDivisorPair,
    /// The unit `U` with `A = (1 - a)U`, for the free-product constructions.
    pub unit: Option<UnitCatalogEntry>,
    pub checks: Vec<Check>,
}

impl Construction {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn element(spec: &GroupSpec, g: &GroupElement) -> RingElement {
    RingElement::from_element(spec, g.clone()).expect("element of the ambient group")
}

/// The pair `A = (1 + c + .. + c^{n-1})(1 - a b a^-1)`,
/// `B = (1 - a)(1 + b + .. + b^{n-1})` in `Z[Nil2(n)]`, with
/// `c = a b a^-1 b^-1`.
///
/// Even `n` is accepted; the order checks then report the failure of the
/// exponent-`n` property.
pub fn construct_theorem1(n: u64) -> Result<Construction, ZdError> {
    if n < 2 {
        return Err(ZdError::Hypothesis(format!("n must be at least 2, got {n}")));
    }
    let g = GroupSpec::nil2(n)?;
    let a = g.generator(0).expect("nil2 generator a");
    let b = g.generator(1).expect("nil2 generator b");
    let c = g.commutator(&a, &b)?;
    let d = g.conjugate(&a, &b)?;

    let sum_c = geometric_sum(&g, &c, n)?;
    let sum_b = geometric_sum(&g, &b, n)?;
    let big_a = sum_c.checked_mul(&one_minus(&g, &d)?)?;
    let big_b = one_minus(&g, &a)?.checked_mul(&sum_b)?;

    let mut checks = vec![
        Check::new("d = c b", d == g.mul(&c, &b)?),
        Check::new("d a = a b", g.mul(&d, &a)? == g.mul(&a, &b)?),
        Check::new(format!("c has order {n}"), g.element_order(&c)? == Order::Finite(n)),
        Check::new(format!("b has order {n}"), g.element_order(&b)? == Order::Finite(n)),
    ];
    let powers = |x: &GroupElement| -> Vec<GroupElement> { (0..n as i64).map(|i| g.pow_unchecked(x, i)).collect() };
    let c_pows = powers(&c);
    let b_pows = powers(&b);
    let ab_i: Vec<GroupElement> = b_pows.iter().map(|bi| g.mul_unchecked(&a, bi)).collect();
    checks.push(Check::new(
        format!("a b^i has order {n} for all i"),
        ab_i.iter().all(|x| g.order_unchecked(x) == Order::Finite(n)),
    ));
    let c_sub = CyclicSubgroup::new(&g, c.clone())?;
    checks.push(Check::new("d not in <c>", !c_sub.contains(&d)));
    let cjd: Vec<GroupElement> = c_pows.iter().map(|cj| g.mul_unchecked(cj, &d)).collect();
    let mut outside = true;
    for x in &ab_i {
        let sub = CyclicSubgroup::new(&g, x.clone())?;
        outside &= cjd.iter().all(|y| !sub.contains(y));
    }
    checks.push(Check::new("c^j d not in <a b^i> for all i, j", outside));
    checks.push(Check::new("c^i d != 1 for all i", cjd.iter().all(|y| !g.is_identity(y))));
    checks.push(Check::new("a b^j != 1 for all j", ab_i.iter().all(|y| !g.is_identity(y))));
    checks.push(Check::new("A B = 0", big_a.checked_mul(&big_b)?.is_zero()));

    let pair = ZeroDivisorPair::new(big_a, big_b, Provenance::Theorem1)?;
    Ok(Construction { pair, unit: None, checks })
}

/// `U = 1 + (1 - a) b (a + .. + a^q)` with inverse `1 - (1 - a) b (a + .. + a^q)`
/// in a free product whose first factor `<a>` has finite order `q`.
pub(crate) fn lemma3_unit(spec: &GroupSpec) -> Result<UnitCatalogEntry, ZdError> {
    let GroupKind::FreeProduct { q, .. } = spec.kind() else {
        return Err(ZdError::Hypothesis(format!("{spec} is not a free product")));
    };
    let a = spec.generator(0).expect("free product generator a");
    let b = spec.generator(1).expect("free product generator b");
    let sum_a = geometric_sum_from_one(spec, &a, *q)?;
    let t = one_minus(spec, &a)?.checked_mul(&element(spec, &b))?.checked_mul(&sum_a)?;
    let one = RingElement::one(spec);
    UnitCatalogEntry::new(&one + &t, &one - &t)
}

/// The pair `A = (1 - a)U`, `B = U^-1 (a + .. + a^q)` in `Z[C_q * C_r]` for
/// `r = inf`, or `q = r = 2`.
pub fn construct_lemma3(q: u64, r: Order) -> Result<Construction, ZdError> {
    if q < 2 {
        return Err(ZdError::Hypothesis(format!("q must exceed 1, got {q}")));
    }
    match r {
        Order::Infinite => {}
        Order::Finite(2) if q == 2 => {}
        Order::Finite(_) => {
            return Err(ZdError::Hypothesis(format!(
                "r must be inf, or (q, r) = (2, 2); got ({q}, {r})"
            )))
        }
    }
    let g = GroupSpec::free_product(q, r)?;
    let a = g.generator(0).expect("free product generator a");
    let sum_a = geometric_sum_from_one(&g, &a, q)?;
    let one_minus_a = one_minus(&g, &a)?;

    let mut checks = vec![Check::new("(1 - a)(a + .. + a^q) = 0", one_minus_a.checked_mul(&sum_a)?.is_zero())];
    let unit = lemma3_unit(&g)?;
    let one = RingElement::one(&g);
    checks.push(Check::new("U U^-1 = 1", unit.u().checked_mul(unit.u_inv())? == one));
    checks.push(Check::new("U^-1 U = 1", unit.u_inv().checked_mul(unit.u())? == one));

    let big_a = one_minus_a.checked_mul(unit.u())?;
    let big_b = unit.u_inv().checked_mul(&sum_a)?;
    checks.push(Check::new("A B = 0", big_a.checked_mul(&big_b)?.is_zero()));
    checks.push(Check::new("sigma(A) = 0", big_a.augmentation() == BigInt::from(0)));
    checks.push(Check::new(format!("sigma(B) = {q}"), big_b.augmentation() == BigInt::from(q)));

    let pair = ZeroDivisorPair::new(big_a, big_b, Provenance::Lemma3)?;
    Ok(Construction { pair, unit: Some(unit), checks })
}

/// `{1, a} ∪ {a^i b a^j : 0 <= i <= max_i, 0 <= j < q}` in a free product.
pub fn lemma3_support_pattern(spec: &GroupSpec, max_i: u64) -> Result<HashSet<GroupElement>, ZdError> {
    let GroupKind::FreeProduct { q, .. } = spec.kind() else {
        return Err(ZdError::Hypothesis(format!("{spec} is not a free product")));
    };
    let a = spec.generator(0).expect("generator a");
    let b = spec.generator(1).expect("generator b");
    let mut out: HashSet<GroupElement> = [spec.identity(), a.clone()].into_iter().collect();
    for i in 0..=max_i {
        for j in 0..*q {
            let x = spec.mul_unchecked(
                &spec.mul_unchecked(&spec.pow_unchecked(&a, i as i64), &b),
                &spec.pow_unchecked(&a, j as i64),
            );
            out.insert(x);
        }
    }
    Ok(out)
}

/// `A = 2 - h1 - h2` and a nonzero right annihilator found by exact kernel
/// computation, in a finite group where `<h1, h2>` is not cyclic.
pub fn construct_theorem2_finite(spec: &GroupSpec, h1: &GroupElement, h2: &GroupElement) -> Result<Construction, ZdError> {
    if !spec.is_finite() {
        return Err(ZdError::NotFinite(spec.to_string()));
    }
    spec.check(h1)?;
    spec.check(h2)?;
    if spec.generates_cyclic(&[h1.clone(), h2.clone()])? {
        return Err(ZdError::CyclicGenerators);
    }
    let a = RingElement::from_terms(spec, [(spec.identity(), 2), (h1.clone(), -1), (h2.clone(), -1)])?;
    let b = annihilator_right(&a)?.ok_or(ZdError::Hypothesis("2 - h1 - h2 has no right annihilator".into()))?;
    let checks = vec![
        Check::new("<h1, h2> is not cyclic", true),
        Check::new("sigma(A) = 0", a.augmentation() == BigInt::from(0)),
        Check::new("A B = 0", a.checked_mul(&b)?.is_zero()),
    ];
    let pair = ZeroDivisorPair::new(a, b, Provenance::Theorem2Finite)?;
    Ok(Construction { pair, unit: None, checks })
}

/// Embedding of a standard free product into `C_q * C_r`.
#[derive(Clone, Debug)]
pub struct StandardReduction {
    /// `C_q * C_r`, with the finite factor first.
    pub ambient: GroupSpec,
    /// `FreeProduct(q, inf)`, or `FreeProduct(2, 2)`.
    pub standard: GroupSpec,
    /// Images in `ambient` of the standard generators `a, b`.
    pub images: Vec<GroupElement>,
    /// The factors were swapped to put the finite one first.
    pub swapped: bool,
}

/// `<a, b a b a b>` of `C_q * C_r` is `C_q * C_inf` unless `q = r = 2`.
pub fn reduce_to_standard_freeproduct(q: Order, r: Order) -> Result<StandardReduction, ZdError> {
    let (q, r, swapped) = match (q, r) {
        (Order::Finite(q), r) => (q, r, false),
        (Order::Infinite, Order::Finite(r)) => (r, Order::Infinite, true),
        (Order::Infinite, Order::Infinite) => {
            return Err(ZdError::Hypothesis("at least one factor must be finite".into()))
        }
    };
    if q < 2 || matches!(r, Order::Finite(r) if r < 2) {
        return Err(ZdError::Hypothesis("both factors must be nontrivial".into()));
    }
    let ambient = GroupSpec::free_product(q, r)?;
    let a = ambient.generator(0).expect("generator a");
    if q == 2 && r == Order::Finite(2) {
        let b = ambient.generator(1).expect("generator b");
        return Ok(StandardReduction { standard: ambient.clone(), ambient, images: vec![a, b], swapped });
    }
    let babab = GroupElement::FreeProduct(vec![
        Syllable::new(1, 1),
        Syllable::new(0, 1),
        Syllable::new(1, 1),
        Syllable::new(0, 1),
        Syllable::new(1, 1),
    ]);
    Ok(StandardReduction {
        standard: GroupSpec::free_product(q, Order::Infinite)?,
        ambient,
        images: vec![a, babab],
        swapped,
    })
}

/// Builds the free-product pair in the standard subgroup and pushes it into
/// `C_q * C_r` along the embedding.
pub fn construct_theorem2_freeproduct(q: Order, r: Order) -> Result<(StandardReduction, Construction), ZdError> {
    let red = reduce_to_standard_freeproduct(q, r)?;
    let GroupKind::FreeProduct { q: q_std, r: r_std } = red.standard.kind() else {
        unreachable!("standard group is a free product")
    };
    let inner = construct_lemma3(*q_std, *r_std)?;
    let push = |p: &RingElement| p.map_elements(&red.ambient, |g| red.standard.word_image(g, &red.ambient, &red.images));
    let a = push(inner.pair.a());
    let b = push(inner.pair.b());
    let mut checks = inner.checks.clone();
    checks.push(Check::new(
        "image of b has infinite order",
        red.ambient.element_order(&red.images[1])? == Order::Infinite || red.standard == red.ambient,
    ));
    checks.push(Check::new("pushed-forward A B = 0", a.checked_mul(&b)?.is_zero()));
    let unit = inner
        .unit
        .as_ref()
        .map(|u| UnitCatalogEntry::new(push(u.u()), push(u.u_inv())))
        .transpose()?;
    let pair = ZeroDivisorPair::new(a, b, Provenance::Theorem2FreeProduct)?;
    Ok((red, Construction { pair, unit, checks }))
}
