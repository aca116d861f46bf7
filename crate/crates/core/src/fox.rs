//! Fox free differential calculus on `Z[F_m]` and ring maps out of it.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::groups::{GroupElement, GroupKind, GroupSpec, Order, Syllable};
use crate::ring::{geometric_sum, RingElement, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoxError {
    #[error("expected an element of a free group, got a ring over {0}")]
    NotFree(String),
    #[error("generator index {index} out of range for rank {rank}")]
    BadIndex { index: usize, rank: u32 },
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("power must be at least 1")]
    BadPower,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A reduced word in a free group together with its ambient `Free(m)` spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeWord {
    spec: GroupSpec,
    word: GroupElement,
}

impl FreeWord {
    pub fn new(spec: &GroupSpec, word: GroupElement) -> Result<Self, FoxError> {
        free_rank(spec)?;
        spec.check(&word).map_err(RingError::from)?;
        Ok(FreeWord { spec: spec.clone(), word })
    }

    /// `[b_i, b_j]^n` in `Free(rank)` (0-based generator indices).
    pub fn commutator_power(rank: u32, i: u32, j: u32, n: i64) -> Result<Self, FoxError> {
        let spec = GroupSpec::free(rank).map_err(RingError::from)?;
        let bi = GroupElement::Free(vec![Syllable::new(i, 1)]);
        let bj = GroupElement::Free(vec![Syllable::new(j, 1)]);
        let c = spec.commutator(&bi, &bj).map_err(RingError::from)?;
        let w = spec.pow(&c, n).map_err(RingError::from)?;
        Self::new(&spec, w)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn element(&self) -> &GroupElement {
        &self.word
    }

    pub fn rank(&self) -> u32 {
        free_rank(&self.spec).expect("validated at construction")
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        FreeWord { spec: self.spec.clone(), word: self.spec.pow_unchecked(&self.word, n) }
    }

    fn syllables(&self) -> &[Syllable] {
        match &self.word {
            GroupElement::Free(w) => w,
            _ => unreachable!("FreeWord holds a free group element"),
        }
    }
}

fn free_rank(spec: &GroupSpec) -> Result<u32, FoxError> {
    match spec.kind() {
        GroupKind::Free { rank } => Ok(*rank),
        _ => Err(FoxError::NotFree(spec.to_string())),
    }
}

/// `∂w/∂b_i` for a 0-based generator index, computed letter by letter with
/// `∂(u x)/∂b_i = ∂u/∂b_i + u ∂x/∂b_i`.
pub fn fox_derivative(w: &FreeWord, i: usize) -> Result<RingElement, FoxError> {
    let rank = w.rank();
    if i >= rank as usize {
        return Err(FoxError::BadIndex { index: i, rank });
    }
    let spec = &w.spec;
    let mut out = RingElement::zero(spec);
    let mut prefix = spec.identity();
    for s in w.syllables() {
        let step = if s.exponent > 0 { 1 } else { -1 };
        let letter = GroupElement::Free(vec![Syllable::new(s.generator, step)]);
        for _ in 0..s.exponent.unsigned_abs() {
            if s.generator as usize == i {
                if step > 0 {
                    // ∂b_i/∂b_i = 1
                    out.add_term(prefix.clone(), BigInt::one());
                } else {
                    // ∂b_i^-1/∂b_i = -b_i^-1
                    out.add_term(spec.mul_unchecked(&prefix, &letter), -BigInt::one());
                }
            }
            prefix = spec.mul_unchecked(&prefix, &letter);
        }
    }
    Ok(out)
}

/// Checks `∂(w^n)/∂b_i = (sum_{j<n} w^j) ∂w/∂b_i`, both sides computed
/// independently.
pub fn fox_power_rule_check(w: &FreeWord, n: u64, i: usize) -> Result<bool, FoxError> {
    if n < 1 {
        return Err(FoxError::BadPower);
    }
    let direct = fox_derivative(&w.pow(n as i64), i)?;
    let factored = geometric_sum(&w.spec, &w.word, n)?.checked_mul(&fox_derivative(w, i)?)?;
    Ok(direct == factored)
}

/// Right-hand side of the fundamental identity: `sum_i ∂w/∂b_i (b_i - 1)`.
pub fn fundamental_expansion(w: &FreeWord) -> Result<RingElement, FoxError> {
    let spec = &w.spec;
    let mut rhs = RingElement::zero(spec);
    for i in 0..w.rank() as usize {
        let bi = spec.generator(i).expect("generator index below rank");
        let bi_minus_one = RingElement::from_element(spec, bi)? - RingElement::one(spec);
        rhs = &rhs + &fox_derivative(w, i)?.checked_mul(&bi_minus_one)?;
    }
    Ok(rhs)
}

/// Checks `w - 1 = sum_i ∂w/∂b_i (b_i - 1)` exactly in `Z[F_m]`.
pub fn fundamental_identity_check(w: &FreeWord) -> Result<bool, FoxError> {
    let lhs = RingElement::from_element(&w.spec, w.word.clone())? - RingElement::one(&w.spec);
    Ok(lhs == fundamental_expansion(w)?)
}

/// The ring map `Z[F_m] -> Z[target]` induced by `b_i -> images[i]`.
pub fn theta(p: &RingElement, target: &GroupSpec, images: &[GroupElement]) -> Result<RingElement, FoxError> {
    let rank = free_rank(p.spec())?;
    if images.len() != rank as usize {
        return Err(FoxError::ImageCount { expected: rank as usize, got: images.len() });
    }
    for img in images {
        target.check(img).map_err(RingError::from)?;
    }
    Ok(p.map_elements(target, |g| p.spec().word_image(g, target, images)))
}

/// Image of a single free word.
pub fn theta_element(w: &FreeWord, target: &GroupSpec, images: &[GroupElement]) -> Result<GroupElement, FoxError> {
    let p = theta(&RingElement::from_element(&w.spec, w.word.clone())?, target, images)?;
    Ok(p.support().into_iter().next().expect("image of a group element is a group element"))
}

/// Outcome of pushing the fundamental identity through `theta`.
#[derive(Clone, Debug)]
pub struct AnnihilationPipeline {
    /// `theta(w) = 1` in the target.
    pub relator_maps_to_one: bool,
    /// Order of `theta(b_2)`.
    pub second_image_order: Order,
    /// `theta(∂w/∂b_1)`.
    pub left_factor: RingElement,
    /// `theta((b_1 - 1) sum_{j<n} b_2^j)`.
    pub right_factor: RingElement,
    /// `theta(∂w/∂b_1 (b_1 - 1) sum_{j<n} b_2^j)`.
    pub product: RingElement,
}

impl AnnihilationPipeline {
    /// True when the hypotheses held and the product vanished.
    pub fn holds(&self) -> bool {
        self.relator_maps_to_one && self.product.is_zero()
    }
}

/// Computes `theta(∂w/∂b_1 (b_1 - 1) sum_{j=0}^{n-1} b_2^j)` for a word with
/// `theta(w) = 1` and `theta(b_2)^n = 1`. The hypotheses are reported, not
/// assumed; the product is computed in the free group ring and then mapped.
pub fn annihilation_pipeline(
    w: &FreeWord,
    n: u64,
    target: &GroupSpec,
    images: &[GroupElement],
) -> Result<AnnihilationPipeline, FoxError> {
    let spec = &w.spec;
    if w.rank() < 2 {
        return Err(FoxError::BadIndex { index: 1, rank: w.rank() });
    }
    let relator_image = theta_element(w, target, images)?;
    let second_image_order = target.element_order(&images[1]).map_err(RingError::from)?;

    let b1 = spec.generator(0).expect("rank >= 2");
    let b2 = spec.generator(1).expect("rank >= 2");
    let d1 = fox_derivative(w, 0)?;
    let tail = (RingElement::from_element(spec, b1)? - RingElement::one(spec)).checked_mul(&geometric_sum(spec, &b2, n)?)?;
    let full = d1.checked_mul(&tail)?;
    Ok(AnnihilationPipeline {
        relator_maps_to_one: target.is_identity(&relator_image),
        second_image_order,
        left_factor: theta(&d1, target, images)?,
        right_factor: theta(&tail, target, images)?,
        product: theta(&full, target, images)?,
    })
}
