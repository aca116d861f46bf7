//! Exact divisibility by `1 - h` and by `1 + h + .. + h^{s-1}`.
//!
//! On each coset of `H = <h>` the equation decouples: `X(1 - h) = A` is
//! solvable iff `A` sums to zero on every left coset `gH`, and
//! `X(1 + h + .. + h^{s-1}) = A` iff `A` is constant on every left coset.
//! Right cosets play the same role for `C Y = B`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::annihilator::{left_multiplication_matrix, right_multiplication_matrix};
use super::cosets::Side;
use super::ZdError;
use crate::groups::{GroupElement, GroupSpec, Order};
use crate::linalg::solve_rational;
use crate::ring::{geometric_sum, one_minus, RingElement};

/// Shape of the cyclic factor in a trivial pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CofactorKind {
    /// `1 - h`
    OneMinusH,
    /// `1 + h + .. + h^{s-1}`
    SumH,
}

fn finite_order(spec: &GroupSpec, h: &GroupElement) -> Result<u64, ZdError> {
    match spec.element_order(h)? {
        Order::Finite(s) if s > 1 => Ok(s),
        other => Err(ZdError::BadCofactorElement(other.to_string())),
    }
}

/// The ring element `1 - h` or `sum_{i<s} h^i` for `h` of order `s`.
pub fn cofactor(spec: &GroupSpec, kind: CofactorKind, h: &GroupElement) -> Result<RingElement, ZdError> {
    let s = finite_order(spec, h)?;
    Ok(match kind {
        CofactorKind::OneMinusH => one_minus(spec, h)?,
        CofactorKind::SumH => geometric_sum(spec, h, s)?,
    })
}

/// Finds `X` with `X C = A`, where `C` is the cofactor of `kind` for `h`.
pub fn solve_a_eq_x_times(a: &RingElement, kind: CofactorKind, h: &GroupElement) -> Result<Option<RingElement>, ZdError> {
    solve_on_cosets(a, kind, h, Side::Left)
}

/// Finds `Y` with `C Y = B`.
pub fn solve_b_eq_times_y(b: &RingElement, kind: CofactorKind, h: &GroupElement) -> Result<Option<RingElement>, ZdError> {
    solve_on_cosets(b, kind, h, Side::Right)
}

fn solve_on_cosets(
    p: &RingElement,
    kind: CofactorKind,
    h: &GroupElement,
    side: Side,
) -> Result<Option<RingElement>, ZdError> {
    let spec = p.spec();
    let s = finite_order(spec, h)? as usize;
    let mut powers = Vec::with_capacity(s);
    let mut x = spec.identity();
    for _ in 0..s {
        powers.push(x.clone());
        x = spec.mul_unchecked(&x, h);
    }

    let mut solution = RingElement::zero(spec);
    let mut visited: HashSet<GroupElement> = HashSet::new();
    for g in p.support() {
        if visited.contains(&g) {
            continue;
        }
        // members[k] = g h^k (left) or h^k g (right)
        let members: Vec<GroupElement> = powers
            .iter()
            .map(|hk| match side {
                Side::Left => spec.mul_unchecked(&g, hk),
                Side::Right => spec.mul_unchecked(hk, &g),
            })
            .collect();
        visited.extend(members.iter().cloned());
        // start the coset at its least element so the cofactor is canonical
        let start = (0..s)
            .min_by(|&i, &j| spec.cmp_elements(&members[i], &members[j]))
            .expect("coset is nonempty");
        let ordered: Vec<&GroupElement> = (0..s).map(|k| &members[(start + k) % s]).collect();
        let alphas: Vec<BigInt> = ordered.iter().map(|m| p.coefficient(m)).collect();

        match kind {
            CofactorKind::OneMinusH => {
                // x_k - x_{k-1} = alpha_k with x_{s-1} = 0
                if !alphas.iter().sum::<BigInt>().is_zero() {
                    return Ok(None);
                }
                let mut partial = BigInt::zero();
                for k in 0..s - 1 {
                    partial += &alphas[k];
                    solution.add_term(ordered[k].clone(), partial.clone());
                }
            }
            CofactorKind::SumH => {
                if alphas.iter().any(|x| *x != alphas[0]) {
                    return Ok(None);
                }
                solution.add_term(ordered[0].clone(), alphas[0].clone());
            }
        }
    }

    let c = cofactor(spec, kind, h)?;
    let back = match side {
        Side::Left => solution.checked_mul(&c)?,
        Side::Right => c.checked_mul(&solution)?,
    };
    debug_assert_eq!(&back, p, "coset solver produced a wrong cofactor");
    Ok(Some(solution))
}

/// Solves `X C = A` (left side) or `C Y = A` (right side) over a finite group
/// by exact rational linear algebra, returning an integral solution with free
/// variables set to zero, if that solution is integral.
pub fn solve_by_linear_algebra(a: &RingElement, c: &RingElement, side: Side) -> Result<Option<RingElement>, ZdError> {
    // X -> X C is right multiplication by C
    let (basis, m) = match side {
        Side::Left => right_multiplication_matrix(c)?,
        Side::Right => left_multiplication_matrix(c)?,
    };
    let rhs: Vec<BigInt> = basis.iter().map(|g| a.coefficient(g)).collect();
    let Some(x) = solve_rational(&m, basis.len(), &rhs) else {
        return Ok(None);
    };
    if x.iter().any(|v| !v.denom().is_one()) {
        return Ok(None);
    }
    let sol = RingElement::from_terms(a.spec(), basis.into_iter().zip(x.into_iter().map(|v| v.to_integer())))?;
    Ok(Some(sol))
}
