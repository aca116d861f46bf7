use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ZdError;
use crate::groups::{GroupElement, GroupSpec};
use crate::linalg::{integer_kernel, IntMatrix};
use crate::ring::RingElement;

fn finite_elements(spec: &GroupSpec) -> Result<Vec<GroupElement>, ZdError> {
    if !spec.is_finite() {
        return Err(ZdError::NotFinite(spec.to_string()));
    }
    Ok(spec.elements(None)?)
}

fn multiplication_matrix(x: &RingElement, left: bool) -> Result<(Vec<GroupElement>, IntMatrix), ZdError> {
    let spec = x.spec();
    let basis = finite_elements(spec)?;
    let index: HashMap<&GroupElement, usize> = basis.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let q = basis.len();
    let mut m = vec![vec![BigInt::zero(); q]; q];
    for (j, g) in basis.iter().enumerate() {
        for (h, c) in x.terms() {
            let prod = if left { spec.mul_unchecked(h, g) } else { spec.mul_unchecked(g, h) };
            m[index[&prod]][j] += c;
        }
    }
    Ok((basis, m))
}

/// Matrix of `Y -> X Y` in the basis of group elements (enumeration order).
pub fn left_multiplication_matrix(x: &RingElement) -> Result<(Vec<GroupElement>, IntMatrix), ZdError> {
    multiplication_matrix(x, true)
}

/// Matrix of `Y -> Y X`.
pub fn right_multiplication_matrix(x: &RingElement) -> Result<(Vec<GroupElement>, IntMatrix), ZdError> {
    multiplication_matrix(x, false)
}

fn first_kernel_element(x: &RingElement, left: bool) -> Result<Option<RingElement>, ZdError> {
    let (basis, m) = multiplication_matrix(x, left)?;
    let kernel = integer_kernel(&m, basis.len());
    let Some(v) = kernel.into_iter().next() else {
        return Ok(None);
    };
    let b = RingElement::from_terms(x.spec(), basis.into_iter().zip(v))?;
    Ok(Some(b))
}

/// A nonzero `B` with `X B = 0` over a finite group, or `None` if `X` is not a
/// left zero-divisor.
pub fn annihilator_right(x: &RingElement) -> Result<Option<RingElement>, ZdError> {
    first_kernel_element(x, true)
}

/// A nonzero `B` with `B X = 0`.
pub fn annihilator_left(x: &RingElement) -> Result<Option<RingElement>, ZdError> {
    first_kernel_element(x, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteTable;
    use crate::linalg::rank;
    use crate::ring::{geometric_sum, one_minus};

    #[test]
    fn unit_has_no_annihilator() {
        let v4 = GroupSpec::table(FiniteTable::klein_four());
        assert_eq!(annihilator_right(&RingElement::one(&v4)).unwrap(), None);
        assert_eq!(annihilator_left(&RingElement::one(&v4)).unwrap(), None);
    }

    #[test]
    fn one_minus_x_in_c2() {
        let c2 = GroupSpec::cyclic(2).unwrap();
        let x = c2.generator(0).unwrap();
        let p = one_minus(&c2, &x).unwrap();
        let b = annihilator_right(&p).unwrap().unwrap();
        assert_eq!(b, geometric_sum(&c2, &x, 2).unwrap());
        let (_, m) = left_multiplication_matrix(&p).unwrap();
        assert_eq!(rank(&m, 2), 1);
        assert_eq!(integer_kernel(&m, 2).len(), 1);
    }

    #[test]
    fn klein_four_augmentation_element() {
        let v4 = GroupSpec::table(FiniteTable::klein_four());
        let x = RingElement::from_terms(
            &v4,
            [(GroupElement::Table(0), 2), (GroupElement::Table(1), -1), (GroupElement::Table(2), -1)],
        )
        .unwrap();
        let b = annihilator_right(&x).unwrap().unwrap();
        assert!(!b.is_zero());
        assert!((&x * &b).is_zero());
        let b = annihilator_left(&x).unwrap().unwrap();
        assert!((&b * &x).is_zero());
    }

    #[test]
    fn infinite_groups_rejected() {
        let f = GroupSpec::free(2).unwrap();
        assert!(matches!(annihilator_right(&RingElement::one(&f)), Err(ZdError::NotFinite(_))));
    }
}
