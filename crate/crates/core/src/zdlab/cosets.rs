use std::fmt;

use super::ZdError;
use crate::groups::{CyclicSubgroup, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// cosets `gH`
    Left,
    /// cosets `Hg`
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Partition of a finite set by the cosets of a cyclic subgroup.
#[derive(Clone, Debug)]
pub struct CosetReport {
    pub subgroup: CyclicSubgroup,
    pub side: Side,
    /// Nonempty intersections `gH ∩ S` (or `Hg ∩ S`), in order of first
    /// appearance in `S`.
    pub classes: Vec<Vec<GroupElement>>,
    /// Every class has at least two elements.
    pub all_classes_ge_2: bool,
}

impl CosetReport {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Splits `set` into the classes `x ~ y iff x^-1 y ∈ H` (left) or
/// `x y^-1 ∈ H` (right). Repeated elements of `set` are ignored.
pub fn coset_report(set: &[GroupElement], subgroup: &CyclicSubgroup, side: Side) -> Result<CosetReport, ZdError> {
    let spec = subgroup.spec();
    let mut classes: Vec<Vec<GroupElement>> = Vec::new();
    for x in set {
        spec.check(x)?;
        if classes.iter().flatten().any(|y| y == x) {
            continue;
        }
        let home = classes.iter_mut().find(|class| {
            let rep = &class[0];
            let quotient = match side {
                Side::Left => spec.mul_unchecked(&spec.inv_unchecked(rep), x),
                Side::Right => spec.mul_unchecked(rep, &spec.inv_unchecked(x)),
            };
            subgroup.contains(&quotient)
        });
        match home {
            Some(class) => class.push(x.clone()),
            None => classes.push(vec![x.clone()]),
        }
    }
    let all_classes_ge_2 = classes.iter().all(|c| c.len() >= 2);
    Ok(CosetReport { subgroup: subgroup.clone(), side, classes, all_classes_ge_2 })
}
