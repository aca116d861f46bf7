//! Exact computation in integral group rings `Z[G]` of computable groups, with
//! tools for constructing and classifying zero-divisor pairs.
//!
//! * [`groups`]: canonical-form group models (free, cyclic, free products of
//!   two cyclics, the class-2 nilpotent group `Nil2(n)`, Cayley tables).
//! * [`ring`]: sparse integer formal sums over those groups.
//! * [`fox`]: Fox derivatives on free group rings and induced ring maps.
//! * [`zdlab`]: constructions of zero-divisor pairs, triviality and
//!   primitivity certificates, coset partitions, annihilators.
//! * [`expr`]: the text grammar for group specs and ring expressions.

pub mod expr;
pub mod fox;
pub mod groups;
pub mod linalg;
pub mod ring;
pub mod zdlab;

pub use groups::{CyclicSubgroup, FiniteTable, GroupElement, GroupSpec, Order};
pub use ring::RingElement;
