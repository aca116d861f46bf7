//! Canonical-form models of the group families used throughout the crate.
//!
//! Five models are supported:
//!
//! * `Free(m)`: reduced words over `a1..am`,
//! * `Cyclic(q)`: residues mod `q`,
//! * `FreeProduct(q, r)`: alternating syllable words over `C_q * C_r` with
//!   generators `a` (order `q`) and `b` (order `r`, possibly infinite),
//! * `Nil2(n)`: the free two-generator nilpotent group of class 2 with all
//!   coordinates mod `n`, elements `a^i b^j c^k` with `c = a b a^-1 b^-1` central,
//! * `FiniteTable`: an explicit Cayley table.
//!
//! Elements are plain values; the [`GroupSpec`] carries the law. Every
//! operation returns canonical forms, so structural equality is group equality.

mod table;
mod word;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

pub use table::FiniteTable;
pub use word::Syllable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group parameters: {0}")]
    InvalidSpec(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("element {element} does not belong to {group}")]
    ForeignElement { element: String, group: String },
    #[error("cannot enumerate the infinite group {0} without a length bound")]
    UnboundedEnumeration(String),
    #[error("stored order {stored} does not match the true order {actual}")]
    OrderMismatch { stored: Order, actual: Order },
}

/// Order of an element or a cyclic factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(q) => Some(q),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(q) => write!(f, "{q}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Parameters of a group model. Construct through [`GroupSpec::new`] or the
/// shorthand constructors so that the parameters are validated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Free { rank: u32 },
    Cyclic { order: u64 },
    FreeProduct { q: u64, r: Order },
    Nil2 { n: u64 },
    FiniteTable(Arc<FiniteTable>),
}

/// A validated description of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec(GroupKind);

/// An element in canonical form. Which variant is valid depends on the spec.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Free(Vec<Syllable>),
    Cyclic(u64),
    FreeProduct(Vec<Syllable>),
    /// `a^a b^b c^c` with every coordinate in `[0, n)`.
    Nil2 { a: u64, b: u64, c: u64 },
    Table(usize),
}

impl GroupSpec {
    pub fn new(kind: GroupKind) -> Result<Self, GroupError> {
        match &kind {
            GroupKind::Free { rank } if *rank < 1 => {
                return Err(GroupError::InvalidSpec("free group rank must be at least 1".into()))
            }
            GroupKind::Cyclic { order } if *order < 2 => {
                return Err(GroupError::InvalidSpec("cyclic order must be at least 2".into()))
            }
            GroupKind::FreeProduct { q, r } => {
                if *q < 2 {
                    return Err(GroupError::InvalidSpec(
                        "free product: q must exceed 1 and be finite".into(),
                    ));
                }
                if matches!(r, Order::Finite(r) if *r < 2) {
                    return Err(GroupError::InvalidSpec("free product: r must exceed 1".into()));
                }
            }
            GroupKind::Nil2 { n } if *n < 2 => {
                return Err(GroupError::InvalidSpec("nil2 exponent must be at least 2".into()))
            }
            _ => {}
        }
        Ok(GroupSpec(kind))
    }

    pub fn free(rank: u32) -> Result<Self, GroupError> {
        Self::new(GroupKind::Free { rank })
    }

    pub fn cyclic(order: u64) -> Result<Self, GroupError> {
        Self::new(GroupKind::Cyclic { order })
    }

    pub fn free_product(q: u64, r: Order) -> Result<Self, GroupError> {
        Self::new(GroupKind::FreeProduct { q, r })
    }

    pub fn nil2(n: u64) -> Result<Self, GroupError> {
        Self::new(GroupKind::Nil2 { n })
    }

    pub fn table(table: FiniteTable) -> Self {
        GroupSpec(GroupKind::FiniteTable(Arc::new(table)))
    }

    pub fn kind(&self) -> &GroupKind {
        &self.0
    }

    pub fn finite_table(&self) -> Option<&FiniteTable> {
        match &self.0 {
            GroupKind::FiniteTable(t) => Some(t),
            _ => None,
        }
    }

    /// Order of the whole group.
    pub fn group_order(&self) -> Order {
        match &self.0 {
            GroupKind::Free { .. } | GroupKind::FreeProduct { .. } => Order::Infinite,
            GroupKind::Cyclic { order } => Order::Finite(*order),
            GroupKind::Nil2 { n } => Order::Finite(n * n * n),
            GroupKind::FiniteTable(t) => Order::Finite(t.order() as u64),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.group_order().is_finite()
    }

    /// Order of the cyclic factor generated by syllable generator `g`.
    fn factor_order(&self, g: u32) -> Order {
        match &self.0 {
            GroupKind::FreeProduct { q, r } => {
                if g == 0 {
                    Order::Finite(*q)
                } else {
                    *r
                }
            }
            _ => Order::Infinite,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.0 {
            GroupKind::Free { .. } => GroupElement::Free(Vec::new()),
            GroupKind::Cyclic { .. } => GroupElement::Cyclic(0),
            GroupKind::FreeProduct { .. } => GroupElement::FreeProduct(Vec::new()),
            GroupKind::Nil2 { .. } => GroupElement::Nil2 { a: 0, b: 0, c: 0 },
            GroupKind::FiniteTable(_) => GroupElement::Table(0),
        }
    }

    /// The standard generators: `a1..am`, `a`, `a, b`, `a, b` (Nil2), or every
    /// nonidentity table element.
    pub fn generators(&self) -> Vec<GroupElement> {
        match &self.0 {
            GroupKind::Free { rank } => {
                (0..*rank).map(|g| GroupElement::Free(vec![Syllable::new(g, 1)])).collect()
            }
            GroupKind::Cyclic { .. } => vec![GroupElement::Cyclic(1)],
            GroupKind::FreeProduct { .. } => vec![
                GroupElement::FreeProduct(vec![Syllable::new(0, 1)]),
                GroupElement::FreeProduct(vec![Syllable::new(1, 1)]),
            ],
            GroupKind::Nil2 { .. } => vec![
                GroupElement::Nil2 { a: 1, b: 0, c: 0 },
                GroupElement::Nil2 { a: 0, b: 1, c: 0 },
            ],
            GroupKind::FiniteTable(t) => (1..t.order()).map(GroupElement::Table).collect(),
        }
    }

    /// The `i`-th standard generator (0-based).
    pub fn generator(&self, i: usize) -> Option<GroupElement> {
        self.generators().into_iter().nth(i)
    }

    /// Checks that `g` is a canonical element of this group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        let alternating = |w: &[Syllable]| w.windows(2).all(|p| p[0].generator != p[1].generator);
        match (&self.0, g) {
            (GroupKind::Free { rank }, GroupElement::Free(w)) => {
                alternating(w) && w.iter().all(|s| s.generator < *rank && s.exponent != 0)
            }
            (GroupKind::Cyclic { order }, GroupElement::Cyclic(e)) => e < order,
            (GroupKind::FreeProduct { .. }, GroupElement::FreeProduct(w)) => {
                alternating(w)
                    && w.iter().all(|s| {
                        s.generator < 2
                            && s.exponent != 0
                            && match self.factor_order(s.generator) {
                                Order::Finite(q) => s.exponent > 0 && (s.exponent as u64) < q,
                                Order::Infinite => true,
                            }
                    })
            }
            (GroupKind::Nil2 { n }, GroupElement::Nil2 { a, b, c }) => a < n && b < n && c < n,
            (GroupKind::FiniteTable(t), GroupElement::Table(i)) => *i < t.order(),
            _ => false,
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::ForeignElement { element: format!("{g:?}"), group: self.to_string() })
        }
    }

    /// Product of two elements already known to belong to this group.
    pub(crate) fn mul_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match (&self.0, x, y) {
            (GroupKind::Free { .. }, GroupElement::Free(u), GroupElement::Free(v)) => {
                GroupElement::Free(word::multiply(u, v, &|g| self.factor_order(g)))
            }
            (GroupKind::FreeProduct { .. }, GroupElement::FreeProduct(u), GroupElement::FreeProduct(v)) => {
                GroupElement::FreeProduct(word::multiply(u, v, &|g| self.factor_order(g)))
            }
            (GroupKind::Cyclic { order }, GroupElement::Cyclic(i), GroupElement::Cyclic(j)) => {
                GroupElement::Cyclic((i + j) % order)
            }
            (
                GroupKind::Nil2 { n },
                GroupElement::Nil2 { a: i1, b: j1, c: k1 },
                GroupElement::Nil2 { a: i2, b: j2, c: k2 },
            ) => {
                // b^j a^i = a^i b^j c^{-ij}
                let n = *n;
                let cross = (i2 * j1) % n;
                GroupElement::Nil2 {
                    a: (i1 + i2) % n,
                    b: (j1 + j2) % n,
                    c: (k1 + k2 + n - cross) % n,
                }
            }
            (GroupKind::FiniteTable(t), GroupElement::Table(i), GroupElement::Table(j)) => {
                GroupElement::Table(t.product(*i, *j))
            }
            _ => panic!("mul_unchecked: element variant does not match {self}"),
        }
    }

    pub(crate) fn inv_unchecked(&self, x: &GroupElement) -> GroupElement {
        match (&self.0, x) {
            (GroupKind::Free { .. }, GroupElement::Free(u)) => {
                GroupElement::Free(word::invert(u, &|g| self.factor_order(g)))
            }
            (GroupKind::FreeProduct { .. }, GroupElement::FreeProduct(u)) => {
                GroupElement::FreeProduct(word::invert(u, &|g| self.factor_order(g)))
            }
            (GroupKind::Cyclic { order }, GroupElement::Cyclic(i)) => {
                GroupElement::Cyclic((order - i) % order)
            }
            (GroupKind::Nil2 { n }, GroupElement::Nil2 { a, b, c }) => {
                // (a^i b^j c^k)^-1 = a^-i b^-j c^{-k-ij}
                let n = *n;
                GroupElement::Nil2 {
                    a: (n - a) % n,
                    b: (n - b) % n,
                    c: (2 * n - c - (a * b) % n) % n,
                }
            }
            (GroupKind::FiniteTable(t), GroupElement::Table(i)) => GroupElement::Table(t.inverse(*i)),
            _ => panic!("inv_unchecked: element variant does not match {self}"),
        }
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub fn inv(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        Ok(self.inv_unchecked(x))
    }

    pub(crate) fn pow_unchecked(&self, x: &GroupElement, e: i64) -> GroupElement {
        let mut base = if e < 0 { self.inv_unchecked(x) } else { x.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        acc
    }

    pub fn pow(&self, x: &GroupElement, e: i64) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        Ok(self.pow_unchecked(x, e))
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        self.check(y)?;
        let xy = self.mul_unchecked(x, y);
        let xyx = self.mul_unchecked(&xy, &self.inv_unchecked(x));
        Ok(self.mul_unchecked(&xyx, &self.inv_unchecked(y)))
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: &GroupElement, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(x)?;
        Ok(self.mul_unchecked(&self.mul_unchecked(g, x), &self.inv_unchecked(g)))
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.identity()
    }

    /// Least `s >= 1` with `g^s = 1`, or infinity.
    pub fn element_order(&self, g: &GroupElement) -> Result<Order, GroupError> {
        self.check(g)?;
        Ok(self.order_unchecked(g))
    }

    pub(crate) fn order_unchecked(&self, g: &GroupElement) -> Order {
        if self.is_identity(g) {
            return Order::Finite(1);
        }
        match (&self.0, g) {
            (GroupKind::Free { .. }, _) => Order::Infinite,
            (GroupKind::FreeProduct { .. }, GroupElement::FreeProduct(w)) => {
                let core = word::cyclically_reduce(w, &|x| self.factor_order(x));
                match core.as_slice() {
                    [s] => match self.factor_order(s.generator) {
                        Order::Finite(q) => {
                            let e = s.exponent.rem_euclid(q as i64) as u64;
                            Order::Finite(q / e.gcd(&q))
                        }
                        Order::Infinite => Order::Infinite,
                    },
                    _ => Order::Infinite,
                }
            }
            (GroupKind::Cyclic { order }, GroupElement::Cyclic(e)) => Order::Finite(order / e.gcd(order)),
            _ => {
                // finite models: walk the powers
                let mut x = g.clone();
                let mut s = 1u64;
                while !self.is_identity(&x) {
                    x = self.mul_unchecked(&x, g);
                    s += 1;
                }
                Order::Finite(s)
            }
        }
    }

    /// Canonical length used for enumeration order and search bounds.
    ///
    /// Words: sum of absolute stored exponents. Cyclic: `min(e, q - e)`.
    /// Nil2: sum of the symmetric residues of the three coordinates.
    /// Tables: 0 for the identity, 1 otherwise.
    pub fn length(&self, g: &GroupElement) -> usize {
        let sym = |x: u64, n: u64| x.min(n - x) as usize;
        match (&self.0, g) {
            (_, GroupElement::Free(w)) | (_, GroupElement::FreeProduct(w)) => word::length(w),
            (GroupKind::Cyclic { order }, GroupElement::Cyclic(e)) => sym(*e, *order),
            (GroupKind::Nil2 { n }, GroupElement::Nil2 { a, b, c }) => sym(*a, *n) + sym(*b, *n) + sym(*c, *n),
            (_, GroupElement::Table(i)) => usize::from(*i != 0),
            _ => 0,
        }
    }

    /// Enumeration order: by canonical length, then by syllable/index order.
    pub fn cmp_elements(&self, x: &GroupElement, y: &GroupElement) -> Ordering {
        self.length(x).cmp(&self.length(y)).then_with(|| x.cmp(y))
    }

    /// All elements of length at most `length_bound`, each exactly once, in
    /// enumeration order. Finite models always yield the whole group.
    pub fn elements(&self, length_bound: Option<usize>) -> Result<Vec<GroupElement>, GroupError> {
        let mut out = match &self.0 {
            GroupKind::Cyclic { order } => (0..*order).map(GroupElement::Cyclic).collect(),
            GroupKind::Nil2 { n } => {
                let n = *n;
                let mut v = Vec::with_capacity((n * n * n) as usize);
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            v.push(GroupElement::Nil2 { a, b, c });
                        }
                    }
                }
                v
            }
            GroupKind::FiniteTable(t) => (0..t.order()).map(GroupElement::Table).collect(),
            GroupKind::Free { rank } => {
                let bound = length_bound.ok_or_else(|| GroupError::UnboundedEnumeration(self.to_string()))?;
                let bound_i = bound as i64;
                word::enumerate_words(*rank, bound, &|_| {
                    (1..=bound_i).flat_map(|e| [e, -e]).collect()
                })
                .into_iter()
                .map(GroupElement::Free)
                .collect()
            }
            GroupKind::FreeProduct { .. } => {
                let bound = length_bound.ok_or_else(|| GroupError::UnboundedEnumeration(self.to_string()))?;
                let bound_i = bound as i64;
                word::enumerate_words(2, bound, &|g| match self.factor_order(g) {
                    Order::Finite(q) => (1..q as i64).collect(),
                    Order::Infinite => (1..=bound_i).flat_map(|e| [e, -e]).collect(),
                })
                .into_iter()
                .map(GroupElement::FreeProduct)
                .collect()
            }
        };
        out.sort_by(|x, y| self.cmp_elements(x, y));
        Ok(out)
    }

    /// The subgroup generated by `gens`, for finite models.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> Result<Vec<GroupElement>, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::UnboundedEnumeration(self.to_string()));
        }
        for g in gens {
            self.check(g)?;
        }
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul_unchecked(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_by(|x, y| self.cmp_elements(x, y));
        Ok(out)
    }

    /// Whether the finite subgroup generated by `gens` is cyclic.
    pub fn generates_cyclic(&self, gens: &[GroupElement]) -> Result<bool, GroupError> {
        let sub = self.generated_subgroup(gens)?;
        let size = sub.len() as u64;
        Ok(sub.iter().any(|g| self.order_unchecked(g) == Order::Finite(size)))
    }

    /// Image of a word under the homomorphism sending the `i`-th standard
    /// generator to `images[i]`. Only meaningful for word models (free groups
    /// and free products), whose generators are free up to their factor orders.
    pub(crate) fn word_image(
        &self,
        g: &GroupElement,
        target: &GroupSpec,
        images: &[GroupElement],
    ) -> GroupElement {
        let w = match g {
            GroupElement::Free(w) | GroupElement::FreeProduct(w) => w,
            _ => panic!("word_image: not a word model"),
        };
        w.iter().fold(target.identity(), |acc, s| {
            let img = target.pow_unchecked(&images[s.generator as usize], s.exponent);
            target.mul_unchecked(&acc, &img)
        })
    }

    /// Human-readable form of an element, e.g. `a*b^-1*a^2`, `a1^2*a2`, `xy`.
    pub fn format_element(&self, g: &GroupElement) -> String {
        fn power(name: &str, e: i64) -> String {
            if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        }
        match (&self.0, g) {
            (_, g) if self.is_identity(g) => match &self.0 {
                GroupKind::FiniteTable(t) => t.name(0).to_string(),
                _ => "1".to_string(),
            },
            (GroupKind::Free { .. }, GroupElement::Free(w)) => w
                .iter()
                .map(|s| power(&format!("a{}", s.generator + 1), s.exponent))
                .collect::<Vec<_>>()
                .join("*"),
            (GroupKind::FreeProduct { .. }, GroupElement::FreeProduct(w)) => w
                .iter()
                .map(|s| power(if s.generator == 0 { "a" } else { "b" }, s.exponent))
                .collect::<Vec<_>>()
                .join("*"),
            (GroupKind::Cyclic { .. }, GroupElement::Cyclic(e)) => power("a", *e as i64),
            (GroupKind::Nil2 { .. }, GroupElement::Nil2 { a, b, c }) => [("a", *a), ("b", *b), ("c", *c)]
                .iter()
                .filter(|(_, e)| *e != 0)
                .map(|(n, e)| power(n, *e as i64))
                .collect::<Vec<_>>()
                .join("*"),
            (GroupKind::FiniteTable(t), GroupElement::Table(i)) => t.name(*i).to_string(),
            _ => format!("{g:?}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            GroupKind::Free { rank } => write!(f, "free:{rank}"),
            GroupKind::Cyclic { order } => write!(f, "cyclic:{order}"),
            GroupKind::FreeProduct { q, r } => write!(f, "freeprod:{q},{r}"),
            GroupKind::Nil2 { n } => write!(f, "nil2:{n}"),
            GroupKind::FiniteTable(t) => match t.source() {
                Some(src) => write!(f, "table:{src}"),
                None => write!(f, "table({})", t.order()),
            },
        }
    }
}

/// A cyclic subgroup `<h>` together with the order of its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroup {
    spec: GroupSpec,
    generator: GroupElement,
    order: Order,
}

impl CyclicSubgroup {
    pub fn new(spec: &GroupSpec, generator: GroupElement) -> Result<Self, GroupError> {
        let order = spec.element_order(&generator)?;
        Ok(CyclicSubgroup { spec: spec.clone(), generator, order })
    }

    /// Builds the subgroup with a claimed order, rejecting a wrong claim.
    pub fn with_order(spec: &GroupSpec, generator: GroupElement, order: Order) -> Result<Self, GroupError> {
        let sub = Self::new(spec, generator)?;
        if sub.order != order {
            return Err(GroupError::OrderMismatch { stored: order, actual: sub.order });
        }
        Ok(sub)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn generator(&self) -> &GroupElement {
        &self.generator
    }

    pub fn order(&self) -> Order {
        self.order
    }

    /// The elements `h^0, .., h^{s-1}` of a finite cyclic subgroup.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        let s = self.order.finite()?;
        let mut out = Vec::with_capacity(s as usize);
        let mut x = self.spec.identity();
        for _ in 0..s {
            out.push(x.clone());
            x = self.spec.mul_unchecked(&x, &self.generator);
        }
        Some(out)
    }

    /// Exponent `e` with `h^e = x`, if `x` lies in the subgroup.
    ///
    /// For infinite order the search stops at `|e| <= |x| + 2|h|`: writing
    /// `h = u t u^-1` with `t` cyclically reduced gives `|h^e| >= |e| - 2|h|`.
    pub fn discrete_log(&self, x: &GroupElement) -> Option<i64> {
        if !self.spec.contains(x) {
            return None;
        }
        match self.order {
            Order::Finite(s) => {
                let mut y = self.spec.identity();
                for e in 0..s {
                    if y == *x {
                        return Some(e as i64);
                    }
                    y = self.spec.mul_unchecked(&y, &self.generator);
                }
                None
            }
            Order::Infinite => {
                let limit = (self.spec.length(x) + 2 * self.spec.length(&self.generator)) as i64;
                if self.spec.is_identity(x) {
                    return Some(0);
                }
                let inv = self.spec.inv_unchecked(&self.generator);
                let (mut up, mut down) = (self.spec.identity(), self.spec.identity());
                for e in 1..=limit {
                    up = self.spec.mul_unchecked(&up, &self.generator);
                    down = self.spec.mul_unchecked(&down, &inv);
                    if up == *x {
                        return Some(e);
                    }
                    if down == *x {
                        return Some(-e);
                    }
                }
                None
            }
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.discrete_log(x).is_some()
    }
}

/// Outcome of a bounded antinormality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AntinormalVerdict {
    /// Every conjugator within the bound (all of them for finite groups) passed.
    NoViolationWithinBound { conjugators_checked: usize },
    /// `g` is outside `K` but `g k g^-1` lies in `K \ {1}`.
    Violation { conjugator: GroupElement, element: GroupElement, image: GroupElement },
}

/// Tests `g K g^-1 ∩ K != {1} => g ∈ K` for all `g` of length at most
/// `conjugator_bound` (every `g` in finite models). For infinite `K` the
/// powers `k = h^e` with `1 <= e <= conjugator_bound` are tried.
pub fn is_antinormal_bounded(k: &CyclicSubgroup, conjugator_bound: usize) -> Result<AntinormalVerdict, GroupError> {
    let spec = k.spec();
    let powers: Vec<GroupElement> = match k.elements() {
        Some(all) => all.into_iter().skip(1).collect(),
        None => (1..=conjugator_bound.max(1) as i64)
            .map(|e| spec.pow_unchecked(k.generator(), e))
            .collect(),
    };
    let conjugators = spec.elements(Some(conjugator_bound))?;
    let mut checked = 0;
    for g in conjugators {
        checked += 1;
        if k.contains(&g) {
            continue;
        }
        let g_inv = spec.inv_unchecked(&g);
        for x in &powers {
            let y = spec.mul_unchecked(&spec.mul_unchecked(&g, x), &g_inv);
            if !spec.is_identity(&y) && k.contains(&y) {
                return Ok(AntinormalVerdict::Violation { conjugator: g, element: x.clone(), image: y });
            }
        }
    }
    Ok(AntinormalVerdict::NoViolationWithinBound { conjugators_checked: checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(q: u64, r: Order) -> GroupSpec {
        GroupSpec::free_product(q, r).unwrap()
    }

    fn word(spec: &GroupSpec, letters: &[(u32, i64)]) -> GroupElement {
        letters.iter().fold(spec.identity(), |acc, &(g, e)| {
            let gen = spec.generator(g as usize).unwrap();
            spec.mul(&acc, &spec.pow(&gen, e).unwrap()).unwrap()
        })
    }

    fn nil(a: u64, b: u64, c: u64) -> GroupElement {
        GroupElement::Nil2 { a, b, c }
    }

    #[test]
    fn spec_validation() {
        assert!(GroupSpec::free(0).is_err());
        assert!(GroupSpec::cyclic(1).is_err());
        assert!(GroupSpec::free_product(1, Order::Finite(2)).is_err());
        assert!(GroupSpec::free_product(2, Order::Finite(1)).is_err());
        assert!(GroupSpec::nil2(1).is_err());
        assert!(GroupSpec::nil2(2).is_ok());
    }

    #[test]
    fn free_product_power_cancels() {
        let g = fp(3, Order::Infinite);
        let a = word(&g, &[(0, 1)]);
        let a2 = word(&g, &[(0, 2)]);
        assert_eq!(g.mul(&a, &a2).unwrap(), g.identity());
    }

    #[test]
    fn free_product_no_cancellation_in_alternating_form() {
        let g = fp(2, Order::Finite(2));
        let ab = word(&g, &[(0, 1), (1, 1)]);
        let abab = g.mul(&ab, &ab).unwrap();
        match &abab {
            GroupElement::FreeProduct(w) => assert_eq!(w.len(), 4),
            _ => unreachable!(),
        }
        assert_eq!(g.format_element(&abab), "a*b*a*b");
    }

    #[test]
    fn nil2_ba_law() {
        let g = GroupSpec::nil2(7).unwrap();
        assert_eq!(g.mul(&nil(0, 1, 0), &nil(1, 0, 0)).unwrap(), nil(1, 1, 6));
    }

    #[test]
    fn inverses() {
        let f = GroupSpec::free(2).unwrap();
        let b1b2 = word(&f, &[(0, 1), (1, 1)]);
        assert_eq!(f.inv(&b1b2).unwrap(), word(&f, &[(1, -1), (0, -1)]));
        assert_eq!(f.inv(&f.identity()).unwrap(), f.identity());
        let n3 = GroupSpec::nil2(3).unwrap();
        assert_eq!(n3.inv(&nil(1, 0, 0)).unwrap(), nil(2, 0, 0));
    }

    #[test]
    fn orders() {
        let g = fp(2, Order::Finite(2));
        assert_eq!(g.element_order(&g.identity()).unwrap(), Order::Finite(1));
        assert_eq!(g.element_order(&word(&g, &[(0, 1), (1, 1)])).unwrap(), Order::Infinite);
        // conjugate of a: b a b
        assert_eq!(g.element_order(&word(&g, &[(1, 1), (0, 1), (1, 1)])).unwrap(), Order::Finite(2));
        let n5 = GroupSpec::nil2(5).unwrap();
        assert_eq!(n5.element_order(&nil(0, 0, 1)).unwrap(), Order::Finite(5));
        let c6 = GroupSpec::cyclic(6).unwrap();
        assert_eq!(c6.element_order(&GroupElement::Cyclic(4)).unwrap(), Order::Finite(3));
        let f = GroupSpec::free(2).unwrap();
        assert_eq!(f.element_order(&word(&f, &[(0, 1)])).unwrap(), Order::Infinite);
        let h = fp(6, Order::Infinite);
        let a4 = word(&h, &[(1, 2), (0, 4), (1, -2)]);
        assert_eq!(h.element_order(&a4).unwrap(), Order::Finite(3));
    }

    #[test]
    fn commutators() {
        let n = GroupSpec::nil2(5).unwrap();
        assert_eq!(n.commutator(&nil(1, 0, 0), &nil(0, 1, 0)).unwrap(), nil(0, 0, 1));
        let f = GroupSpec::free(2).unwrap();
        let b1 = word(&f, &[(0, 1)]);
        let b2 = word(&f, &[(1, 1)]);
        let c = f.commutator(&b1, &b2).unwrap();
        assert_eq!(f.length(&c), 4);
        assert_eq!(f.format_element(&c), "a1*a2*a1^-1*a2^-1");
        assert_eq!(f.commutator(&c, &c).unwrap(), f.identity());
    }

    #[test]
    fn mixed_operands_rejected() {
        let n3 = GroupSpec::nil2(3).unwrap();
        assert!(n3.mul(&nil(0, 0, 4), &nil(0, 0, 0)).is_err());
        assert!(n3.mul(&GroupElement::Cyclic(0), &nil(0, 0, 0)).is_err());
        let g = fp(2, Order::Finite(2));
        let bad = GroupElement::FreeProduct(vec![Syllable::new(0, 1), Syllable::new(0, 1)]);
        assert!(g.inv(&bad).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        assert_eq!(c3.elements(Some(0)).unwrap().len(), 3);
        let n3 = GroupSpec::nil2(3).unwrap();
        assert_eq!(n3.elements(None).unwrap().len(), 27);
        let g = fp(2, Order::Finite(2));
        let names: Vec<_> = g.elements(Some(2)).unwrap().iter().map(|x| g.format_element(x)).collect();
        assert_eq!(names, ["1", "a", "b", "a*b", "b*a"]);
        assert!(matches!(
            GroupSpec::free(2).unwrap().elements(None),
            Err(GroupError::UnboundedEnumeration(_))
        ));
    }

    #[test]
    fn enumeration_counts_free_group() {
        // reduced words of length <= 2 in F_2: 1 + 4 + 12
        let f = GroupSpec::free(2).unwrap();
        let all = f.elements(Some(2)).unwrap();
        assert_eq!(all.len(), 17);
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn cyclic_subgroup_membership() {
        let g = fp(3, Order::Infinite);
        let b = word(&g, &[(1, 1)]);
        let k = CyclicSubgroup::new(&g, b.clone()).unwrap();
        assert_eq!(k.order(), Order::Infinite);
        assert_eq!(k.discrete_log(&word(&g, &[(1, -4)])), Some(-4));
        assert!(!k.contains(&word(&g, &[(0, 1)])));
        assert!(CyclicSubgroup::with_order(&g, b, Order::Finite(3)).is_err());
    }

    #[test]
    fn antinormality_examples() {
        let v4 = GroupSpec::table(FiniteTable::klein_four());
        let x = GroupElement::Table(1);
        let k = CyclicSubgroup::new(&v4, x).unwrap();
        match is_antinormal_bounded(&k, 0).unwrap() {
            AntinormalVerdict::Violation { conjugator, .. } => assert_eq!(v4.format_element(&conjugator), "y"),
            v => panic!("expected violation, got {v:?}"),
        }

        let g = fp(3, Order::Infinite);
        let k = CyclicSubgroup::new(&g, word(&g, &[(0, 1)])).unwrap();
        assert!(matches!(
            is_antinormal_bounded(&k, 6).unwrap(),
            AntinormalVerdict::NoViolationWithinBound { .. }
        ));

        let c5 = GroupSpec::cyclic(5).unwrap();
        let k = CyclicSubgroup::new(&c5, GroupElement::Cyclic(1)).unwrap();
        assert!(matches!(
            is_antinormal_bounded(&k, 0).unwrap(),
            AntinormalVerdict::NoViolationWithinBound { conjugators_checked: 5 }
        ));

        // c is central in Nil2, so <c> is far from antinormal
        let n3 = GroupSpec::nil2(3).unwrap();
        let k = CyclicSubgroup::new(&n3, nil(0, 0, 1)).unwrap();
        assert!(matches!(is_antinormal_bounded(&k, 0).unwrap(), AntinormalVerdict::Violation { .. }));
    }

    #[test]
    fn infinite_cyclic_subgroup_of_free_group_is_antinormal_within_bound() {
        let f = GroupSpec::free(2).unwrap();
        let k = CyclicSubgroup::new(&f, word(&f, &[(0, 1)])).unwrap();
        assert!(matches!(
            is_antinormal_bounded(&k, 3).unwrap(),
            AntinormalVerdict::NoViolationWithinBound { .. }
        ));
        // <a1^2> is not maximal: a1 conjugates it to itself
        let k = CyclicSubgroup::new(&f, word(&f, &[(0, 2)])).unwrap();
        assert!(matches!(is_antinormal_bounded(&k, 2).unwrap(), AntinormalVerdict::Violation { .. }));
    }

    #[test]
    fn generated_subgroups() {
        let v4 = GroupSpec::table(FiniteTable::klein_four());
        let (x, y) = (GroupElement::Table(1), GroupElement::Table(2));
        assert!(!v4.generates_cyclic(&[x.clone(), y]).unwrap());
        assert!(v4.generates_cyclic(&[x]).unwrap());
        let c6 = GroupSpec::table(FiniteTable::cyclic(6));
        assert!(c6.generates_cyclic(&[GroupElement::Table(1), GroupElement::Table(2)]).unwrap());
    }
}
