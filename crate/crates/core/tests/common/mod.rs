#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;
use zerodiv::{FiniteTable, GroupElement, GroupSpec, Order, RingElement};

/// Upper unitriangular 3x3 matrices mod n, `a^i b^j c^k` sent to
/// `[[1, i, k + i j], [0, 1, j], [0, 0, 1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Uni {
    pub x: u64,
    pub z: u64,
    pub y: u64,
    pub n: u64,
}

impl Uni {
    pub fn from_normal_form(i: u64, j: u64, k: u64, n: u64) -> Uni {
        Uni { x: i % n, y: j % n, z: (k + i * j) % n, n }
    }

    pub fn from_element(g: &GroupElement, n: u64) -> Uni {
        match g {
            GroupElement::Nil2 { a, b, c } => Uni::from_normal_form(*a, *b, *c, n),
            other => panic!("not a Nil2 element: {other:?}"),
        }
    }

    /// Full matrix product of [[1,x,z],[0,1,y],[0,0,1]].
    pub fn mul(self, o: Uni) -> Uni {
        let n = self.n;
        Uni { x: (self.x + o.x) % n, y: (self.y + o.y) % n, z: (o.z + self.x * o.y + self.z) % n, n }
    }

    pub fn to_element(self) -> GroupElement {
        let n = self.n;
        let c = (self.z + n * n - (self.x * self.y) % n) % n;
        GroupElement::Nil2 { a: self.x, b: self.y, c }
    }
}

/// `A * B` in `Z[Nil2(n)]` with the group law replaced by matrix products.
pub fn nil2_product_by_matrices(p: &RingElement, q: &RingElement, n: u64) -> HashMap<Uni, BigInt> {
    let mut out: HashMap<Uni, BigInt> = HashMap::new();
    for (g, c) in p.terms() {
        for (h, d) in q.terms() {
            let m = Uni::from_element(g, n).mul(Uni::from_element(h, n));
            *out.entry(m).or_default() += c * d;
        }
    }
    out.retain(|_, v| *v != BigInt::from(0));
    out
}

/// The five model families with small parameters.
pub fn model_zoo() -> Vec<GroupSpec> {
    vec![
        GroupSpec::free(2).unwrap(),
        GroupSpec::cyclic(5).unwrap(),
        GroupSpec::free_product(3, Order::Infinite).unwrap(),
        GroupSpec::free_product(2, Order::Finite(2)).unwrap(),
        GroupSpec::nil2(3).unwrap(),
        GroupSpec::table(FiniteTable::symmetric3()),
    ]
}

/// All elements for finite models, elements of length at most 3 otherwise.
pub fn element_pool(spec: &GroupSpec) -> Vec<GroupElement> {
    spec.elements(Some(3)).unwrap()
}

pub fn random_ring_element(spec: &GroupSpec, pool: &[GroupElement], rng: &mut StdRng) -> RingElement {
    let n = rng.gen_range(0..=4);
    let terms: Vec<(GroupElement, i64)> =
        (0..n).map(|_| (pool[rng.gen_range(0..pool.len())].clone(), rng.gen_range(-3..=3))).collect();
    RingElement::from_terms(spec, terms).unwrap()
}

/// Groups of order at most 6, one per isomorphism class.
pub fn small_groups() -> Vec<(&'static str, GroupSpec)> {
    vec![
        ("C2", GroupSpec::cyclic(2).unwrap()),
        ("C3", GroupSpec::cyclic(3).unwrap()),
        ("C4", GroupSpec::cyclic(4).unwrap()),
        ("V4", GroupSpec::table(FiniteTable::klein_four())),
        ("C5", GroupSpec::cyclic(5).unwrap()),
        ("C6", GroupSpec::cyclic(6).unwrap()),
        ("S3", GroupSpec::table(FiniteTable::symmetric3())),
    ]
}

/// Integer vectors over a finite group, indexed by an element list, with a
/// product computed from a precomputed Cayley table.
pub struct Dense {
    pub elements: Vec<GroupElement>,
    pub table: Vec<Vec<usize>>,
}

impl Dense {
    pub fn new(spec: &GroupSpec) -> Dense {
        let elements = spec.elements(None).unwrap();
        let index: HashMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let table = elements
            .iter()
            .map(|g| elements.iter().map(|h| index[&spec.mul(g, h).unwrap()]).collect())
            .collect();
        Dense { elements, table }
    }

    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; x.len()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                out[self.table[i][j]] += a * b;
            }
        }
        out
    }

    pub fn dense(&self, p: &RingElement) -> Vec<i64> {
        self.elements
            .iter()
            .map(|g| i64::try_from(p.coefficient(g)).expect("small coefficient"))
            .collect()
    }

    pub fn sparse(&self, spec: &GroupSpec, v: &[i64]) -> RingElement {
        RingElement::from_terms(spec, self.elements.iter().cloned().zip(v.iter().copied())).unwrap()
    }
}

/// Every vector in `[lo, hi]^len`.
pub fn box_vectors(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}
