//! Syllable words shared by the free group and free product models.

use super::Order;

/// One maximal power of a single generator inside a reduced word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: u32,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: u32, exponent: i64) -> Self {
        Syllable { generator, exponent }
    }
}

pub(crate) fn normalize_exponent(exponent: i64, order: Order) -> i64 {
    match order {
        Order::Finite(q) => exponent.rem_euclid(q as i64),
        Order::Infinite => exponent,
    }
}

/// Appends a syllable, merging with the last one and dropping zero syllables.
///
/// Feeding the syllables of a reduced word one at a time cascades cancellations
/// through the accumulated prefix.
pub(crate) fn push_syllable<F>(word: &mut Vec<Syllable>, s: Syllable, order_of: &F)
where
    F: Fn(u32) -> Order,
{
    let order = order_of(s.generator);
    let e = normalize_exponent(s.exponent, order);
    if e == 0 {
        return;
    }
    if let Some(top) = word.last_mut() {
        if top.generator == s.generator {
            let merged = normalize_exponent(top.exponent + e, order);
            if merged == 0 {
                word.pop();
            } else {
                top.exponent = merged;
            }
            return;
        }
    }
    word.push(Syllable::new(s.generator, e));
}

pub(crate) fn multiply<F>(u: &[Syllable], v: &[Syllable], order_of: &F) -> Vec<Syllable>
where
    F: Fn(u32) -> Order,
{
    let mut out = Vec::with_capacity(u.len() + v.len());
    out.extend_from_slice(u);
    for s in v {
        push_syllable(&mut out, *s, order_of);
    }
    out
}

pub(crate) fn invert<F>(u: &[Syllable], order_of: &F) -> Vec<Syllable>
where
    F: Fn(u32) -> Order,
{
    u.iter()
        .rev()
        .map(|s| Syllable::new(s.generator, normalize_exponent(-s.exponent, order_of(s.generator))))
        .collect()
}

pub(crate) fn length(u: &[Syllable]) -> usize {
    u.iter().map(|s| s.exponent.unsigned_abs() as usize).sum()
}

/// Conjugates away matching end syllables until the word is cyclically reduced.
pub(crate) fn cyclically_reduce<F>(u: &[Syllable], order_of: &F) -> Vec<Syllable>
where
    F: Fn(u32) -> Order,
{
    let mut w = u.to_vec();
    while w.len() >= 2 && w[0].generator == w[w.len() - 1].generator {
        let first = [w[0]];
        let first_inv = invert(&first, order_of);
        w = multiply(&multiply(&first_inv, &w, order_of), &first, order_of);
    }
    w
}

/// All reduced words of length at most `bound`.
///
/// `exponents(g)` lists the admissible stored exponents of generator `g`;
/// the length of a syllable is the absolute value of its stored exponent.
pub(crate) fn enumerate_words<E>(generators: u32, bound: usize, exponents: &E) -> Vec<Vec<Syllable>>
where
    E: Fn(u32) -> Vec<i64>,
{
    let mut out = Vec::new();
    let mut stack = Vec::new();
    extend_words(generators, bound, exponents, &mut stack, &mut out);
    out
}

fn extend_words<E>(
    generators: u32,
    budget: usize,
    exponents: &E,
    current: &mut Vec<Syllable>,
    out: &mut Vec<Vec<Syllable>>,
) where
    E: Fn(u32) -> Vec<i64>,
{
    out.push(current.clone());
    for g in 0..generators {
        if current.last().map(|s| s.generator) == Some(g) {
            continue;
        }
        for e in exponents(g) {
            let len = e.unsigned_abs() as usize;
            if len == 0 || len > budget {
                continue;
            }
            current.push(Syllable::new(g, e));
            extend_words(generators, budget - len, exponents, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3_inf(g: u32) -> Order {
        if g == 0 {
            Order::Finite(3)
        } else {
            Order::Infinite
        }
    }

    #[test]
    fn cascading_cancellation() {
        // (a b) * (b^-1 a^2) collapses completely in C3 * Z
        let u = vec![Syllable::new(0, 1), Syllable::new(1, 1)];
        let v = vec![Syllable::new(1, -1), Syllable::new(0, 2)];
        assert!(multiply(&u, &v, &c3_inf).is_empty());
    }

    #[test]
    fn cyclic_reduction_of_conjugate() {
        // b a b^-1 reduces to a
        let w = vec![Syllable::new(1, 1), Syllable::new(0, 1), Syllable::new(1, -1)];
        assert_eq!(cyclically_reduce(&w, &c3_inf), vec![Syllable::new(0, 1)]);
    }
}
