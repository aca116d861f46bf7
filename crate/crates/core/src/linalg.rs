//! Exact rational row reduction over integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix in row-major order.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Reduced row echelon form over the rationals and the pivot columns.
fn rref(m: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..nrows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..a[r].len() {
                    let delta = &factor * &a[row][c];
                    a[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// A basis of the rational kernel of `m` (with `ncols` columns), each vector
/// scaled to a primitive integer vector. Empty when the kernel is trivial.
pub fn integer_kernel(m: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let (r, pivots) = rref(&to_rational(m), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// Solves `m x = b` over the rationals. Returns the solution with all free
/// variables set to zero, or `None` when the system is inconsistent.
pub fn solve_rational(m: &[Vec<BigInt>], ncols: usize, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let augmented: Vec<Vec<BigInt>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&to_rational(&augmented), ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[i][ncols].clone();
    }
    Some(x)
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<BigInt>], ncols: usize) -> usize {
    rref(&to_rational(m), ncols).1.len()
}
