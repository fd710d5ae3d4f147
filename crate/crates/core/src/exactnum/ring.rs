//! Minimal commutative-ring abstraction shared by the exact determinant routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An integral domain where divisions performed by fraction-free elimination are exact.
pub trait ExactRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// Divide, assuming `other` divides `self` exactly. Panics otherwise.
    fn div_exact(&self, other: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(Zero::is_zero(&r), "inexact integer division in elimination");
        q
    }
}

impl ExactRing for BigRational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

/// Fraction-free (Bareiss) determinant with row pivoting.
///
/// Every intermediate division is exact in an integral domain, so no fractions
/// beyond those already present in the ring appear.
pub fn bareiss_det<T: ExactRing>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    if n == 0 {
        return T::ring_one();
    }
    assert!(
        matrix.iter().all(|row| row.len() == n),
        "determinant of a non-square matrix"
    );
    let mut a: Vec<Vec<T>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = T::ring_one();
    for k in 0..n - 1 {
        if a[k][k].ring_is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].ring_is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return T::ring_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].ring_mul(&a[k][k]).ring_sub(&a[i][k].ring_mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.ring_neg()
    } else {
        d
    }
}

/// Cofactor expansion along the first row. Exponential cost; used as an
/// independent cross-check for small matrices.
pub fn laplace_det<T: ExactRing>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    match n {
        0 => T::ring_one(),
        1 => matrix[0][0].clone(),
        _ => {
            let mut acc = T::ring_zero();
            for col in 0..n {
                if matrix[0][col].ring_is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = matrix[0][col].ring_mul(&laplace_det(&minor));
                acc = if col % 2 == 0 {
                    acc.ring_add(&term)
                } else {
                    acc.ring_sub(&term)
                };
            }
            acc
        }
    }
}

/// Sign of the permutation given as an image vector.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub(crate) fn abs_bits(x: &BigInt) -> u64 {
    x.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn bareiss_matches_laplace_on_integers() {
        let m = int_matrix(&[&[2, -1, 0, 3], &[4, 0, 1, -2], &[0, 0, 5, 1], &[1, 7, -3, 2]]);
        assert_eq!(bareiss_det(&m), laplace_det(&m));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_det(&m), BigInt::from(-1));
        let singular = int_matrix(&[&[0, 1], &[0, 2]]);
        assert_eq!(bareiss_det(&singular), BigInt::from(0));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[2, 1, 0]), -1);
    }
}
