//! Schur polynomials evaluated at rational points.

use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::partition::Partition;
use crate::exactnum::bareiss_det;

/// `Δ(x) = Π_{i<j} (x_i - x_j)`.
pub fn vandermonde(x: &[BigRational]) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            acc *= &x[i] - &x[j];
        }
    }
    acc
}

/// Alternant `det[x_i^{α_j}]`.
pub fn alternant(exponents: &[usize], x: &[BigRational]) -> BigRational {
    let m: Vec<Vec<BigRational>> = x
        .iter()
        .map(|xi| exponents.iter().map(|&a| Pow::pow(xi, a)).collect())
        .collect();
    bareiss_det(&m)
}

/// `s_λ(x)`: bialternant ratio `a_{λ+δ}/a_δ` when the entries of `x` are distinct,
/// otherwise a sum over semistandard tableaux.
pub fn schur_eval(lambda: &Partition, x: &[BigRational]) -> BigRational {
    assert_eq!(lambda.len(), x.len(), "partition length must match the number of variables");
    let delta = vandermonde(x);
    if delta.is_zero() {
        schur_tableaux(lambda, x)
    } else {
        alternant(&lambda.shifted(), x) / delta
    }
}

/// `Σ_T x^T` over semistandard Young tableaux of shape `λ` with entries `1..=k`.
pub fn schur_tableaux(lambda: &Partition, x: &[BigRational]) -> BigRational {
    let shape: Vec<usize> = lambda.parts().iter().copied().filter(|&p| p > 0).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut total = BigRational::zero();
    fill(&cells, 0, &mut grid, x, &BigRational::one(), &mut total);
    total
}

fn fill(
    cells: &[(usize, usize)],
    pos: usize,
    grid: &mut Vec<Vec<usize>>,
    x: &[BigRational],
    weight: &BigRational,
    total: &mut BigRational,
) {
    let Some(&(r, c)) = cells.get(pos) else {
        *total += weight;
        return;
    };
    let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
    for e in lo_row.max(lo_col)..x.len() {
        grid[r][c] = e;
        fill(cells, pos + 1, grid, x, &(weight * &x[e]), total);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_bigint::BigInt;

    fn rational(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&n| rational(n)).collect()
    }

    #[test]
    fn elementary_cases() {
        assert_eq!(schur_eval(&Partition::empty(2), &q(&[3, 5])), rational(1));
        assert_eq!(schur_eval(&Partition::new(vec![1], 2), &q(&[3, 5])), rational(8));
    }

    #[test]
    fn two_one_in_two_variables() {
        // s_(2,1)(x1, x2) = x1²x2 + x1x2²
        let x = q(&[1, 2]);
        let monomial = rational(1 * 1 * 2 + 1 * 2 * 2);
        assert_eq!(schur_eval(&Partition::new(vec![2, 1], 2), &x), monomial);
    }

    #[test]
    fn fallback_agrees_with_bialternant() {
        for parts in [vec![], vec![1], vec![2, 1], vec![3, 1, 1], vec![2, 2]] {
            let lam = Partition::new(parts, 3);
            let x = vec![rational(2), BigRational::new(BigInt::from(-1), BigInt::from(3)), rational(5)];
            assert_eq!(schur_eval(&lam, &x), schur_tableaux(&lam, &x), "{lam}");
        }
        // repeated variables: s_(1,1)(t,t) = t²
        let lam = Partition::new(vec![1, 1], 2);
        assert_eq!(schur_eval(&lam, &q(&[3, 3])), rational(9));
    }

    #[test]
    fn symmetric_in_variables() {
        let lam = Partition::new(vec![3, 1], 3);
        let a = schur_eval(&lam, &q(&[1, -2, 4]));
        let b = schur_eval(&lam, &q(&[4, 1, -2]));
        assert_eq!(a, b);
    }
}
