//! Hypergeometric constants `f±(m)` as exact elements of ℚ + ℚ/π, and the
//! row-one Green functions built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::PiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `Γ(h/2) = q·√π^s` with `s = h mod 2`; returns `q`.
fn half_gamma(h: u64) -> BigRational {
    assert!(h > 0);
    if h % 2 == 0 {
        BigRational::from_integer(factorial(h / 2 - 1))
    } else {
        let n = (h - 1) / 2;
        BigRational::new(factorial(2 * n), (BigInt::one() << (2 * n)) * factorial(n))
    }
}

/// `Γ(a/2) / (Γ(b/2)·√π)` for half-integers of opposite parity, which lies in ℚ ∪ ℚ/π.
fn gamma_ratio_over_sqrt_pi(a: u64, b: u64) -> PiPoly {
    assert_ne!(a % 2, b % 2);
    let q = half_gamma(a) / half_gamma(b);
    if a % 2 == 1 {
        PiPoly::constant(q)
    } else {
        PiPoly::monomial(q, 1)
    }
}

fn signed(c: BigInt, negative: bool) -> BigRational {
    BigRational::from_integer(if negative { -c } else { c })
}

/// Exact `f±(m)` from its finite Γ-sum.
pub fn f_pm_sum(sign: Sign, m: u64) -> PiPoly {
    match sign {
        Sign::Minus if m == 0 => PiPoly::from_ratios(&[(1, 1), (2, 1)]),
        Sign::Minus => {
            let mut acc = PiPoly::zero();
            for l in 0..m {
                let w = signed(binomial(m - 1, l), l % 2 == 1);
                acc = &acc + &gamma_ratio_over_sqrt_pi(l + 1, l + 4).scale(&w);
            }
            acc.scale(&BigRational::new(1.into(), 2.into()))
        }
        Sign::Plus => {
            let mut acc = PiPoly::zero();
            for l in 0..=m {
                let w = signed(binomial(m, l), l % 2 == 1);
                acc = &acc + &gamma_ratio_over_sqrt_pi(l + 1, l + 2).scale(&w);
            }
            acc.scale(&BigRational::new(1.into(), 4.into()))
        }
    }
}

/// `G^op(n;1,1)` from the double sum over `f₋`.
pub fn green_open_row1(n: i64) -> PiPoly {
    let n = n.unsigned_abs();
    let fm: Vec<PiPoly> = (0..=n).map(|m| f_pm_sum(Sign::Minus, m)).collect();
    let mut acc = match n {
        0 => PiPoly::integer(2),
        1 => PiPoly::from_ratios(&[(-1, 2)]),
        _ => PiPoly::zero(),
    };
    for s in 0..=n {
        let outer = binomial(2 * n, 2 * s);
        for r in 0..=s {
            let w = signed(&outer * binomial(s, r), (r + s) % 2 == 1);
            acc = &acc - &fm[(n - s + r) as usize].scale(&w);
        }
    }
    acc
}

/// Finite part `g_fin^cl(n)` of the closed row-one Green function from the double sum over `f₊`.
pub fn g_fin_closed_row1(n: i64) -> PiPoly {
    let n = n.unsigned_abs();
    let fp: Vec<PiPoly> = (0..=n + 1).map(|m| f_pm_sum(Sign::Plus, m)).collect();
    let mut acc = if n == 0 {
        PiPoly::from_ratios(&[(-1, 2)])
    } else {
        PiPoly::zero()
    };
    acc = &acc + &fp[n as usize];
    for f in &fp[..n as usize] {
        acc = &acc - f;
    }
    let two = BigRational::from_integer(2.into());
    for s in 1..=n {
        let outer = binomial(2 * n, 2 * s);
        for r in 0..s {
            let w = signed(&outer * binomial(s - 1, r), (r + s - 1) % 2 == 1);
            let i = (n + r - s) as usize;
            let term = &fp[i].scale(&two) - &fp[i + 1];
            acc = &acc - &term.scale(&w);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::kernel::PotentialKernelTable;

    fn pp(s: &str) -> PiPoly {
        s.parse().unwrap()
    }

    /// Direct series for `₂F₁(a, b; c; z)`.
    fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> f64 {
        let mut term = 1.0;
        let mut sum = 1.0;
        for n in 0..400 {
            let n = n as f64;
            term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    }

    fn f_pm_hypergeometric(sign: Sign, m: u64) -> f64 {
        let m = m as f64;
        let (a, pref) = match sign {
            Sign::Plus => (0.5, 8f64.sqrt().recip()),
            Sign::Minus => (-0.5, 8f64.sqrt()),
        };
        pref / std::f64::consts::PI * hyp2f1(a, m + 0.5, m + 1.5, 0.5) / (m + 0.5)
    }

    #[test]
    fn f_values_match_hypergeometric_definition() {
        for m in 0..=12 {
            for sign in [Sign::Plus, Sign::Minus] {
                let exact = f_pm_sum(sign, m).to_f64();
                let numeric = f_pm_hypergeometric(sign, m);
                assert!((exact - numeric).abs() < 1e-10, "{sign:?} {m}: {exact} vs {numeric}");
            }
        }
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_pm_sum(Sign::Minus, 0), pp("1 + 2/pi"));
        assert_eq!(f_pm_sum(Sign::Minus, 1), pp("1/2"));
        assert_eq!(f_pm_sum(Sign::Plus, 0), pp("1/4"));
    }

    #[test]
    fn open_row_examples() {
        assert_eq!(green_open_row1(1), pp("-1/2 + 2/pi"));
        assert_eq!(green_open_row1(4), pp("-17 + 802/15/pi"));
        assert_eq!(green_open_row1(-3), pp("-4 + 38/3/pi"));
    }

    #[test]
    fn closed_row_examples() {
        assert_eq!(g_fin_closed_row1(0), pp("-1/4"));
        assert_eq!(g_fin_closed_row1(3), pp("-9/4 + 13/3/pi"));
        assert_eq!(g_fin_closed_row1(5), pp("-121/4 + 459/5/pi"));
    }

    #[test]
    fn row_sums_agree_with_kernel_route() {
        let t = PotentialKernelTable::new(12);
        for n in -10..=10 {
            assert_eq!(green_open_row1(n), t.green_open(n, 1, 1), "open n={n}");
            assert_eq!(g_fin_closed_row1(n), t.green_closed(n, 1, 1).finite, "closed n={n}");
        }
    }
}
