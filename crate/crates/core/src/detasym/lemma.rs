//! Schur expansion of determinants `det[f(v_i - u_j)]` of a shifted power series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::partition::{partitions_up_to, Partition};
use super::schur::{schur_eval, vandermonde};
use crate::exactnum::{bareiss_det, RatPoly};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AsymError {
    #[error("series coefficient b_{needed} is required but the cutoff is {cutoff}")]
    CutoffTooSmall { needed: usize, cutoff: usize },
    #[error("shift vectors have lengths {u} and {v}")]
    LengthMismatch { u: usize, v: usize },
    #[error("partitions must have {expected} parts")]
    PartitionLength { expected: usize },
}

/// `f(t) = Σ_{l ≤ D} b_l t^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least b_0");
        TruncatedSeries { coeffs }
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, l: usize) -> Result<&BigRational, AsymError> {
        self.coeffs.get(l).ok_or(AsymError::CutoffTooSmall {
            needed: l,
            cutoff: self.cutoff(),
        })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftVectors {
    pub u: Vec<BigRational>,
    pub v: Vec<BigRational>,
}

impl ShiftVectors {
    pub fn new(u: Vec<BigRational>, v: Vec<BigRational>) -> Result<Self, AsymError> {
        if u.len() != v.len() || u.is_empty() {
            return Err(AsymError::LengthMismatch { u: u.len(), v: v.len() });
        }
        Ok(ShiftVectors { u, v })
    }

    pub fn from_ints(u: &[i64], v: &[i64]) -> Result<Self, AsymError> {
        let conv = |x: &[i64]| x.iter().map(|&n| BigRational::from_integer(n.into())).collect();
        Self::new(conv(u), conv(v))
    }

    pub fn k(&self) -> usize {
        self.u.len()
    }

    /// `Δ(v)·Δ(-u)`.
    pub fn vandermonde_product(&self) -> BigRational {
        let neg_u: Vec<BigRational> = self.u.iter().map(|x| -x).collect();
        vandermonde(&self.v) * vandermonde(&neg_u)
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C_{λμ} = det[b_{λ_j+δ_j+μ_i+δ_i} · C(λ_j+δ_j+μ_i+δ_i, λ_j+δ_j)]`.
pub fn coeff_det(lambda: &Partition, mu: &Partition, b: &TruncatedSeries) -> Result<BigRational, AsymError> {
    let k = lambda.len();
    if mu.len() != k {
        return Err(AsymError::PartitionLength { expected: k });
    }
    let (q, l) = (lambda.shifted(), mu.shifted());
    let mut m = Vec::with_capacity(k);
    for li in &l {
        let mut row = Vec::with_capacity(k);
        for qj in &q {
            let n = qj + li;
            row.push(b.coeff(n)? * BigRational::from_integer(binomial(n, *qj)));
        }
        m.push(row);
    }
    Ok(bareiss_det(&m))
}

fn check_cutoff(b: &TruncatedSeries, k: usize, total_degree_cutoff: usize) -> Result<(), AsymError> {
    let needed = total_degree_cutoff + 2 * (k - 1);
    if b.cutoff() < needed {
        return Err(AsymError::CutoffTooSmall { needed, cutoff: b.cutoff() });
    }
    Ok(())
}

/// `F_k(tu, tv)` as a polynomial in the scale `t`, from the Schur expansion
/// `Δ(v)Δ(-u) Σ C_{λμ} s_λ(v) s_μ(-u)` with `|λ| + |μ| ≤ total_degree_cutoff`.
/// Terms up to degree `total_degree_cutoff + k(k-1)` are exact.
pub fn fk_expand(b: &TruncatedSeries, sv: &ShiftVectors, total_degree_cutoff: usize) -> Result<RatPoly, AsymError> {
    let k = sv.k();
    check_cutoff(b, k, total_degree_cutoff)?;
    let neg_u: Vec<BigRational> = sv.u.iter().map(|x| -x).collect();
    let parts = partitions_up_to(total_degree_cutoff, k);
    let s_v: Vec<BigRational> = parts.iter().map(|p| schur_eval(p, &sv.v)).collect();
    let s_u: Vec<BigRational> = parts.iter().map(|p| schur_eval(p, &neg_u)).collect();
    let base = k * (k - 1);
    let mut coeffs = vec![BigRational::zero(); base + total_degree_cutoff + 1];
    for (a, lam) in parts.iter().enumerate() {
        for (c, mu) in parts.iter().enumerate() {
            let size = lam.size() + mu.size();
            if size > total_degree_cutoff || s_v[a].is_zero() || s_u[c].is_zero() {
                continue;
            }
            coeffs[base + size] += coeff_det(lam, mu, b)? * &s_v[a] * &s_u[c];
        }
    }
    Ok(RatPoly::new(coeffs).scale(&sv.vandermonde_product()))
}

/// `det[f(t(v_i - u_j))]` truncated at degree `total_degree_cutoff + k(k-1)`.
pub fn fk_direct(b: &TruncatedSeries, sv: &ShiftVectors, total_degree_cutoff: usize) -> Result<RatPoly, AsymError> {
    let k = sv.k();
    check_cutoff(b, k, total_degree_cutoff)?;
    let m: Vec<Vec<RatPoly>> = sv
        .v
        .iter()
        .map(|vi| {
            sv.u.iter()
                .map(|uj| {
                    let d = vi - uj;
                    RatPoly::new(b.coeffs().iter().enumerate().map(|(l, bl)| bl * Pow::pow(&d, l)).collect())
                })
                .collect()
        })
        .collect();
    Ok(bareiss_det(&m).truncate(total_degree_cutoff + k * (k - 1)))
}
