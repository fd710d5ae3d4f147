//! Exact half-plane watermelon probabilities and their amplitude constants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exactnum::{
    bareiss_det, pi_interval, pipoly_det, symgreen_det, ExactError, PiPoly, RealInterval,
    SymbolicGreen,
};
use crate::green::{shared_table, PotentialKernelTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Open,
    Closed,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryCondition::Open => "open",
            BoundaryCondition::Closed => "closed",
        })
    }
}

impl FromStr for BoundaryCondition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "open" => Ok(BoundaryCondition::Open),
            "closed" => Ok(BoundaryCondition::Closed),
            other => Err(format!("unknown boundary condition {other:?}, expected open or closed")),
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum MelonError {
    #[error("invalid watermelon: {0}")]
    InvalidSpec(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `k` legs from `J = {(i+r, 1)}` to roots `I = {(i, 1)}`, `i = 1..k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WatermelonSpec {
    pub k: usize,
    pub r: i64,
    pub bc: BoundaryCondition,
}

impl WatermelonSpec {
    pub fn new(bc: BoundaryCondition, k: usize, r: i64) -> Result<Self, MelonError> {
        if k == 0 {
            return Err(MelonError::InvalidSpec("k must be positive".into()));
        }
        if r <= k as i64 {
            return Err(MelonError::InvalidSpec(format!(
                "r = {r} must exceed k = {k} so the strings are disjoint"
            )));
        }
        Ok(WatermelonSpec { k, r, bc })
    }

    fn table(&self) -> std::sync::Arc<PotentialKernelTable> {
        shared_table(self.r as usize + self.k + 2)
    }
}

/// `numerator / denominator · π^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRatio {
    pub numerator: PiPoly,
    pub denominator: PiPoly,
    pub pi_power: i32,
}

impl ExactRatio {
    /// Enclosure with relative width about `2^-rel_bits`.
    pub fn eval_relative(&self, rel_bits: u32) -> RealInterval {
        if self.numerator.is_zero() {
            return RealInterval::point(BigRational::from_integer(0.into()));
        }
        let den = self.denominator.eval_relative(rel_bits + 4);
        let mut iv = self.numerator.eval_relative(rel_bits + 4).mul(&den.recip());
        if self.pi_power != 0 {
            let pi = pi_interval(rel_bits as u64 + 16);
            let factor = if self.pi_power > 0 { pi } else { pi.recip() };
            for _ in 0..self.pi_power.unsigned_abs() {
                iv = iv.mul(&factor);
            }
        }
        iv
    }

    pub fn to_f64(&self) -> f64 {
        self.eval_relative(60).mid_f64()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GreenMatrix {
    Open(Vec<Vec<PiPoly>>),
    Closed(Vec<Vec<SymbolicGreen>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    Numerator,
    Denominator,
}

/// Horizontal offset of entry `(i, j)` (zero-based). The numerator pairs `j_l`
/// with `i_{k+1-l}`: `u_i = i`, `v_i = k + 1 - i`.
fn offset(spec: &WatermelonSpec, which: MatrixKind, i: usize, j: usize) -> i64 {
    let (i, j) = (i as i64 + 1, j as i64 + 1);
    match which {
        MatrixKind::Denominator => i - j,
        MatrixKind::Numerator => spec.r + (spec.k as i64 + 1 - i) - j,
    }
}

pub fn green_matrix(spec: &WatermelonSpec, which: MatrixKind) -> GreenMatrix {
    let t = spec.table();
    let k = spec.k;
    match spec.bc {
        BoundaryCondition::Open => GreenMatrix::Open(
            (0..k)
                .map(|i| (0..k).map(|j| t.green_open(offset(spec, which, i, j), 1, 1)).collect())
                .collect(),
        ),
        BoundaryCondition::Closed => GreenMatrix::Closed(
            (0..k)
                .map(|i| (0..k).map(|j| t.green_closed(offset(spec, which, i, j), 1, 1)).collect())
                .collect(),
        ),
    }
}

fn denominator_spec(bc: BoundaryCondition, k: usize) -> WatermelonSpec {
    WatermelonSpec { k, r: k as i64 + 1, bc }
}

/// Determinant of the open denominator matrix `[G^op(i-j;1,1)]`.
pub fn table_open(k: usize) -> PiPoly {
    assert!(k >= 1);
    match green_matrix(&denominator_spec(BoundaryCondition::Open, k), MatrixKind::Denominator) {
        GreenMatrix::Open(m) => bareiss_det(&m),
        GreenMatrix::Closed(_) => unreachable!(),
    }
}

/// `det B_{k-1}` with `B_ij = g(|i-j|) - g(i) - g(j) + g(0)` over the closed
/// finite parts; `det B_0 = 1`.
pub fn table_closed(k: usize) -> PiPoly {
    assert!(k >= 1);
    let t = shared_table(k + 2);
    let g = |n: i64| t.closed_finite(n, 1, 1);
    let s = k - 1;
    let b: Vec<Vec<PiPoly>> = (1..=s as i64)
        .map(|i| {
            (1..=s as i64)
                .map(|j| &(&(&g((i - j).abs()) - &g(i)) - &g(j)) + &g(0))
                .collect()
        })
        .collect();
    bareiss_det(&b)
}

/// Coefficient of the divergent constant in the closed denominator determinant.
pub fn table_closed_via_symbolic(k: usize) -> PiPoly {
    match green_matrix(&denominator_spec(BoundaryCondition::Closed, k), MatrixKind::Denominator) {
        GreenMatrix::Closed(m) => symgreen_det(&m).expect("constant divergent parts").g_coeff,
        GreenMatrix::Open(_) => unreachable!(),
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WatermelonConstant {
    pub bc: BoundaryCondition,
    pub k: usize,
    pub table_det: PiPoly,
    pub exact: ExactRatio,
    pub value: f64,
}

/// Amplitude of the large-`r` power law.
pub fn watermelon_constant(bc: BoundaryCondition, k: usize) -> WatermelonConstant {
    assert!(k >= 1);
    let (product, table_det, pi_power) = match bc {
        BoundaryCondition::Open => (
            (0..k).fold(BigInt::one(), |acc, i| acc * factorial(i) * factorial(i + 1)),
            table_open(k),
            -(k as i32),
        ),
        BoundaryCondition::Closed => (
            (1..k).fold(BigInt::one(), |acc, i| acc * factorial(i) * factorial(i - 1)),
            table_closed(k),
            -(k as i32 - 1),
        ),
    };
    let exact = ExactRatio {
        numerator: PiPoly::constant(BigRational::from_integer(product)),
        denominator: table_det.clone(),
        pi_power,
    };
    let value = exact.to_f64();
    WatermelonConstant { bc, k, table_det, exact, value }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfplaneProbability {
    pub spec: WatermelonSpec,
    pub exact: ExactRatio,
    pub value: f64,
}

impl HalfplaneProbability {
    /// Exponent of the large-`r` decay for this boundary condition.
    pub fn exponent(&self) -> i32 {
        let k = self.spec.k as i32;
        match self.spec.bc {
            BoundaryCondition::Open => k * (k + 1),
            BoundaryCondition::Closed => k * (k - 1),
        }
    }

    pub fn scaled(&self) -> f64 {
        self.value * (self.spec.r as f64).powi(self.exponent())
    }
}

/// Exact probability on the half-plane; for the closed boundary the ratio of
/// coefficients of the divergent constant.
pub fn watermelon_prob_halfplane(spec: &WatermelonSpec) -> Result<HalfplaneProbability, MelonError> {
    let spec = WatermelonSpec::new(spec.bc, spec.k, spec.r)?;
    let num = green_matrix(&spec, MatrixKind::Numerator);
    let den = green_matrix(&spec, MatrixKind::Denominator);
    let (numerator, denominator) = match (num, den) {
        (GreenMatrix::Open(n), GreenMatrix::Open(d)) => (pipoly_det(&n)?, pipoly_det(&d)?),
        (GreenMatrix::Closed(n), GreenMatrix::Closed(d)) => {
            (symgreen_det(&n)?.g_coeff, symgreen_det(&d)?.g_coeff)
        }
        _ => unreachable!(),
    };
    if denominator.is_zero() {
        return Err(MelonError::Inconsistent("denominator determinant vanishes".into()));
    }
    let exact = ExactRatio { numerator, denominator, pi_power: 0 };
    let iv = exact.eval_relative(64);
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::one();
    if iv.hi < zero || iv.lo > one {
        return Err(MelonError::Inconsistent(format!(
            "probability {} outside [0, 1] for {spec:?}",
            iv.mid_f64()
        )));
    }
    let value = iv.mid_f64();
    Ok(HalfplaneProbability { spec, exact, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pp(s: &str) -> PiPoly {
        s.parse().unwrap()
    }

    fn spec(bc: BoundaryCondition, k: usize, r: i64) -> WatermelonSpec {
        WatermelonSpec::new(bc, k, r).unwrap()
    }

    #[test]
    fn matrix_examples() {
        let open1 = green_matrix(&spec(BoundaryCondition::Open, 1, 2), MatrixKind::Denominator);
        assert_eq!(open1, GreenMatrix::Open(vec![vec![pp("1 - 2/pi")]]));
        let open2 = green_matrix(&spec(BoundaryCondition::Open, 2, 3), MatrixKind::Denominator);
        let (g0, g1) = (pp("1 - 2/pi"), pp("-1/2 + 2/pi"));
        assert_eq!(open2, GreenMatrix::Open(vec![vec![g0.clone(), g1.clone()], vec![g1, g0]]));
        let closed = green_matrix(&spec(BoundaryCondition::Closed, 1, 3), MatrixKind::Numerator);
        assert_eq!(closed, GreenMatrix::Closed(vec![vec![SymbolicGreen::unit(pp("-9/4 + 13/3/pi"))]]));
    }

    #[test]
    fn numerator_is_symmetric() {
        for k in 1..=4 {
            if let GreenMatrix::Open(m) = green_matrix(&spec(BoundaryCondition::Open, k, 9), MatrixKind::Numerator) {
                for i in 0..k {
                    for j in 0..k {
                        assert_eq!(m[i][j], m[j][i]);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_overlapping_strings() {
        assert!(WatermelonSpec::new(BoundaryCondition::Open, 2, 2).is_err());
        assert!(WatermelonSpec::new(BoundaryCondition::Open, 0, 5).is_err());
        let bad = WatermelonSpec { k: 3, r: 1, bc: BoundaryCondition::Closed };
        assert!(watermelon_prob_halfplane(&bad).is_err());
    }

    #[test]
    fn open_tables() {
        let rows = [
            "1 - 2/pi",
            "3/4 - 2/pi",
            "-1 + 40/3/pi - 448/9/pi^2 + 512/9/pi^3",
            "-435/16 + 1843/6/pi - 11584/9/pi^2 + 64000/27/pi^3 - 131072/81/pi^4",
            "-8075/16 + 155293/24/pi - 7333616/225/pi^2 + 401408/5/pi^3 - 194510848/2025/pi^4 + 268435456/6075/pi^5",
        ];
        for (k, row) in rows.iter().enumerate() {
            assert_eq!(table_open(k + 1).to_string(), *row);
        }
    }

    #[test]
    fn closed_tables_by_both_routes() {
        assert_eq!(table_closed(1), PiPoly::one());
        assert_eq!(table_closed(2), pp("2/pi"));
        assert_eq!(table_closed(4), pp("1/2 - 26/3/pi + 128/3/pi^2 - 512/9/pi^3"));
        for k in 1..=5 {
            assert_eq!(table_closed(k), table_closed_via_symbolic(k), "k={k}");
        }
    }

    #[test]
    fn constants() {
        let c1 = watermelon_constant(BoundaryCondition::Open, 1).value;
        assert!((c1 - 1.0 / (PI - 2.0)).abs() < 1e-14);
        assert_eq!(watermelon_constant(BoundaryCondition::Closed, 1).value, 1.0);
        assert!((watermelon_constant(BoundaryCondition::Closed, 2).value - 0.5).abs() < 1e-15);
        let c3 = watermelon_constant(BoundaryCondition::Closed, 3).value;
        assert!((c3 - 2.0 / (PI * PI * (2.0 / PI - 0.25))).abs() < 1e-13);
    }

    #[test]
    fn probabilities() {
        let p = watermelon_prob_halfplane(&spec(BoundaryCondition::Open, 1, 2)).unwrap();
        let want = (10.0 / (3.0 * PI) - 1.0) / (1.0 - 2.0 / PI);
        assert!((p.value - want).abs() < 1e-14);
        assert!((p.value - 0.1679).abs() < 1e-4);
        for r in [2, 5, 17] {
            let p = watermelon_prob_halfplane(&spec(BoundaryCondition::Closed, 1, r)).unwrap();
            assert_eq!(p.value, 1.0);
            assert_eq!(p.exact.numerator, p.exact.denominator);
        }
        let p = watermelon_prob_halfplane(&spec(BoundaryCondition::Open, 2, 4)).unwrap();
        assert!(p.value > 0.0 && p.value < 1.0);
    }
}
