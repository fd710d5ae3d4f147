//! Values `a·𝔊 + p` linear in a formal divergent constant 𝔊.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::pipoly::PiPoly;
use super::ring::bareiss_det;
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicGreen {
    pub g_coeff: PiPoly,
    pub finite: PiPoly,
}

impl SymbolicGreen {
    pub fn new(g_coeff: PiPoly, finite: PiPoly) -> Self {
        SymbolicGreen { g_coeff, finite }
    }

    /// `𝔊 + finite`.
    pub fn unit(finite: PiPoly) -> Self {
        SymbolicGreen::new(PiPoly::one(), finite)
    }

    /// Replace 𝔊 by the rational `x`.
    pub fn substitute(&self, x: &BigRational) -> PiPoly {
        &self.g_coeff.scale(x) + &self.finite
    }
}

impl fmt::Display for SymbolicGreen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*G + ({})", self.g_coeff, self.finite)
    }
}

/// Determinant of `[c·𝔊 + F_ij]` for a common coefficient `c`.
///
/// Adding `c·𝔊` times the all-ones matrix is a rank-one update, so the result is
/// `det F + 𝔊·c·(det(F + 1) − det F)`; the bracket is the sum of all cofactors of `F`.
pub fn symgreen_det(m: &[Vec<SymbolicGreen>]) -> Result<SymbolicGreen, ExactError> {
    super::check_square(m)?;
    let finite: Vec<Vec<PiPoly>> = m
        .iter()
        .map(|row| row.iter().map(|e| e.finite.clone()).collect())
        .collect();
    let det_f = bareiss_det(&finite);
    let Some(c) = m.first().and_then(|row| row.first()).map(|e| e.g_coeff.clone()) else {
        return Ok(SymbolicGreen::new(PiPoly::zero(), PiPoly::one()));
    };
    if m.iter().flatten().any(|e| e.g_coeff != c) {
        return Err(ExactError::NonConstantDivergentPart);
    }
    if c.is_zero() {
        return Ok(SymbolicGreen::new(PiPoly::zero(), det_f));
    }
    let shifted: Vec<Vec<PiPoly>> = finite
        .iter()
        .map(|row| row.iter().map(|e| e + &PiPoly::one()).collect())
        .collect();
    let cofactor_sum = &bareiss_det(&shifted) - &det_f;
    Ok(SymbolicGreen::new(&c * &cofactor_sum, det_f))
}
