//! Exact arithmetic in ℚ[π⁻¹] and its extension by one formal divergent constant.

pub mod interval;
pub mod pipoly;
pub mod poly;
pub mod ring;
pub mod symgreen;

pub use interval::{pi_interval, rational_to_f64, RealInterval};
pub use pipoly::{pipoly_combine, pipoly_det, pipoly_eval, PiPoly, RingOp};
pub use poly::RatPoly;
pub use ring::{bareiss_det, laplace_det, permutation_sign, ExactRing};
pub use symgreen::{symgreen_det, SymbolicGreen};

pub type Rational = num_rational::BigRational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("entries do not share a common constant coefficient of the divergent term")]
    NonConstantDivergentPart,
    #[error("precision must be at least 32 bits, got {0}")]
    Precision(u32),
    #[error("cannot parse {0:?} as an exact value")]
    Parse(String),
}

pub(crate) fn check_square<T>(m: &[Vec<T>]) -> Result<(), ExactError> {
    if m.iter().all(|row| row.len() == m.len()) {
        Ok(())
    } else {
        Err(ExactError::NotSquare)
    }
}
