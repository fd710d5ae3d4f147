//! Asymptotics of determinants built from shifted series.

pub mod leading;
pub mod lemma;
pub mod partition;
pub mod schur;

pub use leading::{log_det, log_leading, powerlaw_leading, powerlaw_ratio, powerlaw_residual, LogMode};
pub use lemma::{coeff_det, fk_direct, fk_expand, AsymError, ShiftVectors, TruncatedSeries};
pub use partition::{partitions_of, partitions_up_to, Partition};
pub use schur::{schur_eval, schur_tableaux, vandermonde};
