//! Least-squares power-law fits `value ≈ C·r^{-p}`.

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum FitError {
    #[error("a fit needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("value {value} at r = {r} is not positive")]
    NonPositive { r: f64, value: f64 },
    #[error("r = {0} is not positive")]
    NonPositiveAbscissa(f64),
    #[error("r values are not distinct")]
    DuplicateAbscissa,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub amplitude: f64,
    pub exponent: f64,
    pub stderr_exponent: f64,
    pub r_range: (f64, f64),
    pub n_points: usize,
    /// `ln value - fitted line`, in input order.
    pub residuals: Vec<f64>,
}

/// Simple linear regression `y = a + b·x`; returns `(a, b, se(b), residuals)`.
pub fn linear_regression(x: &[f64], y: &[f64]) -> (f64, f64, f64, Vec<f64>) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let res: Vec<f64> = x.iter().zip(y).map(|(x, y)| y - a - b * x).collect();
    let se = if x.len() > 2 {
        (res.iter().map(|e| e * e).sum::<f64>() / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (a, b, se, res)
}

fn fit_with_min(points: &[(f64, f64)], min: usize) -> Result<FitReport, FitError> {
    if points.len() < min {
        return Err(FitError::TooFewPoints {
            needed: min,
            got: points.len(),
        });
    }
    for &(r, v) in points {
        if !(r > 0.0) {
            return Err(FitError::NonPositiveAbscissa(r));
        }
        if !(v > 0.0) {
            return Err(FitError::NonPositive { r, value: v });
        }
    }
    let mut rs: Vec<f64> = points.iter().map(|p| p.0).collect();
    rs.sort_by(f64::total_cmp);
    if rs.windows(2).any(|w| w[0] == w[1]) {
        return Err(FitError::DuplicateAbscissa);
    }
    let x: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (a, b, se, residuals) = linear_regression(&x, &y);
    Ok(FitReport {
        amplitude: a.exp(),
        exponent: -b,
        stderr_exponent: se,
        r_range: (rs[0], rs[rs.len() - 1]),
        n_points: points.len(),
        residuals,
    })
}

/// Fit `ln value = ln C - p·ln r` over at least four points.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<FitReport, FitError> {
    fit_with_min(points, 4)
}

/// Same fit with as few as two points, for decay-rate summaries.
pub fn decay_rate(points: &[(f64, f64)]) -> Result<FitReport, FitError> {
    fit_with_min(points, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0].iter().map(|&r: &f64| (r, 7.0 * r.powi(-3))).collect();
        let f = fit_exponent(&pts).unwrap();
        assert!((f.amplitude - 7.0).abs() < 1e-12);
        assert!((f.exponent - 3.0).abs() < 1e-13);
        assert!(f.stderr_exponent < 1e-12);
        assert_eq!(f.r_range, (2.0, 16.0));
    }

    #[test]
    fn rejections() {
        let pts = [(1.0, 1.0), (2.0, 0.5), (3.0, 0.0), (4.0, 0.2)];
        assert!(matches!(fit_exponent(&pts), Err(FitError::NonPositive { .. })));
        assert!(matches!(fit_exponent(&pts[..3]), Err(FitError::TooFewPoints { needed: 4, got: 3 })));
        let dup = [(1.0, 1.0), (2.0, 0.5), (2.0, 0.4), (4.0, 0.2)];
        assert_eq!(fit_exponent(&dup), Err(FitError::DuplicateAbscissa));
    }

    #[test]
    fn noisy_fit_has_finite_stderr() {
        let pts: Vec<(f64, f64)> = (1..=8)
            .map(|i| {
                let r = i as f64 * 10.0;
                (r, 3.0 * r.powi(-2) * (1.0 + 0.01 * (i as f64).sin()))
            })
            .collect();
        let f = fit_exponent(&pts).unwrap();
        assert!((f.exponent - 2.0).abs() < 0.05);
        assert!(f.stderr_exponent.is_finite() && f.stderr_exponent > 0.0);
    }
}
