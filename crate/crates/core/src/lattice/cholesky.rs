//! Banded Cholesky factorization `A = L·Lᵀ`.

use super::laplacian::SparseLaplacian;
use super::LatticeError;

/// Row `i` of `L` stores columns `i-b ..= i` contiguously.
#[derive(Clone, Debug)]
pub struct BandCholesky {
    n: usize,
    b: usize,
    l: Vec<f64>,
}

impl BandCholesky {
    pub fn factor(lap: &SparseLaplacian) -> Result<Self, LatticeError> {
        let n = lap.dimension();
        let b = lap.bandwidth();
        let w = b + 1;
        let mut l = vec![0.0; n * w];
        for i in 0..n {
            l[i * w + b] = lap.diagonal(i);
            for &j in lap.neighbors(i) {
                if j < i {
                    l[i * w + b - (i - j)] -= 1.0;
                }
            }
        }
        for i in 0..n {
            let lo = i.saturating_sub(b);
            for j in lo..=i {
                // both rows start storing at column max(i-b, j-b) = lo
                let start = lo.max(j.saturating_sub(b));
                let ri = i * w + b - i;
                let rj = j * w + b - j;
                let dot: f64 = l[ri + start..ri + j]
                    .iter()
                    .zip(&l[rj + start..rj + j])
                    .map(|(a, b)| a * b)
                    .sum();
                let v = l[ri + j] - dot;
                if i == j {
                    if v <= 0.0 {
                        return Err(LatticeError::NotPositiveDefinite { row: i, pivot: v });
                    }
                    l[ri + j] = v.sqrt();
                } else {
                    l[ri + j] = v / l[rj + j];
                }
            }
        }
        Ok(BandCholesky { n, b, l })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        assert_eq!(rhs.len(), self.n);
        let (b, w) = (self.b, self.b + 1);
        let mut y = rhs.to_vec();
        for i in 0..self.n {
            let ri = i * w + b - i;
            let lo = i.saturating_sub(b);
            let dot: f64 = self.l[ri + lo..ri + i].iter().zip(&y[lo..i]).map(|(a, b)| a * b).sum();
            y[i] = (y[i] - dot) / self.l[ri + i];
        }
        for i in (0..self.n).rev() {
            let ri = i * w + b - i;
            y[i] /= self.l[ri + i];
            let xi = y[i];
            let lo = i.saturating_sub(b);
            for (yc, lc) in y[lo..i].iter_mut().zip(&self.l[ri + lo..ri + i]) {
                *yc -= lc * xi;
            }
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{assemble_laplacian, RectDomain, Site};
    use crate::melon::BoundaryCondition;

    #[test]
    fn solves_to_machine_precision() {
        for bc in [BoundaryCondition::Open, BoundaryCondition::Closed] {
            for (w, h) in [(9, 5), (4, 11), (1, 3)] {
                let d = RectDomain::new(w, h, bc).unwrap();
                let lap = assemble_laplacian(&d, &[Site::new(0, 1)]).unwrap();
                let f = BandCholesky::factor(&lap).unwrap();
                let rhs: Vec<f64> = (0..lap.dimension()).map(|i| (i as f64).sin()).collect();
                let x = f.solve(&rhs);
                let ax = lap.apply(&x);
                let err = ax.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                assert!(err < 1e-12, "{bc} {w}x{h}: residual {err}");
            }
        }
    }
}
