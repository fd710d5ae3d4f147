//! Finite-box Green functions and watermelon probabilities.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cholesky::BandCholesky;
use super::domain::{RectDomain, Site};
use super::laplacian::{assemble_laplacian, SparseLaplacian};
use super::LatticeError;
use crate::fit::decay_rate;
use crate::melon::BoundaryCondition;

const RESIDUAL_TOL: f64 = 1e-12;
const PROB_SLACK: f64 = 1e-10;

/// A factored Laplacian; solves against it may run concurrently.
#[derive(Clone, Debug)]
pub struct GreenSolver {
    lap: SparseLaplacian,
    chol: BandCholesky,
}

impl GreenSolver {
    pub fn new(domain: &RectDomain, extra_roots: &[Site]) -> Result<Self, LatticeError> {
        Self::from_laplacian(assemble_laplacian(domain, extra_roots)?)
    }

    pub fn from_laplacian(lap: SparseLaplacian) -> Result<Self, LatticeError> {
        let chol = BandCholesky::factor(&lap)?;
        Ok(GreenSolver { lap, chol })
    }

    pub fn laplacian(&self) -> &SparseLaplacian {
        &self.lap
    }

    /// Green column `G(·, source)` over the non-root interior sites, with up to
    /// three steps of iterative refinement.
    pub fn column(&self, source: Site) -> Result<GreenColumn<'_>, LatticeError> {
        let src = self.lap.index_of(source).ok_or_else(|| {
            LatticeError::Geometry(format!("source ({}, {}) is not a free interior site", source.x, source.y))
        })?;
        let n = self.lap.dimension();
        let mut e = vec![0.0; n];
        e[src] = 1.0;
        let mut g = self.chol.solve(&e);
        let mut residual = f64::INFINITY;
        for step in 0..=3 {
            let mut r = self.lap.apply(&g);
            r[src] -= 1.0;
            residual = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if residual <= RESIDUAL_TOL || step == 3 {
                break;
            }
            let d = self.chol.solve(&r);
            g.iter_mut().zip(d).for_each(|(g, d)| *g -= d);
        }
        if residual > RESIDUAL_TOL {
            return Err(LatticeError::NotConverged { residual });
        }
        Ok(GreenColumn {
            lap: &self.lap,
            values: g,
            residual,
        })
    }
}

#[derive(Clone, Debug)]
pub struct GreenColumn<'a> {
    lap: &'a SparseLaplacian,
    pub values: Vec<f64>,
    pub residual: f64,
}

impl GreenColumn<'_> {
    /// Value at a site; zero on roots and boundary sites.
    pub fn at(&self, s: Site) -> f64 {
        self.lap.index_of(s).map_or(0.0, |i| self.values[i])
    }
}

/// Solve `Δ·g = e_source`, ordered like `lap.sites()`.
pub fn green_solve(lap: &SparseLaplacian, source: Site) -> Result<Vec<f64>, LatticeError> {
    let solver = GreenSolver::from_laplacian(lap.clone())?;
    Ok(solver.column(source)?.values)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_f64(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                a[i][j] -= f * a[c][j];
            }
        }
    }
    det
}

/// `det G[J,I] / det G[I,I]` with the nested pairing `j_l ↔ i_{k+1-l}`; row `a` of
/// the numerator is the partner of `i_a`. `r = 0` is the trivial pairing `J = I`.
pub fn watermelon_prob_finite(domain: &RectDomain, k: usize, r: usize) -> Result<f64, LatticeError> {
    let (i_sites, j_sites) = domain.strings(k, r)?;
    if r == 0 {
        return Ok(1.0);
    }
    let solver = GreenSolver::new(domain, &[])?;
    let cols = i_sites
        .par_iter()
        .map(|&s| solver.column(s))
        .collect::<Result<Vec<_>, _>>()?;
    let partner = |a: usize| j_sites[k - 1 - a];
    let num = (0..k).map(|a| (0..k).map(|b| cols[b].at(partner(a))).collect()).collect();
    let den = (0..k).map(|a| (0..k).map(|b| cols[b].at(i_sites[a])).collect()).collect();
    let p = det_f64(num) / det_f64(den);
    if !(-PROB_SLACK..=1.0 + PROB_SLACK).contains(&p) {
        return Err(LatticeError::OutOfRange(p));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub size: usize,
    pub prob: f64,
    pub delta_prev: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub bc: BoundaryCondition,
    pub k: usize,
    pub r: usize,
    pub rows: Vec<SweepRow>,
    /// `|delta_prev|` of the last row.
    pub tolerance: Option<f64>,
    /// Richardson limit from the last two rows assuming an `L^-2` finite-size
    /// error, which holds for the open boundary; `None` for closed.
    pub extrapolated: Option<f64>,
    /// Non-monotone steps beyond solver tolerance.
    pub warnings: Vec<String>,
}

/// Probabilities on `half_box(size)` boxes, computed in parallel and sorted by size.
pub fn convergence_sweep(
    bc: BoundaryCondition,
    k: usize,
    r: usize,
    sizes: &[usize],
) -> Result<SweepTable, LatticeError> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let probs = sizes
        .par_iter()
        .map(|&s| watermelon_prob_finite(&RectDomain::half_box(s, bc)?, k, r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(sizes.len());
    let mut warnings = Vec::new();
    for (i, (&size, &prob)) in sizes.iter().zip(&probs).enumerate() {
        let delta_prev = (i > 0).then(|| prob - probs[i - 1]);
        if i > 1 {
            let (d0, d1) = (probs[i - 1] - probs[i - 2], prob - probs[i - 1]);
            if d0 * d1 < 0.0 && d1.abs() > PROB_SLACK {
                warnings.push(format!("non-monotone step from size {} to {size}", sizes[i - 1]));
            }
        }
        rows.push(SweepRow { size, prob, delta_prev });
    }
    let tolerance = rows.last().and_then(|r| r.delta_prev).map(f64::abs);
    let extrapolated = match (bc, rows.len()) {
        (BoundaryCondition::Open, n) if n >= 2 => {
            let (a, b) = (&rows[n - 2], &rows[n - 1]);
            let q = (b.size as f64 / a.size as f64).powi(2);
            Some(b.prob + (b.prob - a.prob) / (q - 1.0))
        }
        _ => None,
    };
    Ok(SweepTable {
        bc,
        k,
        r,
        rows,
        tolerance,
        extrapolated,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftRow {
    pub size: usize,
    pub difference: f64,
    /// `|x - y|₁ / |∂̂|`, with `|∂̂|` the number of boundary sites adjacent to the box.
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftTable {
    pub rows: Vec<DriftRow>,
    /// Fitted `p` in `difference ≈ C·L^{-p}`, when every difference is positive.
    pub decay_rate: Option<f64>,
}

/// `|G(x,x) - G(y,y)|` on open boxes with an `L × L` interior. The sites are offsets
/// from the anchor `(⌊fx·(L-1)⌉, 1 + ⌊fy·(L-1)⌉)`.
pub fn diag_green_drift(
    sizes: &[usize],
    x: (i64, i64),
    y: (i64, i64),
    anchor: (f64, f64),
) -> Result<DriftTable, LatticeError> {
    let rows = sizes
        .par_iter()
        .map(|&l| {
            let d = RectDomain::new(l, l + 1, BoundaryCondition::Open)?;
            let a = (
                (anchor.0 * (l as f64 - 1.0)).round() as i64,
                1 + (anchor.1 * (l as f64 - 1.0)).round() as i64,
            );
            let sx = Site::new(a.0 + x.0, a.1 + x.1);
            let sy = Site::new(a.0 + y.0, a.1 + y.1);
            for s in [sx, sy] {
                if !d.is_interior(s) {
                    return Err(LatticeError::Geometry(format!("site ({}, {}) outside the {l}-box", s.x, s.y)));
                }
            }
            let difference = if sx == sy {
                0.0
            } else {
                let solver = GreenSolver::new(&d, &[])?;
                (solver.column(sx)?.at(sx) - solver.column(sy)?.at(sy)).abs()
            };
            let dist = ((sx.x - sy.x).abs() + (sx.y - sy.y).abs()) as f64;
            Ok(DriftRow {
                size: l,
                difference,
                bound: dist / (4 * l) as f64,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.size as f64, r.difference)).collect();
    let decay_rate = decay_rate(&pts).ok().map(|f| f.exponent);
    Ok(DriftTable { rows, decay_rate })
}
