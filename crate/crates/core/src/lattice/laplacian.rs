//! Reduced graph Laplacian of a box with Dirichlet frame and optional extra roots.

use super::domain::{RectDomain, Site};
use super::LatticeError;

/// Rows are ordered column-major when the box is wider than tall and row-major
/// otherwise, which keeps the half-bandwidth at the smaller side.
#[derive(Clone, Debug)]
pub struct SparseLaplacian {
    domain: RectDomain,
    sites: Vec<Site>,
    index: Vec<usize>,
    diag: Vec<f64>,
    neighbors: Vec<Vec<usize>>,
}

const NONE: usize = usize::MAX;

impl SparseLaplacian {
    pub fn domain(&self) -> &RectDomain {
        &self.domain
    }

    pub fn dimension(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn diagonal(&self, row: usize) -> f64 {
        self.diag[row]
    }

    /// Columns of the `-1` entries in `row`.
    pub fn neighbors(&self, row: usize) -> &[usize] {
        &self.neighbors[row]
    }

    pub fn index_of(&self, s: Site) -> Option<usize> {
        if !self.domain.is_interior(s) {
            return None;
        }
        let i = self.index[self.raw(s)];
        (i != NONE).then_some(i)
    }

    fn raw(&self, s: Site) -> usize {
        s.y as usize - 1 + (s.x as usize) * self.domain.interior_rows()
    }

    pub fn bandwidth(&self) -> usize {
        (0..self.dimension())
            .flat_map(|i| self.neighbors[i].iter().map(move |&j| i.abs_diff(j)))
            .max()
            .unwrap_or(0)
    }

    /// `Δ·v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dimension())
            .map(|i| self.diag[i] * v[i] - self.neighbors[i].iter().map(|&j| v[j]).sum::<f64>())
            .collect()
    }
}

pub fn assemble_laplacian(domain: &RectDomain, extra_roots: &[Site]) -> Result<SparseLaplacian, LatticeError> {
    let rows = domain.interior_rows();
    let mut rooted = vec![false; domain.interior_count()];
    let raw = |s: Site| s.y as usize - 1 + (s.x as usize) * rows;
    for &s in extra_roots {
        if !domain.is_interior(s) {
            return Err(LatticeError::Geometry(format!("root ({}, {}) is not an interior site", s.x, s.y)));
        }
        rooted[raw(s)] = true;
    }
    let order: Vec<Site> = if domain.width >= rows {
        (0..domain.width as i64)
            .flat_map(|x| (1..=rows as i64).map(move |y| Site::new(x, y)))
            .collect()
    } else {
        domain.interior_sites().collect()
    };
    let mut index = vec![NONE; domain.interior_count()];
    let mut sites = Vec::with_capacity(order.len());
    for s in order {
        if !rooted[raw(s)] {
            index[raw(s)] = sites.len();
            sites.push(s);
        }
    }
    let mut diag = Vec::with_capacity(sites.len());
    let mut neighbors = Vec::with_capacity(sites.len());
    for &s in &sites {
        diag.push(domain.degree(s) as f64);
        neighbors.push(
            domain
                .neighbors(s)
                .filter(|&t| domain.is_interior(t))
                .map(|t| index[raw(t)])
                .filter(|&j| j != NONE)
                .collect(),
        );
    }
    Ok(SparseLaplacian {
        domain: *domain,
        sites,
        index,
        diag,
        neighbors,
    })
}
