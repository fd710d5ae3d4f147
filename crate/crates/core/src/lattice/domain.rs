//! Rectangular boxes of the half-plane lattice.

use serde::{Deserialize, Serialize};

use super::LatticeError;
use crate::green::LatticePoint;
use crate::melon::BoundaryCondition;

pub type Site = LatticePoint;

/// `width` interior columns `x = 0..width`, framed by Dirichlet columns `x = -1`
/// and `x = width`.
///
/// Open: rows `y = 0..height`, row `0` Dirichlet, interior rows `1..height`,
/// Dirichlet top row `y = height`. Closed: interior rows `1..=height` with no
/// edges below row 1, Dirichlet top row `y = height + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RectDomain {
    pub width: usize,
    pub height: usize,
    pub bc: BoundaryCondition,
}

impl RectDomain {
    pub fn new(width: usize, height: usize, bc: BoundaryCondition) -> Result<Self, LatticeError> {
        let d = RectDomain { width, height, bc };
        if width == 0 || d.interior_rows() == 0 {
            return Err(LatticeError::Geometry(format!(
                "{width}x{height} {bc} box has no interior sites"
            )));
        }
        Ok(d)
    }

    /// Box of the given width with height `(width + 1) / 2`.
    pub fn half_box(width: usize, bc: BoundaryCondition) -> Result<Self, LatticeError> {
        Self::new(width, width.div_ceil(2), bc)
    }

    pub fn interior_rows(&self) -> usize {
        match self.bc {
            BoundaryCondition::Open => self.height.saturating_sub(1),
            BoundaryCondition::Closed => self.height,
        }
    }

    pub fn top_row(&self) -> i64 {
        self.interior_rows() as i64
    }

    pub fn interior_count(&self) -> usize {
        self.width * self.interior_rows()
    }

    pub fn is_interior(&self, s: Site) -> bool {
        s.x >= 0 && (s.x as usize) < self.width && s.y >= 1 && s.y <= self.top_row()
    }

    /// Lattice neighbors, interior or boundary. Closed row 1 has no neighbor below.
    pub fn neighbors(&self, s: Site) -> impl Iterator<Item = Site> + '_ {
        let below_missing = self.bc == BoundaryCondition::Closed && s.y == 1;
        [(1, 0), (-1, 0), (0, 1), (0, -1)]
            .into_iter()
            .filter(move |&(_, dy)| !(below_missing && dy == -1))
            .map(move |(dx, dy)| Site::new(s.x + dx, s.y + dy))
    }

    pub fn degree(&self, s: Site) -> usize {
        self.neighbors(s).count()
    }

    /// Interior sites in row-major order (`y` outer, `x` inner).
    pub fn interior_sites(&self) -> impl Iterator<Item = Site> + '_ {
        (1..=self.top_row()).flat_map(move |y| (0..self.width as i64).map(move |x| Site::new(x, y)))
    }

    /// Roots `I = {(x0+i, 1)}` and endpoints `J = {(x0+i+r, 1)}`, `i = 1..k`, centered
    /// horizontally with at least one interior column on either side.
    pub fn strings(&self, k: usize, r: usize) -> Result<(Vec<Site>, Vec<Site>), LatticeError> {
        if k == 0 {
            return Err(LatticeError::Geometry("k must be positive".into()));
        }
        if r > 0 && r < k {
            return Err(LatticeError::Geometry(format!("r = {r} makes the strings overlap for k = {k}")));
        }
        let span = (k + r) as i64;
        let x0 = (self.width as i64 - span) / 2 - 1;
        let first = x0 + 1;
        let last = x0 + span;
        if first < 1 || last > self.width as i64 - 2 {
            return Err(LatticeError::Geometry(format!(
                "strings with k = {k}, r = {r} do not fit in width {}",
                self.width
            )));
        }
        let i = (1..=k as i64).map(|l| Site::new(x0 + l, 1)).collect();
        let j = (1..=k as i64).map(|l| Site::new(x0 + l + r as i64, 1)).collect();
        Ok((i, j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_and_closed_rows() {
        let open = RectDomain::new(3, 3, BoundaryCondition::Open).unwrap();
        assert_eq!(open.interior_count(), 6);
        assert!(!open.is_interior(Site::new(0, 0)));
        assert!(open.interior_sites().all(|s| open.degree(s) == 4));
        let closed = RectDomain::new(3, 3, BoundaryCondition::Closed).unwrap();
        assert_eq!(closed.interior_count(), 9);
        for s in closed.interior_sites() {
            assert_eq!(closed.degree(s), if s.y == 1 { 3 } else { 4 });
        }
        assert!(RectDomain::new(3, 1, BoundaryCondition::Open).is_err());
    }

    #[test]
    fn strings_are_centered() {
        let d = RectDomain::half_box(65, BoundaryCondition::Open).unwrap();
        assert_eq!(d.height, 33);
        let (i, j) = d.strings(2, 8).unwrap();
        let left = i[0].x;
        let right = d.width as i64 - 1 - j[1].x;
        assert!((left - right).abs() <= 1);
        assert_eq!(j[0].x - i[0].x, 8);
        assert!(d.strings(2, 1).is_err());
        assert!(d.strings(2, 70).is_err());
        let (i0, j0) = d.strings(3, 0).unwrap();
        assert_eq!(i0, j0);
    }
}
