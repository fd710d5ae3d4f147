//! Exact potential kernel increment `g(m,n)` and the image-method Green functions.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactnum::{PiPoly, SymbolicGreen};

/// Exact values `g(m,n)` on the octant `0 ≤ n ≤ m ≤ max`, stored column by column.
///
/// Seeds: `g(0,0) = 0`, `g(1,0) = -1/4` and the diagonal
/// `g(n,n) = -(1/π)·Σ_{j=1..n} 1/(2j-1)`. Each further column follows from
/// harmonicity at the previous one.
#[derive(Clone, Debug)]
pub struct PotentialKernelTable {
    max: usize,
    values: Vec<PiPoly>,
}

fn idx(m: usize, n: usize) -> usize {
    m * (m + 1) / 2 + n
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl PotentialKernelTable {
    pub fn new(max: usize) -> Self {
        let mut t = PotentialKernelTable {
            max: 0,
            values: vec![PiPoly::zero()],
        };
        t.grow(max);
        t
    }

    pub fn max(&self) -> usize {
        self.max
    }

    /// Extend the table so that it covers `max(|m|,|n|) ≤ max`.
    pub fn grow(&mut self, max: usize) {
        if max == 0 || max <= self.max {
            return;
        }
        if self.max == 0 {
            self.values.push(PiPoly::constant(rat(-1, 4)));
            self.values.push(PiPoly::monomial(rat(-1, 1), 1));
            self.max = 1;
        }
        let four = rat(4, 1);
        let two = rat(2, 1);
        let mut diag_sum = (1..=self.max as i64).fold(rat(0, 1), |acc, j| acc + rat(1, 2 * j - 1));
        while self.max < max {
            let m = self.max;
            let col = |t: &Self, mm: usize, n: usize| t.values[idx(mm, n)].clone();
            let mut next = Vec::with_capacity(m + 2);
            for n in 0..m {
                let below = if n == 0 { col(self, m, 1) } else { col(self, m, n - 1) };
                let v = &(&(&col(self, m, n).scale(&four) - &col(self, m - 1, n)) - &col(self, m, n + 1))
                    - &below;
                next.push(v);
            }
            next.push(&col(self, m, m).scale(&two) - &col(self, m, m - 1));
            diag_sum += rat(1, 2 * (m as i64 + 1) - 1);
            next.push(PiPoly::monomial(-diag_sum.clone(), 1));
            self.values.extend(next);
            self.max = m + 1;
        }
    }

    /// `g(m,n)` using the full lattice symmetry, or `None` outside the table.
    pub fn get(&self, m: i64, n: i64) -> Option<&PiPoly> {
        let (a, b) = (m.unsigned_abs() as usize, n.unsigned_abs() as usize);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        (hi <= self.max).then(|| &self.values[idx(hi, lo)])
    }

    fn value(&self, m: i64, n: i64) -> &PiPoly {
        self.get(m, n)
            .unwrap_or_else(|| panic!("kernel table of size {} does not cover ({m},{n})", self.max))
    }

    /// Open half-plane Green function: `g(x, y1-y2) - g(x, y1+y2)`.
    pub fn green_open(&self, x: i64, y1: i64, y2: i64) -> PiPoly {
        assert!(y1 >= 0 && y2 >= 0, "open Green function needs y ≥ 0");
        self.value(x, y1 - y2) - self.value(x, y1 + y2)
    }

    /// Finite part `g(x, y1-y2) + g(x, y1+y2-1)` of the closed half-plane Green function.
    pub fn closed_finite(&self, x: i64, y1: i64, y2: i64) -> PiPoly {
        self.value(x, y1 - y2) + self.value(x, y1 + y2 - 1)
    }

    /// Closed half-plane Green function `𝔊 + g(x, y1-y2) + g(x, y1+y2-1)`.
    pub fn green_closed(&self, x: i64, y1: i64, y2: i64) -> SymbolicGreen {
        assert!(y1 >= 1 && y2 >= 1, "closed Green function needs y ≥ 1");
        SymbolicGreen::unit(self.closed_finite(x, y1, y2))
    }
}

static SHARED: Mutex<Option<Arc<PotentialKernelTable>>> = Mutex::new(None);

/// Process-wide table covering at least `max`, grown on demand.
pub fn shared_table(max: usize) -> Arc<PotentialKernelTable> {
    let mut guard = SHARED.lock().unwrap_or_else(|e| e.into_inner());
    match guard.as_ref() {
        Some(t) if t.max() >= max => t.clone(),
        current => {
            let mut t = current.map(|t| (**t).clone()).unwrap_or_else(|| PotentialKernelTable::new(0));
            t.grow(max.max(2 * t.max()));
            let t = Arc::new(t);
            *guard = Some(t.clone());
            t
        }
    }
}

pub fn potential_kernel_exact(m: i64, n: i64) -> PiPoly {
    let need = m.unsigned_abs().max(n.unsigned_abs()) as usize;
    shared_table(need).value(m, n).clone()
}

pub fn green_open(x: i64, y1: i64, y2: i64) -> PiPoly {
    let need = x.unsigned_abs().max((y1 + y2).unsigned_abs()) as usize;
    shared_table(need).green_open(x, y1, y2)
}

pub fn green_closed(x: i64, y1: i64, y2: i64) -> SymbolicGreen {
    let need = x.unsigned_abs().max((y1 + y2).unsigned_abs()) as usize;
    shared_table(need).green_closed(x, y1, y2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(s: &str) -> PiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn seeds_and_small_values() {
        assert_eq!(potential_kernel_exact(0, 0), PiPoly::zero());
        assert_eq!(potential_kernel_exact(1, 0), pp("-1/4"));
        assert_eq!(potential_kernel_exact(0, -1), pp("-1/4"));
        assert_eq!(potential_kernel_exact(1, 1), pp("-1/pi"));
        assert_eq!(potential_kernel_exact(2, 2), pp("-4/3/pi"));
        assert_eq!(potential_kernel_exact(2, 0), pp("-1 + 2/pi"));
    }

    #[test]
    fn harmonic_with_unit_defect() {
        let t = PotentialKernelTable::new(31);
        let g = |m, n| t.get(m, n).unwrap().clone();
        for m in -30i64..=30 {
            for n in -30i64..=30 {
                let lhs = g(m, n).scale(&rat(4, 1));
                let rhs = g(m + 1, n) + g(m - 1, n) + g(m, n + 1) + g(m, n - 1);
                let defect = if (m, n) == (0, 0) { PiPoly::one() } else { PiPoly::zero() };
                assert_eq!(lhs - rhs, defect, "at ({m},{n})");
            }
        }
        assert_eq!(g(0, 0).scale(&rat(4, 1)) - g(1, 0).scale(&rat(4, 1)), PiPoly::one());
    }

    #[test]
    fn symmetry_on_lookup() {
        let t = PotentialKernelTable::new(12);
        for m in -12i64..=12 {
            for n in -12i64..=12 {
                let v = t.get(m, n).unwrap();
                assert_eq!(v, t.get(n, m).unwrap());
                assert_eq!(v, t.get(-m, n).unwrap());
                assert_eq!(v, t.get(m, -n).unwrap());
            }
        }
        assert!(t.get(13, 0).is_none());
        assert!(t.get(0, -13).is_none());
    }

    #[test]
    fn growth_is_consistent() {
        let mut a = PotentialKernelTable::new(5);
        a.grow(20);
        let b = PotentialKernelTable::new(20);
        for m in 0..=20 {
            for n in 0..=m {
                assert_eq!(a.get(m, n), b.get(m, n));
            }
        }
    }

    #[test]
    fn open_green_examples() {
        assert_eq!(green_open(5, 0, 3), PiPoly::zero());
        assert_eq!(green_open(0, 1, 1), pp("1 - 2/pi"));
        assert_eq!(green_open(2, 1, 1), pp("-1 + 10/3/pi"));
        for x in -6..=6 {
            for y in 0..=4 {
                assert!(green_open(x, 0, y).is_zero());
                assert!(green_open(x, y, 0).is_zero());
            }
        }
    }

    #[test]
    fn closed_green_examples() {
        assert_eq!(green_closed(0, 1, 1), SymbolicGreen::unit(pp("-1/4")));
        assert_eq!(green_closed(1, 1, 1), SymbolicGreen::unit(pp("-1/4 - 1/pi")));
        assert_eq!(green_closed(2, 1, 1), SymbolicGreen::unit(pp("-3/4")));
    }

    #[test]
    fn neumann_reflection_of_finite_part() {
        let t = PotentialKernelTable::new(20);
        for x in -10..=10 {
            for y2 in 1..=5 {
                assert_eq!(t.closed_finite(x, 1, y2), t.closed_finite(x, 0, y2));
            }
        }
    }
}
