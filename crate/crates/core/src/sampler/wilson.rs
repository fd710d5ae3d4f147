//! Wilson's algorithm on a padded grid with last-exit loop erasure.

use rand::RngCore;

use super::{RngSeed, SamplerError};
use crate::lattice::{RectDomain, Site};
use crate::melon::BoundaryCondition;

const INTERIOR: u8 = 0;
const BOUNDARY: u8 = 1;
const OUTSIDE: u8 = 2;

/// Default cap on the steps of a single random walk.
pub const STEP_BUDGET: u64 = 1 << 40;

/// Reusable sampling state for one box. Sites are stored on a grid padded by one
/// cell on every side; `stamp == epoch` marks cells already in the current forest.
#[derive(Clone, Debug)]
pub struct Sampler {
    domain: RectDomain,
    stride: usize,
    kind: Vec<u8>,
    is_root: Vec<bool>,
    extra_roots: Vec<usize>,
    stamp: Vec<u32>,
    next: Vec<u32>,
    root: Vec<u32>,
    epoch: u32,
    offsets: [isize; 4],
    budget: u64,
}

struct Bits {
    word: u64,
    left: u32,
}

impl Bits {
    fn new() -> Self {
        Bits { word: 0, left: 0 }
    }

    #[inline]
    fn draw2(&mut self, rng: &mut impl RngCore) -> usize {
        if self.left == 0 {
            self.word = rng.next_u64();
            self.left = 32;
        }
        let d = (self.word & 3) as usize;
        self.word >>= 2;
        self.left -= 1;
        d
    }
}

impl Sampler {
    pub fn new(domain: &RectDomain) -> Self {
        let stride = domain.width + 2;
        let top = domain.top_row() as usize;
        let cells = stride * (top + 2);
        let mut kind = vec![BOUNDARY; cells];
        for y in 0..top + 2 {
            for x in 0..stride {
                let p = x + y * stride;
                if y == 0 && domain.bc == BoundaryCondition::Closed {
                    kind[p] = OUTSIDE;
                } else if (1..=top).contains(&y) && (1..=domain.width).contains(&x) {
                    kind[p] = INTERIOR;
                }
            }
        }
        let is_root = kind.iter().map(|&k| k == BOUNDARY).collect();
        Sampler {
            domain: *domain,
            stride,
            kind,
            is_root,
            extra_roots: Vec::new(),
            stamp: vec![0; cells],
            next: vec![0; cells],
            root: vec![0; cells],
            epoch: 0,
            offsets: [1, -1, stride as isize, -(stride as isize)],
            budget: STEP_BUDGET,
        }
    }

    pub fn with_step_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn domain(&self) -> &RectDomain {
        &self.domain
    }

    fn cell(&self, s: Site) -> usize {
        (s.x + 1) as usize + s.y as usize * self.stride
    }

    fn site(&self, p: usize) -> Site {
        Site::new((p % self.stride) as i64 - 1, (p / self.stride) as i64)
    }

    fn interior_cell(&self, s: Site) -> Result<usize, SamplerError> {
        if self.domain.is_interior(s) {
            Ok(self.cell(s))
        } else {
            Err(SamplerError::Invalid(format!("({}, {}) is not an interior site", s.x, s.y)))
        }
    }

    fn set_roots(&mut self, roots: &[Site]) -> Result<(), SamplerError> {
        let cells = roots.iter().map(|&s| self.interior_cell(s)).collect::<Result<Vec<_>, _>>()?;
        if cells == self.extra_roots {
            return Ok(());
        }
        for &p in &self.extra_roots {
            self.is_root[p] = false;
        }
        for &p in &cells {
            self.is_root[p] = true;
        }
        self.extra_roots = cells;
        Ok(())
    }

    fn new_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    #[inline]
    fn in_tree(&self, p: usize) -> bool {
        self.is_root[p] || self.stamp[p] == self.epoch
    }

    fn label(&self, p: usize) -> usize {
        if self.is_root[p] {
            p
        } else {
            self.root[p] as usize
        }
    }

    /// Loop-erased walk from `start` into the current forest; returns the root cell.
    fn walk(&mut self, start: usize, rng: &mut impl RngCore, bits: &mut Bits) -> Result<usize, SamplerError> {
        let mut cur = start;
        let mut steps = 0u64;
        while !self.in_tree(cur) {
            let nxt = cur.wrapping_add_signed(self.offsets[bits.draw2(rng)]);
            if self.kind[nxt] == OUTSIDE {
                continue;
            }
            self.next[cur] = nxt as u32;
            cur = nxt;
            steps += 1;
            if steps > self.budget {
                return Err(SamplerError::StepBudget(self.budget));
            }
        }
        let r = self.label(cur);
        let mut cur = start;
        while !self.in_tree(cur) {
            self.stamp[cur] = self.epoch;
            self.root[cur] = r as u32;
            cur = self.next[cur] as usize;
        }
        Ok(r)
    }

    /// Full forest rooted to the boundary and `roots`, walking from `first` and then
    /// from every interior site in row-major order.
    pub fn sample_forest(
        &mut self,
        roots: &[Site],
        first: &[Site],
        rng: &mut impl RngCore,
    ) -> Result<ForestSample, SamplerError> {
        self.set_roots(roots)?;
        self.new_epoch();
        let mut bits = Bits::new();
        for &s in first {
            let p = self.interior_cell(s)?;
            self.walk(p, rng, &mut bits)?;
        }
        let sites: Vec<Site> = self.domain.interior_sites().collect();
        for &s in &sites {
            let p = self.cell(s);
            self.walk(p, rng, &mut bits)?;
        }
        let mut parent = Vec::with_capacity(sites.len());
        let mut root = Vec::with_capacity(sites.len());
        for &s in &sites {
            let p = self.cell(s);
            if self.is_root[p] {
                parent.push(s);
                root.push(s);
            } else {
                parent.push(self.site(self.next[p] as usize));
                root.push(self.site(self.root[p] as usize));
            }
        }
        Ok(ForestSample {
            domain: self.domain,
            parent,
            root,
        })
    }

    /// Walks from `J` only, with roots `I` and the boundary, and reports the event.
    pub fn watermelon_event(&mut self, i: &[Site], j: &[Site], rng: &mut impl RngCore) -> Result<bool, SamplerError> {
        self.set_roots(i)?;
        self.new_epoch();
        let mut bits = Bits::new();
        let mut roots = Vec::with_capacity(j.len());
        for &s in j {
            let p = self.interior_cell(s)?;
            let r = self.walk(p, rng, &mut bits)?;
            roots.push(self.site(r));
        }
        classify(i, j, &roots)
    }
}

/// A spanning forest; `parent` and `root` are indexed like `domain.interior_sites()`.
/// Roots are their own parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestSample {
    pub domain: RectDomain,
    pub parent: Vec<Site>,
    pub root: Vec<Site>,
}

impl ForestSample {
    fn index(&self, s: Site) -> Option<usize> {
        self.domain
            .is_interior(s)
            .then(|| (s.y as usize - 1) * self.domain.width + s.x as usize)
    }

    pub fn parent_of(&self, s: Site) -> Option<Site> {
        self.index(s).map(|i| self.parent[i])
    }

    /// Root of the component of `s`: an extra root or a boundary site.
    pub fn root_of(&self, s: Site) -> Option<Site> {
        self.index(s).map(|i| self.root[i])
    }

    /// Parent links are lattice edges, every chain ends at a root within
    /// `interior_count` steps, and it ends at the recorded root.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.parent.len();
        for (i, s) in self.domain.interior_sites().enumerate() {
            let mut cur = s;
            let mut steps = 0;
            loop {
                let Some(k) = self.index(cur) else { break };
                let p = self.parent[k];
                if p == cur {
                    break;
                }
                if !self.domain.neighbors(cur).any(|t| t == p) {
                    return Err(format!("({}, {}) -> ({}, {}) is not an edge", cur.x, cur.y, p.x, p.y));
                }
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(format!("cycle through ({}, {})", s.x, s.y));
                }
            }
            if cur != self.root[i] {
                return Err(format!("({}, {}) has inconsistent root label", s.x, s.y));
            }
        }
        Ok(())
    }
}

/// `true` iff each `j_l` is attached to `i_{k+1-l}`; for `J = I` each site is its
/// own root and the event always holds. Any other complete pairing is an alarm.
fn classify(i: &[Site], j: &[Site], roots: &[Site]) -> Result<bool, SamplerError> {
    if i == j {
        return Ok(true);
    }
    let k = i.len();
    let sigma: Option<Vec<usize>> = roots.iter().map(|r| i.iter().position(|s| s == r)).collect();
    let Some(sigma) = sigma else { return Ok(false) };
    let mut seen = vec![false; k];
    for &m in &sigma {
        if std::mem::replace(&mut seen[m], true) {
            return Ok(false);
        }
    }
    if sigma.iter().enumerate().all(|(l, &m)| m == k - 1 - l) {
        Ok(true)
    } else {
        Err(SamplerError::PairingAlarm(sigma))
    }
}

pub fn watermelon_indicator(f: &ForestSample, i: &[Site], j: &[Site]) -> Result<bool, SamplerError> {
    let roots = j
        .iter()
        .map(|&s| {
            f.root_of(s)
                .ok_or_else(|| SamplerError::Invalid(format!("({}, {}) is outside the sample", s.x, s.y)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    classify(i, j, &roots)
}

/// One forest with roots `roots` plus the boundary, from worker stream 0 of `seed`.
pub fn wilson_sample(domain: &RectDomain, roots: &[Site], seed: RngSeed) -> Result<ForestSample, SamplerError> {
    Sampler::new(domain).sample_forest(roots, &[], &mut seed.worker_rng(0))
}
