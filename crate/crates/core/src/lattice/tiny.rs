//! Exhaustive spanning-forest enumeration on small graphs.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::domain::{RectDomain, Site};
use super::LatticeError;
use crate::exactnum::{bareiss_det, permutation_sign};
use crate::melon::BoundaryCondition;

pub const MAX_FREE_VERTICES: usize = 12;

const NO_PARENT: usize = usize::MAX;

/// Undirected multigraph with unit weights, a boundary set and strings `I`, `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TinyGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    is_boundary: Vec<bool>,
    i_string: Vec<usize>,
    j_string: Vec<usize>,
    labels: Option<Vec<Site>>,
}

impl TinyGraph {
    pub fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        boundary: &[usize],
        i_string: Vec<usize>,
        j_string: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        let bad = |m: String| Err(LatticeError::InvalidGraph(m));
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n || u == v) {
            return bad(format!("edge ({u}, {v}) is a loop or leaves the vertex range"));
        }
        let mut is_boundary = vec![false; n];
        for &b in boundary {
            if b >= n {
                return bad(format!("boundary vertex {b} out of range"));
            }
            is_boundary[b] = true;
        }
        if i_string.len() != j_string.len() {
            return bad("I and J differ in length".into());
        }
        for &v in i_string.iter().chain(&j_string) {
            if v >= n || is_boundary[v] {
                return bad(format!("string vertex {v} is not a free vertex"));
            }
        }
        let mut sorted = i_string.clone();
        sorted.sort_unstable();
        let mut sorted_j = j_string.clone();
        sorted_j.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted_j.windows(2).any(|w| w[0] == w[1]) {
            return bad("repeated vertex in a string".into());
        }
        let free = is_boundary.iter().filter(|b| !**b).count();
        if free > MAX_FREE_VERTICES {
            return Err(LatticeError::TooLarge(free));
        }
        Ok(TinyGraph {
            n,
            edges,
            is_boundary,
            i_string,
            j_string,
            labels: None,
        })
    }

    /// Interior sites of a box as free vertices and their boundary neighbors as
    /// boundary vertices, each boundary site a separate vertex.
    pub fn from_domain(domain: &RectDomain, i_sites: &[Site], j_sites: &[Site]) -> Result<Self, LatticeError> {
        let mut labels: Vec<Site> = domain.interior_sites().collect();
        let free = labels.len();
        if free > MAX_FREE_VERTICES {
            return Err(LatticeError::TooLarge(free));
        }
        let mut edges = Vec::new();
        for a in 0..free {
            for t in domain.neighbors(labels[a]) {
                match labels.iter().position(|&s| s == t) {
                    Some(b) if b < free => {
                        if a < b {
                            edges.push((a, b));
                        }
                    }
                    Some(b) => edges.push((a, b)),
                    None => {
                        labels.push(t);
                        edges.push((a, labels.len() - 1));
                    }
                }
            }
        }
        let find = |s: &Site| {
            labels[..free]
                .iter()
                .position(|t| t == s)
                .ok_or_else(|| LatticeError::Geometry(format!("({}, {}) is not an interior site", s.x, s.y)))
        };
        let i = i_sites.iter().map(find).collect::<Result<_, _>>()?;
        let j = j_sites.iter().map(find).collect::<Result<_, _>>()?;
        let boundary: Vec<usize> = (free..labels.len()).collect();
        let mut g = TinyGraph::new(labels.len(), edges, &boundary, i, j)?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.is_boundary[v]
    }

    pub fn i_string(&self) -> &[usize] {
        &self.i_string
    }

    pub fn j_string(&self) -> &[usize] {
        &self.j_string
    }

    /// Lattice sites of the vertices, for graphs built from a box.
    pub fn labels(&self) -> Option<&[Site]> {
        self.labels.as_deref()
    }

    pub fn free_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.is_boundary[v]).collect()
    }

    /// Reduced Laplacian on the free vertices (in increasing order) minus `removed`.
    pub fn reduced_laplacian(&self, removed: &[usize]) -> Vec<Vec<BigInt>> {
        let keep: Vec<usize> = self.free_vertices().into_iter().filter(|v| !removed.contains(v)).collect();
        let pos = |v: usize| keep.iter().position(|&w| w == v);
        let mut m = vec![vec![BigInt::from(0); keep.len()]; keep.len()];
        for &(u, v) in &self.edges {
            for (a, b) in [(u, v), (v, u)] {
                if let Some(pa) = pos(a) {
                    m[pa][pa] += 1;
                    if let Some(pb) = pos(b) {
                        m[pa][pb] -= 1;
                    }
                }
            }
        }
        m
    }

    /// Call `f` with the parent of every vertex (`usize::MAX` on roots) for each
    /// spanning forest rooted to the boundary and `extra_roots`. Parallel edges give
    /// distinct forests and hence repeated parent vectors.
    pub fn for_each_forest(&self, extra_roots: &[usize], mut f: impl FnMut(&[usize])) {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let is_root: Vec<bool> = (0..self.n).map(|v| self.is_boundary[v] || extra_roots.contains(&v)).collect();
        let order: Vec<usize> = (0..self.n).filter(|&v| !is_root[v]).collect();
        let mut parent = vec![NO_PARENT; self.n];
        fn rec(
            depth: usize,
            order: &[usize],
            adj: &[Vec<usize>],
            is_root: &[bool],
            parent: &mut [usize],
            f: &mut dyn FnMut(&[usize]),
        ) {
            let Some(&v) = order.get(depth) else {
                f(parent);
                return;
            };
            for &p in &adj[v] {
                let mut w = p;
                while w != v && !is_root[w] && parent[w] != NO_PARENT {
                    w = parent[w];
                }
                if w == v {
                    continue;
                }
                parent[v] = p;
                rec(depth + 1, order, adj, is_root, parent, f);
            }
            parent[v] = NO_PARENT;
        }
        rec(0, &order, &adj, &is_root, &mut parent, &mut f);
    }
}

fn root_of(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != NO_PARENT {
        v = parent[v];
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCounts {
    /// Forests rooted to the boundary.
    pub z_rooted: u64,
    /// Forests rooted to the boundary and `I`.
    pub z_with_i_roots: u64,
    /// `σ ↦` number of forests rooted to `∂ ∪ I` with `j_l` in the tree of `i_{σ(l)}`.
    pub by_permutation: BTreeMap<Vec<usize>, u64>,
    pub det_laplacian: BigInt,
    /// Minor with the rows of `I` and the columns of `J` deleted.
    pub det_minor: BigInt,
}

impl ForestCounts {
    /// `(-1)^{ΣI+ΣJ}·sgn(I)·sgn(J)·Σ_σ sgn(σ)·Z_σ`, positions 1-based among free
    /// vertices; `sgn` of a string is the sign of the permutation sorting it.
    pub fn signed_sum(&self, g: &TinyGraph) -> BigInt {
        let free = g.free_vertices();
        let pos = |v: &usize| free.iter().position(|w| w == v).unwrap() + 1;
        let parity: usize = g.i_string.iter().chain(&g.j_string).map(pos).sum();
        let sort_sign = |s: &[usize]| {
            let mut idx: Vec<usize> = (0..s.len()).collect();
            idx.sort_by_key(|&a| s[a]);
            permutation_sign(&idx)
        };
        let mut total = BigInt::from(0);
        for (sigma, &z) in &self.by_permutation {
            total += BigInt::from(z) * permutation_sign(sigma);
        }
        let sign = if parity % 2 == 0 { 1 } else { -1 } * sort_sign(&g.i_string) * sort_sign(&g.j_string);
        total * sign
    }

    /// Matrix-tree and all-minors identities.
    pub fn identities_hold(&self, g: &TinyGraph) -> bool {
        self.det_laplacian == BigInt::from(self.z_rooted) && self.det_minor == self.signed_sum(g)
    }
}

pub fn forests_bruteforce(g: &TinyGraph) -> Result<ForestCounts, LatticeError> {
    let free = g.free_vertices().len();
    if free > MAX_FREE_VERTICES {
        return Err(LatticeError::TooLarge(free));
    }
    let mut z_rooted = 0u64;
    g.for_each_forest(&[], |_| z_rooted += 1);
    let mut z_with_i_roots = 0u64;
    let mut by_permutation = BTreeMap::new();
    g.for_each_forest(&g.i_string, |parent| {
        z_with_i_roots += 1;
        let sigma: Option<Vec<usize>> = g
            .j_string
            .iter()
            .map(|&j| {
                let root = root_of(parent, j);
                g.i_string.iter().position(|&i| i == root)
            })
            .collect();
        if let Some(sigma) = sigma {
            let mut seen = sigma.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() == sigma.len() {
                *by_permutation.entry(sigma).or_insert(0) += 1;
            }
        }
    });
    let det_laplacian = bareiss_det(&g.reduced_laplacian(&[]));
    let full = g.reduced_laplacian(&[]);
    let fv = g.free_vertices();
    let rows: Vec<usize> = (0..fv.len()).filter(|&a| !g.i_string.contains(&fv[a])).collect();
    let cols: Vec<usize> = (0..fv.len()).filter(|&a| !g.j_string.contains(&fv[a])).collect();
    let minor: Vec<Vec<BigInt>> = rows.iter().map(|&a| cols.iter().map(|&b| full[a][b].clone()).collect()).collect();
    let det_minor = bareiss_det(&minor);
    Ok(ForestCounts {
        z_rooted,
        z_with_i_roots,
        by_permutation,
        det_laplacian,
        det_minor,
    })
}

/// Edges of a `w × h` grid graph with vertex `y·w + x`.
pub fn grid_edges(w: usize, h: usize) -> Vec<(usize, usize)> {
    let id = |x: usize, y: usize| y * w + x;
    let mut e = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                e.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                e.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    e
}

/// Twelve small graphs with strings, including boxes with a 2×3 interior carrying
/// one and two strings. The last two admit both pairings of their two strings.
pub fn standard_corpus() -> Vec<TinyGraph> {
    let grid = grid_edges;
    let g = |n, e, b: &[usize], i, j| TinyGraph::new(n, e, b, i, j).expect("corpus graphs are valid");
    let mut c = vec![
        g(2, vec![(0, 1)], &[1], vec![], vec![]),
        g(4, grid(2, 2), &[3], vec![], vec![]),
        g(4, grid(2, 2), &[3], vec![0], vec![2]),
        g(5, grid(5, 1), &[0, 4], vec![1], vec![3]),
        g(9, grid(3, 3), &[0, 2, 6, 8], vec![1, 3], vec![5, 7]),
        g(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 0)], &[4], vec![0], vec![3]),
        g(5, vec![(0, 1), (0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], &[4], vec![1], vec![3]),
    ];
    let open = RectDomain::new(3, 3, BoundaryCondition::Open).expect("valid box");
    let s = Site::new;
    let from = |d: &RectDomain, i: &[Site], j: &[Site]| TinyGraph::from_domain(d, i, j).expect("fits");
    c.push(from(&open, &[s(0, 1)], &[s(2, 1)]));
    c.push(from(&open, &[s(0, 1), s(1, 1)], &[s(2, 1), s(2, 2)]));
    let closed = RectDomain::new(3, 2, BoundaryCondition::Closed).expect("valid box");
    c.push(from(&closed, &[s(0, 1), s(1, 1)], &[s(2, 2), s(2, 1)]));
    let k5: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    c.push(g(5, k5, &[4], vec![0, 1], vec![2, 3]));
    c.push(g(8, grid(4, 2), &[0], vec![1, 6], vec![2, 5]));
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{assemble_laplacian, green_solve};

    fn grid(w: usize, h: usize) -> Vec<(usize, usize)> {
        grid_edges(w, h)
    }

    #[test]
    fn single_edge_has_one_forest() {
        let g = TinyGraph::new(2, vec![(0, 1)], &[1], vec![], vec![]).unwrap();
        let f = forests_bruteforce(&g).unwrap();
        assert_eq!(f.z_rooted, 1);
        assert_eq!(f.det_laplacian, BigInt::from(1));
    }

    #[test]
    fn identities_hold_on_corpus() {
        let corpus = standard_corpus();
        assert!(corpus.len() >= 10);
        for (n, g) in corpus.iter().enumerate() {
            let f = forests_bruteforce(g).unwrap();
            assert_eq!(f.det_laplacian, BigInt::from(f.z_rooted), "graph {n}");
            assert_eq!(f.det_minor, f.signed_sum(g), "graph {n}: {f:?}");
        }
        let both = forests_bruteforce(&corpus[corpus.len() - 2]).unwrap();
        assert_eq!(both.by_permutation.len(), 2);
        let both = forests_bruteforce(&corpus[corpus.len() - 1]).unwrap();
        assert_eq!(both.by_permutation.len(), 2);
    }

    #[test]
    fn grid_2x2_matches_reduced_determinant() {
        let g = TinyGraph::new(4, grid(2, 2), &[3], vec![], vec![]).unwrap();
        let f = forests_bruteforce(&g).unwrap();
        assert_eq!(g.reduced_laplacian(&[]).len(), 3);
        assert_eq!(f.z_rooted, 4);
        assert_eq!(f.det_laplacian, BigInt::from(4));
    }

    #[test]
    fn one_string_ratio_matches_green_solve() {
        let d = RectDomain::new(3, 3, BoundaryCondition::Open).unwrap();
        let (i, j) = (Site::new(0, 1), Site::new(2, 1));
        let g = TinyGraph::from_domain(&d, &[i], &[j]).unwrap();
        let f = forests_bruteforce(&g).unwrap();
        let ratio = f.by_permutation[&vec![0]] as f64 / f.z_with_i_roots as f64;
        let lap = assemble_laplacian(&d, &[]).unwrap();
        let col = green_solve(&lap, i).unwrap();
        let at = |s| col[lap.index_of(s).unwrap()];
        assert!((ratio - at(j) / at(i)).abs() < 1e-10);
    }

    #[test]
    fn rejects_large_and_malformed_graphs() {
        assert_eq!(
            TinyGraph::new(13, grid(13, 1), &[], vec![], vec![]).unwrap_err(),
            LatticeError::TooLarge(13)
        );
        assert!(TinyGraph::new(2, vec![(0, 0)], &[1], vec![], vec![]).is_err());
        assert!(TinyGraph::new(3, grid(3, 1), &[2], vec![2], vec![0]).is_err());
        let big = RectDomain::new(4, 4, BoundaryCondition::Open).unwrap();
        assert!(matches!(TinyGraph::from_domain(&big, &[], &[]), Ok(_)));
        let bigger = RectDomain::new(4, 4, BoundaryCondition::Closed).unwrap();
        assert_eq!(TinyGraph::from_domain(&bigger, &[], &[]).unwrap_err(), LatticeError::TooLarge(16));
    }
}
