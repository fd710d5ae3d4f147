//! Integer partitions with a bounded number of parts.

use std::fmt;

/// Weakly decreasing parts, padded with zeros to a fixed length `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Pads `parts` with zeros to length `k`. Panics if the parts increase or exceed `k` in number.
    pub fn new(mut parts: Vec<usize>, k: usize) -> Self {
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing");
        while parts.last() == Some(&0) && parts.len() > k {
            parts.pop();
        }
        assert!(parts.len() <= k, "more than {k} parts");
        parts.resize(k, 0);
        Partition { parts }
    }

    pub fn empty(k: usize) -> Self {
        Partition { parts: vec![0; k] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ + δ` with the staircase `δ = (k-1, …, 0)`.
    pub fn shifted(&self) -> Vec<usize> {
        let k = self.parts.len();
        self.parts.iter().enumerate().map(|(i, p)| p + k - 1 - i).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` into at most `k` parts, in decreasing lexicographic order.
pub fn partitions_of(n: usize, k: usize) -> Vec<Partition> {
    fn rec(n: usize, k: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        if k == 0 {
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, k - 1, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, n, &mut Vec::new(), &mut out);
    out.into_iter().map(|p| Partition::new(p, k)).collect()
}

/// Partitions with at most `k` parts and size at most `max_size`, graded by size.
pub fn partitions_up_to(max_size: usize, k: usize) -> Vec<Partition> {
    (0..=max_size).flat_map(|n| partitions_of(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_numbers() {
        // partitions of n into at most 3 parts
        let want = [1, 1, 2, 3, 4, 5, 7, 8, 10, 12];
        for (n, &c) in want.iter().enumerate() {
            assert_eq!(partitions_of(n, 3).len(), c, "n={n}");
        }
        // unrestricted partitions of 8
        assert_eq!(partitions_of(8, 8).len(), 22);
        assert_eq!(partitions_of(0, 2), vec![Partition::empty(2)]);
        assert!(partitions_of(3, 0).is_empty());
    }

    #[test]
    fn graded_order() {
        let ps = partitions_up_to(3, 2);
        let shown: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["(0,0)", "(1,0)", "(2,0)", "(1,1)", "(3,0)", "(2,1)"]);
        assert_eq!(Partition::new(vec![2, 1], 3).shifted(), vec![4, 2, 0]);
    }
}
