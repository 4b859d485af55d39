//! Occupation-number basis of a truncated multimode Fock space.
//!
//! The basis holds every tuple `(n_1, …, n_m)` with `Σ n_i ≤ cutoff`, in
//! lexicographic order. Ranking is combinatorial, so index lookups never
//! need a hash table even for the large two-mode spaces used by homodyne
//! scans.

use crate::error::{FockError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    num_modes: usize,
    cutoff: usize,
    occupations: Vec<usize>,
    // binom[b][k] = C(b, k) for b <= cutoff + num_modes, k <= num_modes
    binom: Vec<Vec<u64>>,
}

impl FockBasis {
    pub fn new(num_modes: usize, cutoff: usize) -> Result<Self> {
        if num_modes == 0 {
            return Err(FockError::InvalidParameter("num_modes must be positive".into()));
        }
        let rows = cutoff + num_modes + 1;
        let mut binom = vec![vec![0u64; num_modes + 1]; rows];
        for (b, row) in binom.iter_mut().enumerate() {
            row[0] = 1;
            for k in 1..=num_modes.min(b) {
                // C(b,k) = C(b,k-1) * (b-k+1) / k, exact in integers
                row[k] = row[k - 1] * (b - k + 1) as u64 / k as u64;
            }
        }
        let mut basis = FockBasis { num_modes, cutoff, occupations: Vec::new(), binom };
        let dim = basis.count(num_modes, cutoff);
        let mut occupations = Vec::with_capacity(dim * num_modes);
        let mut current = vec![0usize; num_modes];
        enumerate(&mut current, 0, cutoff, &mut occupations);
        debug_assert_eq!(occupations.len(), dim * num_modes);
        basis.occupations = occupations;
        Ok(basis)
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.occupations.len() / self.num_modes
    }

    pub fn occupation(&self, index: usize) -> &[usize] {
        &self.occupations[index * self.num_modes..(index + 1) * self.num_modes]
    }

    pub fn total(&self, index: usize) -> usize {
        self.occupation(index).iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.occupations.chunks_exact(self.num_modes)
    }

    /// Number of tuples over `modes` modes with total at most `budget`.
    fn count(&self, modes: usize, budget: usize) -> usize {
        if modes == 0 {
            return 1;
        }
        self.binom[budget + modes][modes] as usize
    }

    /// Position of an occupation tuple, or `None` if it lies outside the space.
    pub fn index_of(&self, occupations: &[usize]) -> Option<usize> {
        if occupations.len() != self.num_modes {
            return None;
        }
        let mut budget = self.cutoff;
        let mut rank = 0usize;
        for (i, &n) in occupations.iter().enumerate() {
            if n > budget {
                return None;
            }
            let rest = self.num_modes - i - 1;
            // tuples whose i-th entry is below n, given the prefix
            rank += self.count(rest + 1, budget) - self.count(rest + 1, budget - n);
            budget -= n;
        }
        Some(rank)
    }

    /// Indices of all basis states whose total photon number is `total`.
    pub fn sector(&self, total: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.total(i) == total).collect()
    }

    pub fn same_shape(&self, other: &FockBasis) -> bool {
        self.num_modes == other.num_modes && self.cutoff == other.cutoff
    }
}

fn enumerate(current: &mut Vec<usize>, pos: usize, budget: usize, out: &mut Vec<usize>) {
    if pos == current.len() {
        out.extend_from_slice(current);
        return;
    }
    for n in 0..=budget {
        current[pos] = n;
        enumerate(current, pos + 1, budget - n, out);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_matches_stars_and_bars() {
        let b = FockBasis::new(3, 4).unwrap();
        assert_eq!(b.dim(), 35);
        let b = FockBasis::new(1, 7).unwrap();
        assert_eq!(b.dim(), 8);
        let b = FockBasis::new(8, 6).unwrap();
        assert_eq!(b.dim(), 3003);
    }

    #[test]
    fn rank_inverts_enumeration() {
        for (m, c) in [(1, 5), (2, 9), (3, 6), (4, 5), (6, 3)] {
            let b = FockBasis::new(m, c).unwrap();
            for i in 0..b.dim() {
                assert_eq!(b.index_of(b.occupation(i)), Some(i));
            }
        }
    }

    #[test]
    fn ordering_is_lexicographic() {
        let b = FockBasis::new(3, 4).unwrap();
        let tuples: Vec<Vec<usize>> = b.iter().map(|t| t.to_vec()).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
        assert_eq!(tuples[0], vec![0, 0, 0]);
        assert_eq!(tuples[1], vec![0, 0, 1]);
    }

    #[test]
    fn out_of_space_tuples_have_no_index() {
        let b = FockBasis::new(2, 10).unwrap();
        assert_eq!(b.index_of(&[5, 6]), None);
        assert_eq!(b.index_of(&[1, 2, 3]), None);
        assert!(b.index_of(&[2, 3]).is_some());
    }

    #[test]
    fn sectors_partition_the_basis() {
        let b = FockBasis::new(3, 5).unwrap();
        let total: usize = (0..=5).map(|n| b.sector(n).len()).sum();
        assert_eq!(total, b.dim());
        assert_eq!(b.sector(2).len(), 6);
    }
}
