//! Counting matrices, which double as keys for normal-ordered words.

use std::fmt;

use super::gen::{Gen, Word, MAX_N};

/// Occurrence counts `theta(x)` of each generator, for `n <= 4`.
///
/// A normal-ordered word is determined by its counts, so the same type is the
/// key of [`NCPoly`](super::NCPoly). The derived order compares `n` first and
/// then the row-major count vector lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    n: u8,
    counts: [u8; MAX_N * MAX_N],
}

pub type CountingMatrix = Mono;

impl Mono {
    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_N);
        Mono {
            n: n as u8,
            counts: [0; MAX_N * MAX_N],
        }
    }

    pub fn from_word(w: &Word) -> Self {
        let mut m = Mono::one(w.n);
        for &g in &w.gens {
            m.counts[g.index()] += 1;
        }
        m
    }

    /// Build from an `n x n` row-major matrix.
    pub fn from_matrix(n: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Mono::one(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                m.counts[Gen::new(i as u8, j as u8).index()] = c as u8;
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, g: Gen) -> u32 {
        self.counts[g.index()] as u32
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.counts[i * MAX_N + j] as u32
    }

    pub fn matrix(&self) -> Vec<Vec<u32>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    #[inline]
    pub fn with(mut self, g: Gen) -> Self {
        self.counts[g.index()] += 1;
        self
    }

    #[inline]
    pub fn without(mut self, g: Gen) -> Self {
        debug_assert!(self.counts[g.index()] > 0);
        self.counts[g.index()] -= 1;
        self
    }

    /// Largest generator present.
    #[inline]
    pub fn max_gen(&self) -> Option<Gen> {
        self.counts
            .iter()
            .rposition(|&c| c > 0)
            .map(Gen::from_index)
    }

    /// Legwise product of counts (the counting matrix of a product word).
    pub fn plus(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
        m
    }

    /// `self - other` if entrywise nonnegative.
    pub fn minus(&self, other: &Mono) -> Option<Mono> {
        let mut m = *self;
        for (a, b) in m.counts.iter_mut().zip(other.counts.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(m)
    }

    /// The normal-ordered word with these counts.
    pub fn to_word(&self) -> Word {
        let mut gens = Vec::with_capacity(self.len());
        for (i, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                gens.push(Gen::from_index(i));
            }
        }
        Word::new(self.n(), gens)
    }

    /// Row sums `alpha`.
    pub fn row_sums(&self) -> Vec<u32> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.entry(i, j)).sum())
            .collect()
    }

    /// Column sums `beta`.
    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.n())
            .map(|j| (0..self.n()).map(|i| self.entry(i, j)).sum())
            .collect()
    }

    /// `Some(k)` iff every row and column sums to the same `k >= 1`.
    pub fn doubly_stochastic_order(&self) -> Option<usize> {
        let r = self.row_sums();
        let c = self.col_sums();
        let k = r[0];
        (k >= 1 && r.iter().chain(c.iter()).all(|&s| s == k)).then_some(k as usize)
    }

    pub fn is_k_doubly_stochastic(&self, k: usize) -> bool {
        self.doubly_stochastic_order() == Some(k)
    }

    /// Row-major count vector `V(C)`.
    pub fn vector(&self) -> Vec<u32> {
        (0..self.n())
            .flat_map(|i| (0..self.n()).map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j))
            .collect()
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono[{}]", self.to_word())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_examples() {
        let m = Mono::from_word(&Word::parse("a e k", 3).unwrap());
        assert_eq!(m.matrix(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.doubly_stochastic_order(), Some(1));
        let a = Mono::from_word(&Word::parse("a", 3).unwrap());
        assert_eq!(a.doubly_stochastic_order(), None);
        let m = Mono::from_word(&Word::parse("a e k c e g", 3).unwrap());
        assert_eq!(m.matrix(), vec![vec![1, 0, 1], vec![0, 2, 0], vec![1, 0, 1]]);
        assert!(m.is_k_doubly_stochastic(2));
        assert_eq!(m.to_word().to_string(), "a c e e g k");
    }

    #[test]
    fn order_is_lexicographic_in_v() {
        let x = Mono::from_word(&Word::parse("a e", 3).unwrap());
        let y = Mono::from_word(&Word::parse("b d", 3).unwrap());
        assert!(y < x);
        assert_eq!(Mono::one(3).max_gen(), None);
        assert_eq!(x.max_gen(), Some(Gen::new(1, 1)));
    }
}
