//! Fixed-width vertex bitsets used as adjacency rows.

use std::fmt;

/// Largest supported vertex count.
pub const N_MAX: usize = 512;

const WORDS: usize = N_MAX / 64;

/// A set of vertices in `[0, N_MAX)`, stored as one fixed-width bit row.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet([u64; WORDS]);

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet([0; WORDS])
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn prefix(n: usize) -> Self {
        debug_assert!(n <= N_MAX);
        let mut s = VertexSet::new();
        let full = n / 64;
        for w in s.0.iter_mut().take(full) {
            *w = u64::MAX;
        }
        if n % 64 != 0 {
            s.0[full] = (1u64 << (n % 64)) - 1;
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < N_MAX && self.0[v >> 6] & (1u64 << (v & 63)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        out.intersect_with(other);
        out
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a &= *b;
        }
    }

    #[inline]
    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a |= *b;
        }
    }

    #[inline]
    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a &= !*b;
        }
    }

    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.0,
            idx: 0,
            cur: self.0[0],
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64; WORDS],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + bit);
            }
            self.idx += 1;
            if self.idx >= WORDS {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
