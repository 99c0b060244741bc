//! Dense binary relations on `0..n` and partitions.

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Relation(n={}, pairs={})", self.n, self.count())
    }
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64).max(1);
        Relation {
            n,
            stride,
            bits: vec![0; stride * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            r.set(a, a);
        }
        r
    }

    pub fn universal(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let mut r = Self::empty(n);
        let stride = r.stride;
        r.bits
            .par_chunks_mut(stride)
            .enumerate()
            .for_each(|(a, row)| {
                for b in 0..n {
                    if f(a, b) {
                        row[b / 64] |= 1 << (b % 64);
                    }
                }
            });
        r
    }

    /// Builds each row independently.
    pub fn from_rows(n: usize, row: impl Fn(usize, &mut dyn FnMut(usize)) + Sync) -> Self {
        let mut r = Self::empty(n);
        let stride = r.stride;
        r.bits
            .par_chunks_mut(stride)
            .enumerate()
            .for_each(|(a, bits)| {
                row(a, &mut |b| bits[b / 64] |= 1 << (b % 64));
            });
        r
    }

    pub fn from_partition(p: &Partition) -> Self {
        let n = p.class_of.len();
        let mut r = Self::empty(n);
        for class in &p.classes {
            for &a in class {
                for &b in class {
                    r.set(a, b);
                }
            }
        }
        r
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.stride + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.stride + b / 64] |= 1 << (b % 64);
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let words = &self.bits[a * self.stride..(a + 1) * self.stride];
        words.iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + t)
            })
        })
    }

    pub fn union_with(&mut self, other: &Relation) {
        assert_eq!(self.n, other.n);
        for (x, y) in self.bits.iter_mut().zip(&other.bits) {
            *x |= *y;
        }
    }

    pub fn intersect(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut r = self.clone();
        for (x, y) in r.bits.iter_mut().zip(&other.bits) {
            *x &= *y;
        }
        r
    }

    pub fn transpose(&self) -> Relation {
        let mut r = Relation::empty(self.n);
        for a in 0..self.n {
            for b in self.row(a) {
                r.set(b, a);
            }
        }
        r
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(x, y)| x & !y == 0)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Pairs in self but not in other.
    pub fn difference(&self, other: &Relation) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for a in 0..self.n {
            for b in self.row(a) {
                if !other.get(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|a| self.get(a, a))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n;
        (0..n).into_par_iter().all(|a| {
            let mut reach = vec![0u64; self.stride];
            for b in self.row(a) {
                let rb = &self.bits[b * self.stride..(b + 1) * self.stride];
                for (x, y) in reach.iter_mut().zip(rb) {
                    *x |= *y;
                }
            }
            let ra = &self.bits[a * self.stride..(a + 1) * self.stride];
            reach.iter().zip(ra).all(|(x, y)| x & !y == 0)
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// Smallest equivalence containing self.
    pub fn equivalence_closure(&self) -> Partition {
        let mut uf = UnionFind::new(self.n);
        for a in 0..self.n {
            for b in self.row(a) {
                uf.union(a, b);
            }
        }
        Partition::from_labels(&uf.into_labeling())
    }

    /// Reads self as an equivalence relation. Panics in debug builds otherwise.
    pub fn to_partition(&self) -> Partition {
        debug_assert!(self.is_equivalence());
        self.equivalence_closure()
    }
}

/// A partition of `0..n`. Classes are sorted and listed by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut ids = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = vec![];
        for (i, l) in labels.iter().enumerate() {
            let id = *ids.entry(l.clone()).or_insert_with(|| {
                classes.push(vec![]);
                classes.len() - 1
            });
            class_of.push(id);
            classes[id].push(i);
        }
        Partition { class_of, classes }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    #[inline]
    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn class(&self, a: usize) -> &[usize] {
        &self.classes[self.class_of[a]]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Intersection of two partitions of the same set.
    pub fn meet(&self, other: &Partition) -> Partition {
        let labels: Vec<(usize, usize)> = self
            .class_of
            .iter()
            .zip(&other.class_of)
            .map(|(&x, &y)| (x, y))
            .collect();
        Partition::from_labels(&labels)
    }

    /// Join of two partitions of the same set.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.class_of.len();
        let mut uf = UnionFind::new(n);
        for p in [self, other] {
            for c in &p.classes {
                for w in c.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        Partition::from_labels(&uf.into_labeling())
    }

    /// Every class of self lies inside a class of other.
    pub fn refines(&self, other: &Partition) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| other.same(c[0], x)))
    }
}
