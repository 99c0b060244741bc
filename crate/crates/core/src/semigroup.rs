//! Finite semigroups given by their multiplication table.

use crate::error::{Error, Result};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<u32>,
    identity: Option<usize>,
    zero: Option<usize>,
    labels: Option<Vec<String>>,
}

impl CayleyTable {
    /// Validates a square table of indices and detects identity and zero.
    pub fn new(raw: &[Vec<usize>]) -> Result<Self> {
        let n = raw.len();
        if n == 0 || raw.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, r) in raw.iter().enumerate() {
            for (col, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(Error::IndexOutOfRange {
                        row,
                        col,
                        value: v,
                        order: n,
                    });
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table)
    }

    pub fn from_flat(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::NotSquare);
        }
        if let Some(i) = table.iter().position(|&v| v as usize >= order) {
            return Err(Error::IndexOutOfRange {
                row: i / order,
                col: i % order,
                value: table[i] as usize,
                order,
            });
        }
        let s = Self::from_trusted(order, table);
        if let Some((a, b, c)) = s.first_non_associative() {
            return Err(Error::NonAssociative(a, b, c));
        }
        Ok(s)
    }

    /// Builds a table known to be associative (products of maps, diagrams, ...).
    pub fn from_trusted(order: usize, table: Vec<u32>) -> Self {
        let mut s = CayleyTable {
            order,
            table,
            identity: None,
            zero: None,
            labels: None,
        };
        s.identity = s.find_identity();
        s.zero = s.find_zero();
        s
    }

    /// Tabulates an associative product on `0..order`.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize + Sync) -> Self {
        let table: Vec<u32> = (0..order * order)
            .into_par_iter()
            .map(|i| f(i / order, i % order) as u32)
            .collect();
        Self::from_trusted(order, table)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn set_label(&mut self, i: usize, label: String) {
        let n = self.order;
        let labels = self
            .labels
            .get_or_insert_with(|| (0..n).map(|i| i.to_string()).collect());
        labels[i] = label;
    }

    pub fn first_non_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        })
    }

    fn find_identity(&self) -> Option<usize> {
        let n = self.order;
        (0..n).find(|&e| (0..n).all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
    }

    fn find_zero(&self) -> Option<usize> {
        let n = self.order;
        (0..n).find(|&z| (0..n).all(|a| self.mul(z, a) == z && self.mul(a, z) == z))
    }

    /// Overrides auto-detection; the claim is checked.
    pub fn declare_identity(&mut self, e: usize) -> Result<()> {
        let n = self.order;
        if e >= n || !(0..n).all(|a| self.mul(e, a) == a && self.mul(a, e) == a) {
            return Err(Error::NoSuchElement(e));
        }
        self.identity = Some(e);
        Ok(())
    }

    pub fn declare_zero(&mut self, z: usize) -> Result<()> {
        let n = self.order;
        if z >= n || !(0..n).all(|a| self.mul(z, a) == z && self.mul(a, z) == z) {
            return Err(Error::NoSuchElement(z));
        }
        self.zero = Some(z);
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn raw(&self) -> &[u32] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn index_of_label(&self, s: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == s),
            None => s.parse().ok().filter(|&i| i < self.order),
        }
    }

    /// a^k for k >= 1.
    pub fn power(&self, a: usize, k: usize) -> usize {
        assert!(k >= 1);
        let mut x = a;
        for _ in 1..k {
            x = self.mul(x, a);
        }
        x
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.is_idempotent(a)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_group(&self) -> bool {
        match self.identity {
            None => false,
            Some(e) => (0..self.order).all(|a| (0..self.order).any(|b| self.mul(a, b) == e)),
        }
    }

    /// Inverse in a group table.
    pub fn group_inverse(&self, a: usize) -> Option<usize> {
        let e = self.identity?;
        (0..self.order).find(|&b| self.mul(a, b) == e && self.mul(b, a) == e)
    }

    /// S if S is a monoid, otherwise S with an identity adjoined as the last index.
    pub fn adjoin_identity(&self) -> CayleyTable {
        if self.is_monoid() {
            return self.clone();
        }
        let n = self.order;
        let m = n + 1;
        let mut t = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                t[a * m + b] = if a == n {
                    b as u32
                } else if b == n {
                    a as u32
                } else {
                    self.mul(a, b) as u32
                };
            }
        }
        let mut s = CayleyTable::from_trusted(m, t);
        if let Some(l) = &self.labels {
            let mut l = l.clone();
            l.push("1".into());
            s.labels = Some(l);
        }
        s
    }

    /// Restriction of the product to a closed subset, with the embedding.
    pub fn restrict(&self, elems: &[usize]) -> (CayleyTable, Vec<usize>) {
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let k = elems.len();
        let mut t = Vec::with_capacity(k * k);
        for &a in elems {
            for &b in elems {
                t.push(pos[&self.mul(a, b)] as u32);
            }
        }
        let mut s = CayleyTable::from_trusted(k, t);
        if let Some(l) = &self.labels {
            s.labels = Some(elems.iter().map(|&e| l[e].clone()).collect());
        }
        (s, elems.to_vec())
    }

    /// Subsemigroup generated by `seeds`.
    pub fn subsemigroup(&self, seeds: &[usize]) -> Result<(CayleyTable, Vec<usize>)> {
        if let Some(&bad) = seeds.iter().find(|&&s| s >= self.order) {
            return Err(Error::NoSuchElement(bad));
        }
        let mut set: BTreeSet<usize> = seeds.iter().copied().collect();
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let current: Vec<usize> = set.iter().copied().collect();
            for y in current {
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if set.insert(p) {
                        frontier.push(p);
                    }
                }
            }
        }
        let elems: Vec<usize> = set.into_iter().collect();
        Ok(self.restrict(&elems))
    }

    /// C(a) = {x : ax = xa}.
    pub fn centralizer(&self, a: usize) -> Result<(CayleyTable, Vec<usize>)> {
        if a >= self.order {
            return Err(Error::NoSuchElement(a));
        }
        let elems: Vec<usize> = (0..self.order)
            .filter(|&x| self.mul(a, x) == self.mul(x, a))
            .collect();
        Ok(self.restrict(&elems))
    }

    /// Units of S¹. Trivial when S has no identity.
    pub fn units(&self) -> Vec<usize> {
        match self.identity {
            None => vec![],
            Some(e) => (0..self.order)
                .filter(|&g| (0..self.order).any(|h| self.mul(g, h) == e && self.mul(h, g) == e))
                .collect(),
        }
    }

    /// The group of units G(S¹) as a table, with its embedding into S¹.
    pub fn units_group(&self) -> (CayleyTable, Vec<usize>) {
        if self.identity.is_none() {
            let t = CayleyTable::from_trusted(1, vec![0]).with_labels(vec!["1".into()]);
            return (t, vec![self.order]);
        }
        let u = self.units();
        self.restrict(&u)
    }

    /// Inverses of a: all x with axa = a and xax = x.
    pub fn inverses(&self, a: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| self.mul(self.mul(a, x), a) == a && self.mul(self.mul(x, a), x) == x)
            .collect()
    }

    pub fn is_regular(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).any(|x| self.mul(self.mul(a, x), a) == a))
    }

    /// Every element has exactly one inverse.
    pub fn is_inverse_semigroup(&self) -> bool {
        (0..self.order).all(|a| self.inverses(a).len() == 1)
    }

    /// Every element lies in a subgroup.
    pub fn is_completely_regular(&self) -> bool {
        (0..self.order).all(|a| {
            let e = crate::epigroup::omega_of(self, a);
            self.mul(e, a) == a
        })
    }

    pub fn direct_product(&self, other: &CayleyTable) -> CayleyTable {
        let (n, m) = (self.order, other.order);
        let s = CayleyTable::from_fn(n * m, |x, y| {
            let (a1, b1) = (x / m, x % m);
            let (a2, b2) = (y / m, y % m);
            self.mul(a1, a2) * m + other.mul(b1, b2)
        });
        let labels = (0..n * m)
            .map(|x| format!("({},{})", self.label(x / m), other.label(x % m)))
            .collect();
        s.with_labels(labels)
    }

    /// Is `f` an isomorphism from self onto other?
    pub fn is_isomorphism(&self, other: &CayleyTable, f: &[usize]) -> bool {
        let n = self.order;
        if other.order != n || f.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &x in f {
            if x >= n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        (0..n).all(|a| (0..n).all(|b| f[self.mul(a, b)] == other.mul(f[a], f[b])))
    }
}

/// S together with S¹. Elements of S keep their indices; an adjoined identity
/// gets index `n`.
#[derive(Debug, Clone)]
pub struct WithOne {
    pub s1: CayleyTable,
    pub n: usize,
    pub one: usize,
    pub adjoined: bool,
}

impl WithOne {
    pub fn new(s: &CayleyTable) -> Self {
        let s1 = s.adjoin_identity();
        let adjoined = !s.is_monoid();
        let one = s1.identity().expect("S¹ has an identity");
        WithOne {
            n: s.order(),
            one,
            adjoined,
            s1,
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.s1.mul(a, b)
    }

    /// Number of elements of S¹.
    #[inline]
    pub fn len1(&self) -> usize {
        self.s1.order()
    }
}

/// Cyclic group Z_m under addition.
pub fn cyclic_group(m: usize) -> CayleyTable {
    CayleyTable::from_fn(m, |a, b| (a + b) % m)
}

/// Symmetric group on k points; elements are permutations in lexicographic order,
/// product is composition left to right.
pub fn symmetric_group(k: usize) -> CayleyTable {
    let perms = permutations(k);
    let index: HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let t = CayleyTable::from_fn(perms.len(), |a, b| {
        let p: Vec<usize> = (0..k).map(|x| perms[b][perms[a][x]]).collect();
        index[&p]
    });
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(""))
        .collect();
    t.with_labels(labels)
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur: Vec<usize> = (0..k).collect();
    fn rec(i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            rec(i + 1, cur, out);
            cur.swap(i, j);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_monoid() {
        let s = CayleyTable::new(&[vec![0]]).unwrap();
        assert_eq!(s.identity(), Some(0));
        assert_eq!(s.zero(), Some(0));
    }

    #[test]
    fn rejects_non_associative() {
        // 0*1 = 1, 1*2 = 0, (0*1)*2 = 0 but 0*(1*2) = 0*0 = 2
        let raw = vec![vec![2, 1, 0], vec![0, 0, 0], vec![0, 0, 0]];
        assert!(matches!(CayleyTable::new(&raw), Err(Error::NonAssociative(..))));
    }

    #[test]
    fn out_of_range() {
        let raw = vec![vec![0, 2], vec![0, 0]];
        assert!(matches!(
            CayleyTable::new(&raw),
            Err(Error::IndexOutOfRange { value: 2, .. })
        ));
    }

    #[test]
    fn adjoin_identity_on_monoid_is_noop() {
        let z = cyclic_group(3);
        assert_eq!(z.adjoin_identity(), z);
        let mut t = CayleyTable::new(&[vec![0, 0], vec![0, 0]]).unwrap();
        t.set_label(0, "z".into());
        let t1 = t.adjoin_identity();
        assert_eq!(t1.order(), 3);
        assert_eq!(t1.identity(), Some(2));
    }

    #[test]
    fn symmetric_group_order() {
        let s3 = symmetric_group(3);
        assert_eq!(s3.order(), 6);
        assert!(s3.is_group());
        assert!(!s3.is_commutative());
    }
}
