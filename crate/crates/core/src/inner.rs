//! Partial inner automorphisms φ_{g,h}: a ↦ h·a·g on D_{g,h} = {a : gh·a = a·gh = a}.

use crate::error::{Error, Result};
use crate::io::bound;
use crate::semigroup::{CayleyTable, WithOne};
use crate::transform::{TransformKind, TransformationMonoid};
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use std::fmt;

const UNDEF: u32 = u32::MAX;

/// Largest |S| accepted by [`generate_inn`].
pub const MAX_SEMIGROUP: usize = 512;
/// Largest Inn(S) that [`generate_inn`] will build.
pub const MAX_INN_ORDER: usize = 200_000;
/// Largest Inn(S) that gets a Cayley table.
pub const MAX_TABLE: usize = 5000;

/// A partial injection on the elements of S, stored as an image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialAut {
    img: Vec<u32>,
}

impl PartialAut {
    pub fn new(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut img = vec![UNDEF; size];
        let mut seen = vec![false; size];
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(Error::NoSuchElement(a.max(b)));
            }
            if seen[b] || img[a] != UNDEF {
                return Err(Error::NotInjective);
            }
            seen[b] = true;
            img[a] = b as u32;
        }
        Ok(PartialAut { img })
    }

    pub fn identity(size: usize) -> Self {
        PartialAut {
            img: (0..size as u32).collect(),
        }
    }

    pub fn empty(size: usize) -> Self {
        PartialAut { img: vec![UNDEF; size] }
    }

    pub fn size(&self) -> usize {
        self.img.len()
    }

    pub fn get(&self, a: usize) -> Option<usize> {
        let v = self.img[a];
        (v != UNDEF).then_some(v as usize)
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.img.len()).filter(|&a| self.img[a] != UNDEF).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.img.iter().filter(|&&b| b != UNDEF).map(|&b| b as usize).collect();
        v.sort_unstable();
        v
    }

    pub fn rank(&self) -> usize {
        self.img.iter().filter(|&&b| b != UNDEF).count()
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    /// First self, then `other`, on the largest domain where both are defined.
    pub fn then(&self, other: &PartialAut) -> PartialAut {
        PartialAut {
            img: self
                .img
                .iter()
                .map(|&b| if b == UNDEF { UNDEF } else { other.img[b as usize] })
                .collect(),
        }
    }

    pub fn inverse(&self) -> PartialAut {
        let mut img = vec![UNDEF; self.img.len()];
        for (a, &b) in self.img.iter().enumerate() {
            if b != UNDEF {
                img[b as usize] = a as u32;
            }
        }
        PartialAut { img }
    }

    /// Graph inclusion.
    pub fn is_restriction_of(&self, other: &PartialAut) -> bool {
        self.img.iter().zip(&other.img).all(|(&x, &y)| x == UNDEF || x == y)
    }

    pub fn is_idempotent(&self) -> bool {
        self.img.iter().enumerate().all(|(a, &b)| b == UNDEF || b as usize == a)
    }

    /// Injective and multiplicative wherever a, b and ab all lie in the domain.
    pub fn is_partial_isomorphism(&self, s: &CayleyTable) -> bool {
        let dom = self.domain();
        let mut seen = HashSet::new();
        if !dom.iter().all(|&a| seen.insert(self.img[a])) {
            return false;
        }
        dom.iter().all(|&a| {
            dom.iter().all(|&b| match self.get(s.mul(a, b)) {
                Some(x) => x == s.mul(self.img[a] as usize, self.img[b] as usize),
                None => true,
            })
        })
    }
}

impl fmt::Display for PartialAut {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let parts: Vec<String> = self.domain().iter().map(|&a| format!("{a}->{}", self.img[a])).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// D_{g,h} for g, h indices of S¹.
pub fn domain_gh(w: &WithOne, g: usize, h: usize) -> Vec<usize> {
    let p = w.mul(g, h);
    (0..w.n).filter(|&a| w.mul(p, a) == a && w.mul(a, p) == a).collect()
}

pub fn phi_gh(w: &WithOne, g: usize, h: usize) -> PartialAut {
    let p = w.mul(g, h);
    let img = (0..w.n)
        .map(|a| {
            if w.mul(p, a) == a && w.mul(a, p) == a {
                w.mul(w.mul(h, a), g) as u32
            } else {
                UNDEF
            }
        })
        .collect();
    PartialAut { img }
}

/// The inverse monoid generated by all φ_{g,h}, g, h ∈ S¹.
#[derive(Debug, Clone)]
pub struct InnMonoid {
    elements: Vec<PartialAut>,
    index: HashMap<PartialAut, usize>,
    generators: Vec<usize>,
    sources: Vec<Option<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct InnSummary {
    pub order: usize,
    pub generators: usize,
    pub idempotents: usize,
    pub r_classes: usize,
    pub l_classes: usize,
    pub contains_empty: bool,
    pub contains_identity: bool,
    /// ((|domain|, |image|), count), sorted.
    pub shapes: Vec<((usize, usize), usize)>,
}

pub fn generate_inn(s: &CayleyTable) -> Result<InnMonoid> {
    bound("semigroup order", s.order(), MAX_SEMIGROUP)?;
    let w = WithOne::new(s);
    let k = w.len1();
    let per_g: Vec<Vec<(PartialAut, (usize, usize))>> = (0..k)
        .into_par_iter()
        .map(|g| {
            let mut seen = HashSet::new();
            let mut out = vec![];
            for h in 0..k {
                let p = phi_gh(&w, g, h);
                if seen.insert(p.clone()) {
                    out.push((p, (g, h)));
                }
            }
            out
        })
        .collect();
    let mut elements = vec![];
    let mut index = HashMap::new();
    let mut sources = vec![];
    for (p, src) in per_g.into_iter().flatten() {
        if !index.contains_key(&p) {
            index.insert(p.clone(), elements.len());
            elements.push(p);
            sources.push(Some(src));
        }
    }
    let generators: Vec<usize> = (0..elements.len()).collect();
    // φ_{g,h}⁻¹ = φ_{h,g}, so closing under products is enough
    let mut frontier = generators.clone();
    while !frontier.is_empty() {
        let products: Vec<PartialAut> = frontier
            .par_iter()
            .flat_map_iter(|&x| {
                let elems = &elements;
                let index = &index;
                generators.iter().filter_map(move |&y| {
                    let p = elems[x].then(&elems[y]);
                    (!index.contains_key(&p)).then_some(p)
                })
            })
            .collect();
        frontier.clear();
        for p in products {
            if !index.contains_key(&p) {
                index.insert(p.clone(), elements.len());
                frontier.push(elements.len());
                elements.push(p);
                sources.push(None);
                bound("Inn order", elements.len(), MAX_INN_ORDER)?;
            }
        }
    }
    Ok(InnMonoid {
        elements,
        index,
        generators,
        sources,
    })
}

impl InnMonoid {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[PartialAut] {
        &self.elements
    }

    pub fn index_of(&self, p: &PartialAut) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Indices of the distinct φ_{g,h}.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// A pair (g, h) of S¹ indices with φ_{g,h} equal to element `i`, if it is a generator.
    pub fn source(&self, i: usize) -> Option<(usize, usize)> {
        self.sources[i]
    }

    pub fn summary(&self) -> InnSummary {
        let mut shapes: HashMap<(usize, usize), usize> = HashMap::new();
        let mut doms = HashSet::new();
        let mut imgs = HashSet::new();
        for p in &self.elements {
            *shapes.entry((p.rank(), p.rank())).or_default() += 1;
            doms.insert(p.domain());
            imgs.insert(p.image());
        }
        let mut shapes: Vec<_> = shapes.into_iter().collect();
        shapes.sort();
        let size = self.elements.first().map_or(0, |p| p.size());
        InnSummary {
            order: self.order(),
            generators: self.generators.len(),
            idempotents: self.elements.iter().filter(|p| p.is_idempotent()).count(),
            r_classes: doms.len(),
            l_classes: imgs.len(),
            contains_empty: self.index.contains_key(&PartialAut::empty(size)),
            contains_identity: self.index.contains_key(&PartialAut::identity(size)),
            shapes,
        }
    }

    /// Cayley table of Inn(S) under "first, then" composition.
    pub fn table(&self) -> Result<CayleyTable> {
        bound("Inn order", self.order(), MAX_TABLE)?;
        let t = CayleyTable::from_fn(self.order(), |a, b| {
            self.index[&self.elements[a].then(&self.elements[b])]
        });
        Ok(t.with_labels(self.elements.iter().map(|p| p.to_string()).collect()))
    }
}

/// Counts of the φ_{g,h} on T_n, computed two ways.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Census {
    pub n: usize,
    /// Distinct φ_{g,h} over all (g, h) ∈ T_n².
    pub phi_count: usize,
    /// Of those, the ones whose domain has at least two elements.
    pub phi_large: usize,
    /// Admissible tuples (P, P', I, I', α, β) with |I| ≥ 2.
    pub tuple_count: usize,
    /// Maps between constants, plus the empty map when n ≠ 1.
    pub small_count: usize,
}

impl Census {
    pub fn agrees(&self) -> bool {
        self.phi_count == self.tuple_count + self.small_count && self.phi_large == self.tuple_count
    }
}

pub fn distinct_phis(s: &CayleyTable) -> Vec<PartialAut> {
    let w = WithOne::new(s);
    let k = w.len1();
    let sets: Vec<HashSet<PartialAut>> = (0..k)
        .into_par_iter()
        .map(|g| (0..k).map(|h| phi_gh(&w, g, h)).collect())
        .collect();
    let mut all: HashSet<PartialAut> = HashSet::new();
    for s in sets {
        all.extend(s);
    }
    let mut v: Vec<PartialAut> = all.into_iter().collect();
    v.sort();
    v
}

/// Set partitions of 0..n as block labels by first appearance.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    fn rec(i: usize, next: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=next {
            cur[i] = b;
            rec(i + 1, next.max(b + 1), cur, out);
        }
    }
    rec(0, 0, &mut vec![0; n], &mut out);
    out
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Number of tuples (P, P', I, I', α, β) with |I| = |I'| ≥ 2.
pub fn generator_tuple_count(n: usize) -> usize {
    // sections[(|P|, |I|)] = number of (P, I)
    let mut sections: HashMap<(usize, usize), usize> = HashMap::new();
    for p in set_partitions(n) {
        let blocks = p.iter().max().map_or(0, |m| m + 1);
        let sizes: Vec<usize> = (0..blocks).map(|b| p.iter().filter(|&&x| x == b).count()).collect();
        // per block: skip (if size ≥ 2) or pick one of its points
        let mut dist = vec![0usize; blocks + 1];
        dist[0] = 1;
        for &sz in &sizes {
            let mut nd = vec![0usize; blocks + 1];
            for k in 0..blocks {
                if dist[k] == 0 {
                    continue;
                }
                if sz >= 2 {
                    nd[k] += dist[k];
                }
                nd[k + 1] += dist[k] * sz;
            }
            if sz >= 2 {
                nd[blocks] += dist[blocks];
            }
            dist = nd;
        }
        for (k, &c) in dist.iter().enumerate() {
            if c > 0 {
                *sections.entry((blocks, k)).or_default() += c;
            }
        }
    }
    sections
        .iter()
        .filter(|(&(_, k), _)| k >= 2)
        .map(|(&(p, k), &c)| c * c * factorial(k) * factorial(p - k))
        .sum()
}

pub fn tn_generator_census(n: usize) -> Result<Census> {
    bound("n", n, 4)?;
    let m = TransformationMonoid::build(TransformKind::Full, n)?;
    let phis = distinct_phis(m.table());
    Ok(Census {
        n,
        phi_count: phis.len(),
        phi_large: phis.iter().filter(|p| p.rank() >= 2).count(),
        tuple_count: generator_tuple_count(n),
        small_count: n * n + (n != 1) as usize,
    })
}
