//! Partial transformations of {0,..,n-1}, their functional digraphs, and the
//! digraph-based ∼n deciders for P_n, T_n, I_n, O_n, OI_n and T(X,Y).
//!
//! Maps compose left to right: `a.then(b)` sends x to (x a) b.
//! Points are 0-based in the API; the literal format `[4,4,4,5,5,6]` is 1-based
//! with `-` for undefined.

use crate::error::{parse_err, Error, Result};
use crate::io::bound;
use crate::semigroup::CayleyTable;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub const UNDEF: u32 = u32::MAX;

/// Largest monoid `TransformationMonoid::build` will tabulate.
pub const MAX_ELEMENTS: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartialMap {
    img: Vec<u32>,
}

impl PartialMap {
    pub fn new(img: &[Option<usize>]) -> Result<Self> {
        let n = img.len();
        let mut v = Vec::with_capacity(n);
        for (x, y) in img.iter().enumerate() {
            match *y {
                None => v.push(UNDEF),
                Some(y) if y < n => v.push(y as u32),
                Some(y) => {
                    return Err(Error::IndexOutOfRange {
                        row: x,
                        col: 0,
                        value: y,
                        order: n,
                    })
                }
            }
        }
        Ok(PartialMap { img: v })
    }

    /// Full map from 0-based images. Panics if an image is out of range.
    pub fn full(img: &[usize]) -> Self {
        let n = img.len();
        assert!(img.iter().all(|&y| y < n));
        PartialMap {
            img: img.iter().map(|&y| y as u32).collect(),
        }
    }

    pub(crate) fn from_raw(img: Vec<u32>) -> Self {
        PartialMap { img }
    }

    pub fn identity(n: usize) -> Self {
        PartialMap {
            img: (0..n as u32).collect(),
        }
    }

    pub fn empty(n: usize) -> Self {
        PartialMap { img: vec![UNDEF; n] }
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    pub fn raw(&self) -> &[u32] {
        &self.img
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        match self.img[x] {
            UNDEF => None,
            y => Some(y as usize),
        }
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.img[x] != UNDEF).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        for &y in &self.img {
            if y != UNDEF {
                seen[y as usize] = true;
            }
        }
        (0..self.n()).filter(|&y| seen[y]).collect()
    }

    /// dom ∪ ima, sorted.
    pub fn span(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        for (x, &y) in self.img.iter().enumerate() {
            if y != UNDEF {
                seen[x] = true;
                seen[y as usize] = true;
            }
        }
        (0..self.n()).filter(|&x| seen[x]).collect()
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_full(&self) -> bool {
        self.img.iter().all(|&y| y != UNDEF)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.n()];
        for &y in &self.img {
            if y != UNDEF {
                if seen[y as usize] {
                    return false;
                }
                seen[y as usize] = true;
            }
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.n()
    }

    pub fn is_permutation(&self) -> bool {
        self.is_full() && self.is_injective()
    }

    /// x ≤ y in dom ⇒ xα ≤ yα.
    pub fn is_order_preserving(&self) -> bool {
        let v: Vec<u32> = self.img.iter().copied().filter(|&y| y != UNDEF).collect();
        v.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_order_preserving_injective(&self) -> bool {
        let v: Vec<u32> = self.img.iter().copied().filter(|&y| y != UNDEF).collect();
        v.windows(2).all(|w| w[0] < w[1])
    }

    pub fn image_within(&self, y: &[usize]) -> bool {
        let mut inside = vec![false; self.n()];
        for &p in y {
            if p < self.n() {
                inside[p] = true;
            }
        }
        self.img.iter().all(|&v| v == UNDEF || inside[v as usize])
    }

    /// First self, then `other`.
    pub fn then(&self, other: &PartialMap) -> PartialMap {
        assert_eq!(self.n(), other.n());
        PartialMap {
            img: self
                .img
                .iter()
                .map(|&y| if y == UNDEF { UNDEF } else { other.img[y as usize] })
                .collect(),
        }
    }

    pub fn pow(&self, k: usize) -> PartialMap {
        let mut r = PartialMap::identity(self.n());
        for _ in 0..k {
            r = r.then(self);
        }
        r
    }

    /// Inverse of a partial injection.
    pub fn inverse(&self) -> Result<PartialMap> {
        if !self.is_injective() {
            return Err(Error::NotInjective);
        }
        let mut img = vec![UNDEF; self.n()];
        for (x, &y) in self.img.iter().enumerate() {
            if y != UNDEF {
                img[y as usize] = x as u32;
            }
        }
        Ok(PartialMap { img })
    }

    /// The map x σ ↦ (x α) σ, i.e. σ⁻¹ α σ for a permutation σ (given as images).
    pub fn relabel(&self, sigma: &[usize]) -> PartialMap {
        let mut img = vec![UNDEF; self.n()];
        for (x, &y) in self.img.iter().enumerate() {
            if y != UNDEF {
                img[sigma[x]] = sigma[y as usize] as u32;
            }
        }
        PartialMap { img }
    }

    /// rank(αᵏ) for k = 1..=kmax.
    pub fn rank_sequence(&self, kmax: usize) -> Vec<usize> {
        let mut p = self.clone();
        let mut out = Vec::with_capacity(kmax);
        for _ in 0..kmax {
            out.push(p.rank());
            p = p.then(self);
        }
        out
    }

    pub fn digraph(&self) -> FunctionalDigraph {
        let span = self.span();
        let mut present = vec![false; self.n()];
        for &x in &span {
            present[x] = true;
        }
        FunctionalDigraph {
            present,
            next: self.img.clone(),
        }
    }

    /// Γ(α) with every point outside the span added as an isolated vertex.
    pub fn extended_digraph(&self) -> FunctionalDigraph {
        FunctionalDigraph {
            present: vec![true; self.n()],
            next: self.img.clone(),
        }
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .img
            .iter()
            .map(|&y| if y == UNDEF { "-".into() } else { (y + 1).to_string() })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for PartialMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| parse_err(1, format!("expected [..], found {t:?}")))?;
        if inner.trim().is_empty() {
            return Ok(PartialMap { img: vec![] });
        }
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let n = parts.len();
        let mut img = Vec::with_capacity(n);
        for p in parts {
            if p == "-" {
                img.push(UNDEF);
                continue;
            }
            let v: usize = p
                .parse()
                .map_err(|_| parse_err(1, format!("bad image {p:?}")))?;
            if v == 0 || v > n {
                return Err(parse_err(1, format!("image {v} outside 1..{n}")));
            }
            img.push((v - 1) as u32);
        }
        Ok(PartialMap { img })
    }
}

/// Out-degree ≤ 1 digraph on a subset of {0,..,n-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalDigraph {
    present: Vec<bool>,
    next: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Markers {
    pub initial: bool,
    pub bottom_initial: bool,
    pub terminal: bool,
}

/// Isomorphism-invariant code of a functional digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm(pub String);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FunctionalDigraph {
    /// Builds a digraph from a vertex set and edges; fails if a vertex has two out-edges
    /// or an edge leaves the vertex set.
    pub fn from_edges(n: usize, vertices: &[usize], edges: &[(usize, usize)]) -> Result<Self> {
        let mut present = vec![false; n];
        for &v in vertices {
            if v >= n {
                return Err(Error::NoSuchElement(v));
            }
            present[v] = true;
        }
        let mut next = vec![UNDEF; n];
        for &(x, y) in edges {
            if x >= n || y >= n || !present[x] || !present[y] {
                return Err(Error::NoSuchElement(x.max(y)));
            }
            if next[x] != UNDEF {
                return Err(parse_err(1, format!("vertex {x} has two out-edges")));
            }
            next[x] = y as u32;
        }
        Ok(FunctionalDigraph { present, next })
    }

    pub fn n(&self) -> usize {
        self.present.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.present[v]
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.present[v]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn succ(&self, v: usize) -> Option<usize> {
        let y = self.next[v];
        (self.present[v] && y != UNDEF && self.present[y as usize]).then_some(y as usize)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .filter_map(|x| self.succ(x).map(|y| (x, y)))
            .collect()
    }

    fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for (_, y) in self.edges() {
            d[y] += 1;
        }
        d
    }

    pub fn preimages(&self, y: usize) -> Vec<usize> {
        (0..self.n()).filter(|&z| self.succ(z) == Some(y)).collect()
    }

    pub fn markers(&self) -> Vec<Option<Markers>> {
        let indeg = self.in_degrees();
        // targets with a non-initial predecessor
        let mut fed = vec![false; self.n()];
        for (x, y) in self.edges() {
            if indeg[x] > 0 {
                fed[y] = true;
            }
        }
        (0..self.n())
            .map(|v| {
                self.present[v].then(|| {
                    let initial = indeg[v] == 0;
                    Markers {
                        initial,
                        bottom_initial: initial && self.succ(v).map_or(true, |y| !fed[y]),
                        terminal: self.succ(v).is_none(),
                    }
                })
            })
            .collect()
    }

    pub fn is_initial(&self, v: usize) -> bool {
        self.present[v] && !(0..self.n()).any(|z| self.succ(z) == Some(v))
    }

    /// Sets yα⁻¹ for the targets y of bottom-initial vertices, ordered by y.
    pub fn initial_bundles(&self) -> Vec<Vec<usize>> {
        let m = self.markers();
        let mut targets: Vec<usize> = (0..self.n())
            .filter(|&v| m[v].map_or(false, |k| k.bottom_initial))
            .filter_map(|v| self.succ(v))
            .collect();
        targets.sort_unstable();
        targets.dedup();
        targets.into_iter().map(|y| self.preimages(y)).collect()
    }

    pub fn induced(&self, keep: &[bool]) -> FunctionalDigraph {
        FunctionalDigraph {
            present: (0..self.n()).map(|v| self.present[v] && keep[v]).collect(),
            next: self.next.clone(),
        }
    }

    /// Removes all initial vertices.
    pub fn prune(&self) -> FunctionalDigraph {
        let indeg = self.in_degrees();
        let keep: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
        self.induced(&keep)
    }

    /// Keeps the least vertex of each initial bundle and drops every other initial vertex.
    pub fn trim(&self) -> FunctionalDigraph {
        let indeg = self.in_degrees();
        let mut keep: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
        for b in self.initial_bundles() {
            keep[b[0]] = true;
        }
        self.induced(&keep)
    }

    /// Subgraph induced by the vertices lying on cycles.
    pub fn cycle_subgraph(&self) -> FunctionalDigraph {
        let on = self.on_cycle();
        self.induced(&on)
    }

    fn on_cycle(&self) -> Vec<bool> {
        let n = self.n();
        // 0 unvisited, 1 on current walk, 2 done
        let mut state = vec![0u8; n];
        let mut on = vec![false; n];
        for s in 0..n {
            if !self.present[s] || state[s] != 0 {
                continue;
            }
            let mut path = vec![];
            let mut v = Some(s);
            while let Some(x) = v {
                if state[x] != 0 {
                    if state[x] == 1 {
                        let pos = path.iter().position(|&p| p == x).unwrap();
                        for &p in &path[pos..] {
                            on[p] = true;
                        }
                    }
                    break;
                }
                state[x] = 1;
                path.push(x);
                v = self.succ(x);
            }
            for p in path {
                state[p] = 2;
            }
        }
        on
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.n();
        let on = self.on_cycle();
        let mut children: Vec<Vec<usize>> = vec![vec![]; n];
        for (x, y) in self.edges() {
            if !on[x] {
                children[y].push(x);
            }
        }
        // leaves first
        let mut pending: Vec<usize> = children.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..n)
            .filter(|&v| self.present[v] && pending[v] == 0)
            .collect();
        let mut code: Vec<Option<String>> = vec![None; n];
        while let Some(v) = stack.pop() {
            let mut cs: Vec<&str> = children[v]
                .iter()
                .map(|&c| code[c].as_deref().unwrap())
                .collect();
            cs.sort_unstable();
            code[v] = Some(format!("({})", cs.concat()));
            if !on[v] {
                if let Some(y) = self.succ(v) {
                    pending[y] -= 1;
                    if pending[y] == 0 {
                        stack.push(y);
                    }
                }
            }
        }
        let mut comps: Vec<String> = vec![];
        let mut seen = vec![false; n];
        for v in 0..n {
            if !self.present[v] {
                continue;
            }
            if !on[v] && self.succ(v).is_none() {
                comps.push(format!("T{}", code[v].as_ref().unwrap()));
            } else if on[v] && !seen[v] {
                let mut cyc = vec![];
                let mut x = v;
                loop {
                    seen[x] = true;
                    cyc.push(code[x].clone().unwrap());
                    x = self.succ(x).unwrap();
                    if x == v {
                        break;
                    }
                }
                let best = (0..cyc.len())
                    .map(|r| {
                        let mut s = String::new();
                        for i in 0..cyc.len() {
                            s.push_str(&cyc[(r + i) % cyc.len()]);
                        }
                        s
                    })
                    .min()
                    .unwrap();
                comps.push(format!("C{}", best));
            }
        }
        comps.sort_unstable();
        CanonicalForm(comps.join("|"))
    }

    pub fn is_isomorphic(&self, other: &FunctionalDigraph) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Relabels the vertex set onto `targets` (same size) by the order isomorphism.
    pub fn relabel_onto(&self, targets: &[usize]) -> Option<FunctionalDigraph> {
        let vs = self.vertices();
        if vs.len() != targets.len() {
            return None;
        }
        let n = self.n().max(targets.iter().map(|&t| t + 1).max().unwrap_or(0));
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let mut present = vec![false; n];
        let mut next = vec![UNDEF; n];
        for (i, &v) in vs.iter().enumerate() {
            present[targets[i]] = true;
            if let Some(y) = self.succ(v) {
                next[targets[i]] = targets[pos[y]] as u32;
            }
        }
        Some(FunctionalDigraph { present, next })
    }

    /// Equality of vertex sets and edge sets.
    pub fn same_graph(&self, other: &FunctionalDigraph) -> bool {
        self.vertices() == other.vertices() && self.edges() == other.edges()
    }
}

fn same_n(a: &PartialMap, b: &PartialMap) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(())
}

/// ∼n in P_n and T_n: Γ^p(α) ≅ Γ^p(β).
pub fn conj_n_full(a: &PartialMap, b: &PartialMap) -> Result<bool> {
    same_n(a, b)?;
    Ok(a.digraph().prune().is_isomorphic(&b.digraph().prune()))
}

/// ∼n in I_n: Γ(α) ≅ Γ(β).
pub fn conj_n_injective(a: &PartialMap, b: &PartialMap) -> Result<bool> {
    same_n(a, b)?;
    if !a.is_injective() || !b.is_injective() {
        return Err(Error::NotInjective);
    }
    Ok(a.digraph().is_isomorphic(&b.digraph()))
}

/// ∼n among surjective full maps: Γ(α) ≅ Γ(β).
pub fn conj_n_surjective(a: &PartialMap, b: &PartialMap) -> Result<bool> {
    same_n(a, b)?;
    if !a.is_full() || !b.is_full() {
        return Err(Error::NotFull);
    }
    if !a.is_surjective() || !b.is_surjective() {
        return Err(Error::NotSurjective);
    }
    Ok(a.digraph().is_isomorphic(&b.digraph()))
}

/// ∼n in T(X,Y).
pub fn conj_n_txy(a: &PartialMap, b: &PartialMap, y: &[usize]) -> Result<bool> {
    same_n(a, b)?;
    if !a.is_full() || !b.is_full() {
        return Err(Error::NotFull);
    }
    if !a.image_within(y) || !b.image_within(y) {
        return Err(Error::ImageNotInY);
    }
    if a == b {
        return Ok(true);
    }
    let meets = |m: &PartialMap| {
        m.digraph()
            .initial_bundles()
            .iter()
            .all(|z| z.iter().any(|p| y.contains(p)))
    };
    Ok(conj_n_full(a, b)? && meets(a) && meets(b))
}

/// ∼n in O_n: the order bijection between prune vertex sets carries edges onto edges.
pub fn conj_n_on(a: &PartialMap, b: &PartialMap) -> Result<bool> {
    same_n(a, b)?;
    if !a.is_full() || !b.is_full() {
        return Err(Error::NotFull);
    }
    if !a.is_order_preserving() || !b.is_order_preserving() {
        return Err(Error::NotOrderPreserving);
    }
    let (pa, pb) = (a.digraph().prune(), b.digraph().prune());
    Ok(pa
        .relabel_onto(&pb.vertices())
        .map_or(false, |r| r.same_graph(&pb)))
}

/// ∼n in OI_n: the order bijection between spans carries Γ(α) onto Γ(β).
pub fn conj_n_oin(a: &PartialMap, b: &PartialMap) -> Result<bool> {
    same_n(a, b)?;
    if !a.is_order_preserving_injective() || !b.is_order_preserving_injective() {
        return Err(Error::NotOrderPreservingInjective);
    }
    let (ga, gb) = (a.digraph(), b.digraph());
    Ok(ga
        .relabel_onto(&gb.vertices())
        .map_or(false, |r| r.same_graph(&gb)))
}

/// The ∼n class of α in OI_n, by substituting every k-subchain for span(α).
pub fn class_oin(a: &PartialMap) -> Result<Vec<PartialMap>> {
    if !a.is_order_preserving_injective() {
        return Err(Error::NotOrderPreservingInjective);
    }
    let n = a.n();
    let span = a.span();
    let g = a.digraph();
    let mut out = vec![];
    for sub in k_subsets(n, span.len()) {
        let r = g.relabel_onto(&sub).unwrap();
        let mut img = vec![UNDEF; n];
        for (x, y) in r.edges() {
            img[x] = y as u32;
        }
        out.push(PartialMap { img });
    }
    out.sort();
    Ok(out)
}

/// All k-element subsets of {0,..,n-1} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    if k <= n {
        go(0, n, k, &mut vec![], &mut out);
    }
    out
}

/// Conjugacy by permutation: Γᵉ(α) ≅ Γᵉ(β).
pub fn conj_by_permutation(a: &PartialMap, b: &PartialMap) -> Result<bool> {
    same_n(a, b)?;
    Ok(a.extended_digraph().is_isomorphic(&b.extended_digraph()))
}

fn lin_by_ranks(a: &PartialMap, b: &PartialMap) -> bool {
    let k = 2 * a.n().max(1);
    a.rank_sequence(k) == b.rank_sequence(k)
        && a.digraph().cycle_subgraph().is_isomorphic(&b.digraph().cycle_subgraph())
}

/// ∼lin in T_n: equal rank sequences and isomorphic cycle subgraphs.
pub fn conj_lin_tn(a: &PartialMap, b: &PartialMap) -> Result<bool> {
    same_n(a, b)?;
    if !a.is_full() || !b.is_full() {
        return Err(Error::NotFull);
    }
    Ok(lin_by_ranks(a, b))
}

/// ∼lin in P_n, same criterion as in T_n.
pub fn conj_lin_pn(a: &PartialMap, b: &PartialMap) -> Result<bool> {
    same_n(a, b)?;
    Ok(lin_by_ranks(a, b))
}

/// ∼lin in I_n coincides with conjugacy by permutation.
pub fn conj_lin_in(a: &PartialMap, b: &PartialMap) -> Result<bool> {
    same_n(a, b)?;
    if !a.is_injective() || !b.is_injective() {
        return Err(Error::NotInjective);
    }
    conj_by_permutation(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TransformKind {
    Full,
    Partial,
    Injective,
    OrderPreserving,
    OrderPreservingInjective,
    /// T(X,Y): full maps with image inside Y.
    ImageIn(Vec<usize>),
}

impl TransformKind {
    pub fn contains(&self, a: &PartialMap) -> bool {
        match self {
            TransformKind::Full => a.is_full(),
            TransformKind::Partial => true,
            TransformKind::Injective => a.is_injective(),
            TransformKind::OrderPreserving => a.is_full() && a.is_order_preserving(),
            TransformKind::OrderPreservingInjective => a.is_order_preserving_injective(),
            TransformKind::ImageIn(y) => a.is_full() && a.image_within(y),
        }
    }

    pub fn name(&self, n: usize) -> String {
        match self {
            TransformKind::Full => format!("T_{n}"),
            TransformKind::Partial => format!("P_{n}"),
            TransformKind::Injective => format!("I_{n}"),
            TransformKind::OrderPreserving => format!("O_{n}"),
            TransformKind::OrderPreservingInjective => format!("OI_{n}"),
            TransformKind::ImageIn(y) => {
                let ys: Vec<String> = y.iter().map(|p| (p + 1).to_string()).collect();
                format!("T({n},{{{}}})", ys.join(","))
            }
        }
    }

    /// The digraph decider for ∼n inside this monoid.
    pub fn conj_n(&self, a: &PartialMap, b: &PartialMap) -> Result<bool> {
        match self {
            TransformKind::Full | TransformKind::Partial => conj_n_full(a, b),
            TransformKind::Injective => conj_n_injective(a, b),
            TransformKind::OrderPreserving => conj_n_on(a, b),
            TransformKind::OrderPreservingInjective => conj_n_oin(a, b),
            TransformKind::ImageIn(y) => conj_n_txy(a, b, y),
        }
    }

    fn count(&self, n: usize) -> usize {
        let p = |b: usize| (b as f64).powi(n as i32);
        let c = match self {
            TransformKind::Full | TransformKind::OrderPreserving => p(n),
            TransformKind::ImageIn(y) => p(y.len()),
            _ => p(n + 1),
        };
        c.min(usize::MAX as f64) as usize
    }
}

/// A transformation monoid realised as a Cayley table (left-to-right composition).
#[derive(Clone, Debug)]
pub struct TransformationMonoid {
    kind: TransformKind,
    n: usize,
    elems: Vec<PartialMap>,
    index: HashMap<PartialMap, usize>,
    table: CayleyTable,
}

fn code(img: &[u32], n: usize) -> usize {
    img.iter()
        .rev()
        .fold(0, |acc, &y| acc * (n + 1) + if y == UNDEF { 0 } else { y as usize + 1 })
}

impl TransformationMonoid {
    pub fn build(kind: TransformKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotSquare);
        }
        if let TransformKind::ImageIn(y) = &kind {
            if y.is_empty() || y.iter().any(|&p| p >= n) {
                return Err(Error::ImageNotInY);
            }
        }
        // candidates are enumerated before filtering, so bound that count too
        bound("candidate maps", kind.count(n), 8 * MAX_ELEMENTS)?;
        let full_only = !matches!(
            kind,
            TransformKind::Partial | TransformKind::Injective | TransformKind::OrderPreservingInjective
        );
        let mut elems = vec![];
        let mut cur = vec![0u32; n];
        let choices: Vec<u32> = if full_only {
            (0..n as u32).collect()
        } else {
            (0..n as u32).chain([UNDEF]).collect()
        };
        enumerate_maps(&choices, 0, &mut cur, &mut |img| {
            let m = PartialMap::from_raw(img.to_vec());
            if kind.contains(&m) {
                elems.push(m);
            }
        });
        bound("monoid order", elems.len(), MAX_ELEMENTS)?;
        Ok(Self::from_elements(kind, n, elems))
    }

    fn from_elements(kind: TransformKind, n: usize, mut elems: Vec<PartialMap>) -> Self {
        elems.sort();
        let size = elems.len();
        let mut lookup = vec![u32::MAX; (n + 1).pow(n as u32)];
        for (i, e) in elems.iter().enumerate() {
            lookup[code(e.raw(), n)] = i as u32;
        }
        let flat: Vec<u32> = (0..size * size)
            .into_par_iter()
            .map(|k| {
                let (a, b) = (&elems[k / size], &elems[k % size]);
                let c = a.then(b);
                let i = lookup[code(c.raw(), n)];
                assert!(i != u32::MAX, "transformation set is not closed");
                i
            })
            .collect();
        let table = CayleyTable::from_trusted(size, flat)
            .with_labels(elems.iter().map(|e| e.to_string()).collect());
        let index: HashMap<PartialMap, usize> =
            elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        TransformationMonoid {
            kind,
            n,
            elems,
            index,
            table,
        }
    }

    pub fn kind(&self) -> &TransformKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[PartialMap] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &PartialMap {
        &self.elems[i]
    }

    pub fn index_of(&self, a: &PartialMap) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    /// Canonical forms of the prunes, one per element; equal forms ⇔ ∼n in P_n / T_n.
    pub fn prune_forms(&self) -> Vec<CanonicalForm> {
        self.elems
            .par_iter()
            .map(|e| e.digraph().prune().canonical_form())
            .collect()
    }
}

fn enumerate_maps(choices: &[u32], i: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i == cur.len() {
        f(cur);
        return;
    }
    for &c in choices {
        cur[i] = c;
        enumerate_maps(choices, i + 1, cur, f);
    }
}
