//! Partition, partial Brauer and Brauer diagrams.
//!
//! Points `0..n` are the top row and `n..2n` the bottom (primed) row, so `i'` is `n + i`.
//! Blocks are labelled in order of first appearance, which makes the encoding canonical.

use crate::conjugacy::{Conjugacy, RelationKind};
use crate::error::{parse_err, Error, Result};
use crate::io::bound;
use crate::semigroup::{permutations, CayleyTable};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub const MAX_ELEMENTS: usize = 5000;
/// Largest n accepted by the subset scan in P_n normalisation.
pub const MAX_NORMALIZE_N: usize = 16;
/// Cap on the number of column orderings tried when matching S_n-orbits.
pub const MAX_ORBIT_PERMUTATIONS: usize = 2_000_000;
const MAX_N: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Diagram {
    n: usize,
    blk: Vec<u16>,
}

fn canon(n: usize, roots: &[usize]) -> Diagram {
    let mut map: HashMap<usize, u16> = HashMap::with_capacity(2 * n);
    let blk = roots
        .iter()
        .map(|r| {
            let next = map.len() as u16;
            *map.entry(*r).or_insert(next)
        })
        .collect();
    Diagram { n, blk }
}

impl Diagram {
    /// Builds a diagram from blocks of points in `0..2n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        bound("diagram degree", n, MAX_N)?;
        let mut owner = vec![usize::MAX; 2 * n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidDiagram("empty block".into()));
            }
            for &p in block {
                if p >= 2 * n {
                    return Err(Error::InvalidDiagram(format!("point {} out of range", point_name(n, p))));
                }
                if owner[p] != usize::MAX {
                    return Err(Error::InvalidDiagram(format!("point {} repeated", point_name(n, p))));
                }
                owner[p] = b;
            }
        }
        if let Some(p) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidDiagram(format!("point {} missing", point_name(n, p))));
        }
        Ok(canon(n, &owner))
    }

    pub fn identity(n: usize) -> Self {
        let roots: Vec<usize> = (0..2 * n).map(|p| p % n.max(1)).collect();
        canon(n, &roots)
    }

    /// Every point in its own block.
    pub fn singletons(n: usize) -> Self {
        let roots: Vec<usize> = (0..2 * n).collect();
        canon(n, &roots)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[u16] {
        &self.blk
    }

    fn block_count(&self) -> usize {
        self.blk.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Blocks in label order, points ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]; self.block_count()];
        for (p, &l) in self.blk.iter().enumerate() {
            out[l as usize].push(p);
        }
        out
    }

    pub fn same_block(&self, p: usize, q: usize) -> bool {
        self.blk[p] == self.blk[q]
    }

    pub fn is_partial_brauer(&self) -> bool {
        self.blocks().iter().all(|b| b.len() <= 2)
    }

    pub fn is_brauer(&self) -> bool {
        self.blocks().iter().all(|b| b.len() == 2)
    }

    pub fn mul(&self, other: &Diagram) -> Result<Diagram> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(self.prod(other))
    }

    /// Glue the bottom row of `self` to the top row of `other`.
    pub(crate) fn prod(&self, other: &Diagram) -> Diagram {
        let n = self.n;
        let mut uf = UnionFind::<usize>::new(3 * n);
        let mut first = vec![usize::MAX; 2 * n];
        for (p, &l) in self.blk.iter().enumerate() {
            let f = &mut first[l as usize];
            if *f == usize::MAX {
                *f = p;
            } else {
                uf.union(*f, p);
            }
        }
        first.iter_mut().for_each(|f| *f = usize::MAX);
        for (q, &l) in other.blk.iter().enumerate() {
            let f = &mut first[l as usize];
            if *f == usize::MAX {
                *f = q + n;
            } else {
                uf.union(*f, q + n);
            }
        }
        let roots: Vec<usize> = (0..n)
            .chain(2 * n..3 * n)
            .map(|i| uf.find_mut(i))
            .collect();
        canon(n, &roots)
    }

    pub fn pow(&self, k: usize) -> Diagram {
        let mut r = Diagram::identity(self.n);
        for _ in 0..k {
            r = r.prod(self);
        }
        r
    }

    /// a^σ: column i moves to column σ(i), on both rows.
    pub fn permute(&self, sigma: &[usize]) -> Diagram {
        let n = self.n;
        let mut roots = vec![0usize; 2 * n];
        for i in 0..n {
            roots[sigma[i]] = self.blk[i] as usize;
            roots[n + sigma[i]] = self.blk[n + i] as usize;
        }
        canon(n, &roots)
    }

    /// Block labels that contain both a top and a bottom point.
    fn transversal_labels(&self) -> Vec<bool> {
        let mut top = vec![false; self.block_count()];
        let mut bot = vec![false; self.block_count()];
        for i in 0..self.n {
            top[self.blk[i] as usize] = true;
            bot[self.blk[self.n + i] as usize] = true;
        }
        top.iter().zip(&bot).map(|(a, b)| *a && *b).collect()
    }

    pub fn rank(&self) -> usize {
        self.transversal_labels().iter().filter(|&&t| t).count()
    }

    pub fn stats(&self) -> DiagramStats {
        let n = self.n;
        let trans = self.transversal_labels();
        let group = |off: usize| -> Vec<Vec<usize>> {
            let mut by: Vec<Vec<usize>> = vec![vec![]; trans.len()];
            for i in 0..n {
                by[self.blk[off + i] as usize].push(i);
            }
            let mut out: Vec<Vec<usize>> = by.into_iter().filter(|b| !b.is_empty()).collect();
            out.sort();
            out
        };
        let kernel = group(0);
        let cokernel = group(n);
        let domain: Vec<usize> = (0..n).filter(|&i| trans[self.blk[i] as usize]).collect();
        let codomain: Vec<usize> = (0..n).filter(|&i| trans[self.blk[n + i] as usize]).collect();
        let kernel_t = kernel.iter().filter(|b| trans[self.blk[b[0]] as usize]).cloned().collect();
        let cokernel_t = cokernel
            .iter()
            .filter(|b| trans[self.blk[n + b[0]] as usize])
            .cloned()
            .collect();
        DiagramStats {
            kernel,
            cokernel,
            domain,
            codomain,
            kernel_t,
            cokernel_t,
            rank: self.rank(),
        }
    }

    /// Classes of ker ∨ cokerˆ, as a column -> class map.
    fn join_classes(&self) -> Vec<usize> {
        let n = self.n;
        let mut uf = UnionFind::<usize>::new(n);
        // top-top and bottom-bottom links only; a transversal does not join its ends
        let mut first = vec![usize::MAX; 2 * self.block_count()];
        for p in 0..2 * n {
            let f = &mut first[2 * self.blk[p] as usize + usize::from(p >= n)];
            if *f == usize::MAX {
                *f = p % n;
            } else {
                uf.union(*f, p % n);
            }
        }
        (0..n).map(|i| uf.find_mut(i)).collect()
    }

    pub fn is_group_element(&self) -> bool {
        let n = self.n;
        let trans = self.transversal_labels();
        let cls = self.join_classes();
        let mut top: HashMap<usize, Vec<u16>> = HashMap::new();
        let mut bot: HashMap<usize, Vec<u16>> = HashMap::new();
        for i in 0..n {
            top.entry(cls[i]).or_default();
            bot.entry(cls[i]).or_default();
            if trans[self.blk[i] as usize] {
                top.get_mut(&cls[i]).unwrap().push(self.blk[i]);
            }
            if trans[self.blk[n + i] as usize] {
                bot.get_mut(&cls[i]).unwrap().push(self.blk[n + i]);
            }
        }
        top.keys().all(|c| {
            let mut t = top[c].clone();
            let mut b = bot[c].clone();
            t.sort_unstable();
            t.dedup();
            b.sort_unstable();
            b.dedup();
            (t.is_empty() && b.is_empty()) || (t.len() == 1 && b.len() == 1)
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.prod(self) == *self
    }

    /// Counts (k₁..k_m) of the permutation τ induced on transversal-meeting join classes.
    /// None when the diagram is not a group element.
    pub fn cycle_type(&self) -> Option<CycleType> {
        if !self.is_group_element() {
            return None;
        }
        let n = self.n;
        let trans = self.transversal_labels();
        let cls = self.join_classes();
        let mut tau: HashMap<usize, usize> = HashMap::new();
        let mut top_cls: HashMap<u16, usize> = HashMap::new();
        for i in 0..n {
            if trans[self.blk[i] as usize] {
                top_cls.insert(self.blk[i], cls[i]);
            }
        }
        for i in 0..n {
            let l = self.blk[n + i];
            if trans[l as usize] {
                tau.insert(top_cls[&l], cls[i]);
            }
        }
        let m = tau.len();
        let mut counts = vec![0usize; m];
        let mut seen: HashMap<usize, bool> = HashMap::new();
        let mut keys: Vec<usize> = tau.keys().copied().collect();
        keys.sort_unstable();
        for &start in &keys {
            if seen.contains_key(&start) {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen.contains_key(&x) {
                seen.insert(x, true);
                x = tau[&x];
                len += 1;
            }
            counts[len - 1] += 1;
        }
        Some(CycleType(counts))
    }

    /// The idempotent power a^ω.
    pub fn omega(&self) -> Diagram {
        let mut seen: HashMap<Diagram, usize> = HashMap::new();
        let mut powers: Vec<Diagram> = vec![];
        let mut x = self.clone();
        loop {
            if let Some(&j) = seen.get(&x) {
                let period = powers.len() - j;
                // powers[k] is a^(k+1); need the exponent that is a multiple of period and >= j+1
                let e = (j + 1).div_ceil(period) * period;
                return powers[e - 1].clone();
            }
            seen.insert(x.clone(), powers.len());
            powers.push(x.clone());
            x = x.prod(self);
        }
    }

    pub fn omega_plus_one(&self) -> Diagram {
        self.omega().prod(self)
    }

    pub fn cycle_type_omega_plus_one(&self) -> CycleType {
        self.omega_plus_one()
            .cycle_type()
            .expect("a^(ω+1) is a group element")
    }

    /// The diagram restricted to columns in `mask`: (label, top count, bottom count, leaking).
    fn sub_blocks(&self, mask: u64, sizes: &[usize]) -> Vec<(u16, usize, usize, bool)> {
        let n = self.n;
        let mut top = vec![0usize; sizes.len()];
        let mut bot = vec![0usize; sizes.len()];
        for i in (0..n).filter(|i| mask >> i & 1 == 1) {
            top[self.blk[i] as usize] += 1;
            bot[self.blk[n + i] as usize] += 1;
        }
        (0..sizes.len())
            .filter(|&l| top[l] + bot[l] > 0)
            .map(|l| (l as u16, top[l], bot[l], top[l] + bot[l] < sizes[l]))
            .collect()
    }

    fn connected_on(&self, mask: u64) -> bool {
        let n = self.n;
        let cols: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut uf = UnionFind::<usize>::new(n);
        let mut first = vec![usize::MAX; 2 * self.block_count()];
        for &i in &cols {
            for (side, p) in [(0, i), (1, n + i)] {
                let f = &mut first[2 * self.blk[p] as usize + side];
                if *f == usize::MAX {
                    *f = i;
                } else {
                    uf.union(*f, i);
                }
            }
        }
        cols.iter().all(|&i| uf.equiv(i, cols[0]))
    }

    /// Conjugators (g, h) of the first bridge rewrite that applies, scanning larger A first.
    fn p_bridge(&self) -> Option<(Diagram, Diagram)> {
        let mut out = None;
        self.visit_bridges(false, &mut |g, h| {
            out = Some((g, h));
            true
        });
        out
    }

    /// Feeds bridge rewrites to `visit` until it returns true. With `every_choice`, each y ∈ A
    /// and each admissible choice of s and t is offered, not only y = min A.
    fn visit_bridges(&self, every_choice: bool, visit: &mut dyn FnMut(Diagram, Diagram) -> bool) {
        let n = self.n;
        let sizes = {
            let mut s = vec![0usize; self.block_count()];
            self.blk.iter().for_each(|&l| s[l as usize] += 1);
            s
        };
        let mut masks: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() >= 2).collect();
        masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        for mask in masks {
            if !self.connected_on(mask) {
                continue;
            }
            let sub = self.sub_blocks(mask, &sizes);
            let trans: Vec<_> = sub.iter().filter(|b| b.1 > 0 && b.2 > 0).collect();
            let in_a = |i: usize| mask >> i & 1 == 1;
            let ys: Vec<usize> = if every_choice {
                (0..n).filter(|&i| in_a(i)).collect()
            } else {
                vec![mask.trailing_zeros() as usize]
            };
            match trans.len() {
                0 => {
                    let leak_top: Vec<u16> = sub.iter().filter(|b| b.1 > 0 && b.3).map(|b| b.0).collect();
                    let leak_bot: Vec<u16> = sub.iter().filter(|b| b.2 > 0 && b.3).map(|b| b.0).collect();
                    if leak_top.len() > 1 || leak_bot.len() > 1 {
                        continue;
                    }
                    for &y in &ys {
                        let tops: Vec<u16> = match leak_top.first() {
                            Some(&l) => vec![l],
                            None if every_choice => sub.iter().filter(|b| b.1 > 0).map(|b| b.0).collect(),
                            None => vec![self.blk[y]],
                        };
                        let bots: Vec<u16> = match leak_bot.first() {
                            Some(&l) => vec![l],
                            None if every_choice => sub.iter().filter(|b| b.2 > 0).map(|b| b.0).collect(),
                            None => vec![self.blk[n + y]],
                        };
                        for &s in &tops {
                            for &t in &bots {
                                let (g, h) = self.bridge_pair(&in_a, y, s, t);
                                if visit(g, h) {
                                    return;
                                }
                            }
                        }
                    }
                }
                1 => {
                    let s = trans[0].0;
                    if sub.iter().any(|b| b.0 != s && b.3) {
                        continue;
                    }
                    for &y in &ys {
                        let (g, h) = self.bridge_pair(&in_a, y, s, s);
                        if visit(g, h) {
                            return;
                        }
                    }
                }
                _ => continue,
            }
        }
    }

    /// A bridge or Brauer rewrite whose conjugators stay inside PB_n and satisfy g·h·b = b = b·g·h.
    fn pb_bridge(&self) -> Option<(Diagram, Diagram)> {
        let ok = |g: &Diagram, h: &Diagram| {
            g.is_partial_brauer()
                && h.is_partial_brauer()
                && g.prod(h).prod(self) == *self
                && self.prod(g).prod(h) == *self
                && h.prod(self).prod(g) != *self
        };
        let mut out = None;
        self.visit_bridges(true, &mut |g, h| {
            if ok(&g, &h) {
                out = Some((g, h));
                true
            } else {
                false
            }
        });
        if out.is_some() {
            return out;
        }
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if x != y && y != z && x != z {
                        let (g, h) = self.brauer_bridge((x, y, z));
                        if ok(&g, &h) {
                            return Some((g, h));
                        }
                    }
                }
            }
        }
        None
    }

    /// g and h from the bridge lemmas. With s = t this is the one-transversal case.
    fn bridge_pair(&self, in_a: &dyn Fn(usize) -> bool, y: usize, s: u16, t: u16) -> (Diagram, Diagram) {
        let n = self.n;
        let mut g: Vec<Vec<usize>> = vec![];
        let mut h: Vec<Vec<usize>> = vec![];
        let mut g_top: HashMap<u16, Vec<usize>> = HashMap::new();
        let mut h_bot: HashMap<u16, Vec<usize>> = HashMap::new();
        for i in 0..n {
            if in_a(i) {
                g_top.entry(self.blk[i]).or_default().push(i);
                h_bot.entry(self.blk[n + i]).or_default().push(n + i);
                if i != y {
                    g.push(vec![n + i]);
                    h.push(vec![i]);
                }
            } else {
                g.push(vec![i, n + i]);
                h.push(vec![i, n + i]);
            }
        }
        for (l, mut pts) in g_top {
            if l == s {
                pts.push(n + y);
            }
            g.push(pts);
        }
        for (l, mut pts) in h_bot {
            if l == t {
                pts.push(y);
            }
            h.push(pts);
        }
        if !g.iter().any(|b| b.contains(&(n + y))) {
            g.push(vec![n + y]);
        }
        if !h.iter().any(|b| b.contains(&y)) {
            h.push(vec![y]);
        }
        (
            Diagram::from_blocks(n, &g).expect("bridge conjugator g"),
            Diagram::from_blocks(n, &h).expect("bridge conjugator h"),
        )
    }

    /// Smallest (x, y, z) with {x,y} and {y',z'} blocks.
    fn brauer_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                if x == y || !self.same_block(x, y) {
                    continue;
                }
                for z in 0..n {
                    if z != x && z != y && self.same_block(n + y, n + z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn brauer_bridge(&self, (x, y, z): (usize, usize, usize)) -> (Diagram, Diagram) {
        let n = self.n;
        let rest = |fixed: &[usize]| -> Vec<Vec<usize>> {
            (0..n).filter(|i| !fixed.contains(i)).map(|i| vec![i, n + i]).collect()
        };
        let mut g = rest(&[x, y, z]);
        g.extend([vec![x, y], vec![z, n + z], vec![n + x, n + y]]);
        let mut h = rest(&[x, y, z]);
        h.extend([vec![x, y], vec![z, n + x], vec![n + y, n + z]]);
        (
            Diagram::from_blocks(n, &g).expect("Brauer conjugator g"),
            Diagram::from_blocks(n, &h).expect("Brauer conjugator h"),
        )
    }

    pub fn is_normal(&self, kind: DiagramKind) -> bool {
        let n = self.n;
        match kind {
            DiagramKind::Partition => self.p_bridge().is_none(),
            DiagramKind::PartialBrauer => {
                let trans = self.transversal_labels();
                self.blocks().iter().filter(|b| b.len() == 2).all(|b| {
                    let (p, q) = (b[0], b[1]);
                    let both_top = p < n && q < n;
                    let both_bot = p >= n && q >= n;
                    if both_top {
                        trans[self.blk[n + p] as usize] && trans[self.blk[n + q] as usize]
                    } else if both_bot {
                        trans[self.blk[p - n] as usize] && trans[self.blk[q - n] as usize]
                    } else {
                        true
                    }
                })
            }
            DiagramKind::Brauer => self.brauer_triple().is_none(),
        }
    }

    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

pub fn point_name(n: usize, p: usize) -> String {
    if p < n {
        format!("{}", p + 1)
    } else {
        format!("{}'", p - n + 1)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        if self.n > 0 {
            write!(f, " ")?;
        }
        for b in self.blocks() {
            let pts: Vec<String> = b.iter().map(|&p| point_name(self.n, p)).collect();
            write!(f, "{{{}}}", pts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s
            .split_once(';')
            .ok_or_else(|| parse_err(1, "diagram literal needs `n;` before the blocks"))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| parse_err(1, format!("bad degree `{}`", head.trim())))?;
        bound("diagram degree", n, MAX_N)?;
        let mut blocks = vec![];
        let mut rest = body.trim();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('{')
                .ok_or_else(|| parse_err(1, format!("expected `{{` at `{rest}`")))?;
            let close = inner
                .find('}')
                .ok_or_else(|| parse_err(1, "unclosed block"))?;
            let mut block = vec![];
            for tok in inner[..close].split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (num, primed) = match tok.strip_suffix('\'') {
                    Some(t) => (t.trim(), true),
                    None => (tok, false),
                };
                let v: usize = num
                    .parse()
                    .map_err(|_| parse_err(1, format!("bad point `{tok}`")))?;
                if v == 0 || v > n {
                    return Err(Error::InvalidDiagram(format!("point {tok} out of range")));
                }
                block.push(if primed { n + v - 1 } else { v - 1 });
            }
            blocks.push(block);
            rest = inner[close + 1..].trim_start();
        }
        Diagram::from_blocks(n, &blocks)
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    pub kernel: Vec<Vec<usize>>,
    pub cokernel: Vec<Vec<usize>>,
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    pub kernel_t: Vec<Vec<usize>>,
    pub cokernel_t: Vec<Vec<usize>>,
    pub rank: usize,
}

/// k_i = number of i-cycles; empty for rank 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn count(&self, i: usize) -> usize {
        self.0.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.0.iter().enumerate().map(|(i, k)| (i + 1) * k).sum()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DiagramKind {
    Partition,
    PartialBrauer,
    Brauer,
}

impl DiagramKind {
    pub fn contains(&self, d: &Diagram) -> bool {
        match self {
            DiagramKind::Partition => true,
            DiagramKind::PartialBrauer => d.is_partial_brauer(),
            DiagramKind::Brauer => d.is_brauer(),
        }
    }

    pub fn prefix(&self) -> &'static str {
        match self {
            DiagramKind::Partition => "P",
            DiagramKind::PartialBrauer => "PB",
            DiagramKind::Brauer => "B",
        }
    }

    pub fn name(&self, n: usize) -> String {
        format!("{}_{}", self.prefix(), n)
    }

    /// Number of elements of the monoid of degree n, saturating.
    pub fn count(&self, n: usize) -> u128 {
        let m = 2 * n;
        match self {
            DiagramKind::Partition => {
                // Bell numbers via the triangle
                let mut row = vec![1u128];
                for _ in 0..m {
                    let mut next = vec![*row.last().unwrap()];
                    for v in &row {
                        next.push(next.last().unwrap().saturating_add(*v));
                    }
                    row = next;
                }
                row[0]
            }
            DiagramKind::PartialBrauer => {
                // involution numbers: t(k) = t(k-1) + (k-1) t(k-2)
                let (mut a, mut b) = (1u128, 1u128);
                for k in 2..=m {
                    let c = b.saturating_add((k as u128 - 1).saturating_mul(a));
                    a = b;
                    b = c;
                }
                if m == 0 {
                    1
                } else {
                    b
                }
            }
            DiagramKind::Brauer => (1..m).step_by(2).fold(1u128, |acc, k| acc.saturating_mul(k as u128)),
        }
    }

    fn max_block(&self) -> usize {
        match self {
            DiagramKind::Partition => usize::MAX,
            _ => 2,
        }
    }
}

impl FromStr for DiagramKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "P" | "PARTITION" => Ok(DiagramKind::Partition),
            "PB" | "PARTIAL-BRAUER" => Ok(DiagramKind::PartialBrauer),
            "B" | "BRAUER" => Ok(DiagramKind::Brauer),
            _ => Err(parse_err(1, format!("unknown diagram kind `{s}`"))),
        }
    }
}

/// One rewrite b -> c = h·b·g with g·h·b = b = b·g·h.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub g: Diagram,
    pub h: Diagram,
    pub before: Diagram,
    pub after: Diagram,
}

impl RewriteStep {
    pub fn verify(&self) -> bool {
        let (b, g, h) = (&self.before, &self.g, &self.h);
        g.prod(h).prod(b) == *b && b.prod(g).prod(h) == *b && h.prod(b).prod(g) == self.after
    }
}

fn check_kind(kind: DiagramKind, a: &Diagram) -> Result<()> {
    if kind.contains(a) {
        Ok(())
    } else {
        Err(Error::InvalidDiagram(format!("{a} is not in {}", kind.name(a.n))))
    }
}

/// Rewrites `a` into its ∼n normal form, returning the recorded steps.
/// For PB_n only rewrites whose conjugators lie in PB_n are used, and the result need not
/// satisfy the PB normal-form predicate (some PB_3 classes have no such element).
pub fn normalize_n(a: &Diagram, kind: DiagramKind) -> Result<(Diagram, Vec<RewriteStep>)> {
    check_kind(kind, a)?;
    if kind != DiagramKind::Brauer {
        bound("diagram degree for normalisation", a.n, MAX_NORMALIZE_N)?;
    }
    let mut cur = a.clone();
    let mut steps = vec![];
    loop {
        let gh = match kind {
            DiagramKind::Brauer => cur.brauer_triple().map(|t| cur.brauer_bridge(t)),
            DiagramKind::PartialBrauer => cur.pb_bridge(),
            DiagramKind::Partition => cur.p_bridge(),
        };
        let Some((g, h)) = gh else {
            return Ok((cur, steps));
        };
        let next = h.prod(&cur).prod(&g);
        if next == cur || steps.len() > 4 * a.n * a.n + 8 {
            return Err(Error::InvalidDiagram(format!("normalisation of {a} does not terminate")));
        }
        steps.push(RewriteStep {
            g,
            h,
            before: cur,
            after: next.clone(),
        });
        cur = next;
    }
}

fn column_colours(d: &Diagram) -> Vec<usize> {
    let n = d.n;
    let blocks = d.blocks();
    let rank = |sigs: Vec<Vec<usize>>| -> Vec<usize> {
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
    };
    let mut col = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let mut sig = vec![col[i], usize::from(d.same_block(i, n + i))];
                for p in [i, n + i] {
                    let mut around: Vec<usize> = blocks[d.blk[p] as usize]
                        .iter()
                        .map(|&q| 2 * col[q % n] + usize::from(q >= n))
                        .collect();
                    around.sort_unstable();
                    sig.push(usize::MAX);
                    sig.extend(around);
                }
                sig
            })
            .collect();
        let next = rank(sigs);
        let count = next.iter().max().map_or(0, |m| m + 1);
        col = next;
        if count == classes {
            return col;
        }
        classes = count;
    }
}

/// Least encoding of a^σ over σ ∈ S_n, searching only colour-respecting σ.
pub fn orbit_canonical(d: &Diagram) -> Result<Diagram> {
    let n = d.n;
    let col = column_colours(d);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (col[i], i));
    let mut cells: Vec<Vec<usize>> = vec![];
    for &i in &order {
        match cells.last_mut() {
            Some(c) if col[c[0]] == col[i] => c.push(i),
            _ => cells.push(vec![i]),
        }
    }
    let mut total: usize = 1;
    for c in &cells {
        for k in 2..=c.len() {
            total = total.saturating_mul(k);
        }
    }
    bound("orbit search permutations", total, MAX_ORBIT_PERMUTATIONS)?;
    let cell_perms: Vec<Vec<Vec<usize>>> = cells.iter().map(|c| permutations(c.len())).collect();
    let mut starts = vec![0usize];
    for c in &cells {
        starts.push(starts.last().unwrap() + c.len());
    }
    let mut idx = vec![0usize; cells.len()];
    let mut sigma = vec![0usize; n];
    let mut best: Option<Diagram> = None;
    loop {
        for (c, cell) in cells.iter().enumerate() {
            let p = &cell_perms[c][idx[c]];
            for (k, &i) in cell.iter().enumerate() {
                sigma[i] = starts[c] + p[k];
            }
        }
        let cand = d.permute(&sigma);
        if best.as_ref().map_or(true, |b| cand.blk < b.blk) {
            best = Some(cand);
        }
        let mut c = 0;
        loop {
            if c == cells.len() {
                return Ok(best.unwrap_or_else(|| d.clone()));
            }
            idx[c] += 1;
            if idx[c] < cell_perms[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

fn same_degree(a: &Diagram, b: &Diagram) -> Result<()> {
    if a.n != b.n {
        Err(Error::SizeMismatch(a.n, b.n))
    } else {
        Ok(())
    }
}

pub fn conj_n(kind: DiagramKind, a: &Diagram, b: &Diagram) -> Result<bool> {
    same_degree(a, b)?;
    check_kind(kind, b)?;
    let (na, _) = normalize_n(a, kind)?;
    let (nb, _) = normalize_n(b, kind)?;
    if orbit_canonical(&na)? == orbit_canonical(&nb)? {
        return Ok(true);
    }
    if kind != DiagramKind::PartialBrauer {
        return Ok(false);
    }
    // PB-safe rewrites can stall before reaching a unique form; ∼n in P_n is necessary,
    // and the remaining cases are settled by searching PB_n for conjugators.
    let pa = orbit_canonical(&normalize_n(a, DiagramKind::Partition)?.0)?;
    let pb = orbit_canonical(&normalize_n(b, DiagramKind::Partition)?.0)?;
    if pa != pb {
        return Ok(false);
    }
    Ok(find_n_conjugators(kind, a, b)?.is_some())
}

/// Exhaustive search for (g, h) in the monoid with ag = gb, bh = ha, hag = b, gbh = a.
pub fn find_n_conjugators(kind: DiagramKind, a: &Diagram, b: &Diagram) -> Result<Option<(Diagram, Diagram)>> {
    same_degree(a, b)?;
    check_kind(kind, a)?;
    check_kind(kind, b)?;
    let elems = enumerate(kind, a.n)?;
    let gs: Vec<&Diagram> = elems.par_iter().filter(|g| a.prod(g) == g.prod(b)).collect();
    let hs: Vec<&Diagram> = elems.par_iter().filter(|h| b.prod(h) == h.prod(a)).collect();
    Ok(gs.par_iter().find_map_any(|g| {
        let bg = g.prod(b);
        hs.iter()
            .find(|h| h.prod(a).prod(g) == *b && bg.prod(h) == *a)
            .map(|h| ((*g).clone(), (*h).clone()))
    }))
}

/// Also ∼p* on these monoids.
pub fn conj_tr(a: &Diagram, b: &Diagram) -> Result<bool> {
    same_degree(a, b)?;
    Ok(a.cycle_type_omega_plus_one() == b.cycle_type_omega_plus_one())
}

pub fn conj_o(kind: DiagramKind, a: &Diagram, b: &Diagram) -> Result<bool> {
    same_degree(a, b)?;
    check_kind(kind, a)?;
    check_kind(kind, b)?;
    Ok(match kind {
        DiagramKind::Brauer => {
            let (ka, kb) = (a.cycle_type_omega_plus_one(), b.cycle_type_omega_plus_one());
            (1..=a.n).step_by(2).all(|i| ka.count(i) % 2 == kb.count(i) % 2)
        }
        _ => true,
    })
}

fn c_exceptional(kind: DiagramKind, n: usize) -> bool {
    matches!(
        (kind, n),
        (DiagramKind::Partition, 1) | (DiagramKind::PartialBrauer, 1) | (DiagramKind::Brauer, 2)
    )
}

pub fn conj_c(kind: DiagramKind, a: &Diagram, b: &Diagram) -> Result<bool> {
    if c_exceptional(kind, a.n) {
        same_degree(a, b)?;
        let m = DiagramMonoid::build(kind, a.n)?;
        let (ia, ib) = (m.index_of_checked(a)?, m.index_of_checked(b)?);
        let rel = Conjugacy::new(m.table()).relation(RelationKind::C)?;
        return Ok(rel.get(ia, ib));
    }
    conj_o(kind, a, b)
}

/// Every diagram of the kind, sorted.
pub fn enumerate(kind: DiagramKind, n: usize) -> Result<Vec<Diagram>> {
    let count = kind.count(n);
    bound("diagram monoid order", count.min(usize::MAX as u128) as usize, MAX_ELEMENTS)?;
    let mut out = Vec::with_capacity(count as usize);
    let mut labels = vec![0usize; 2 * n];
    let mut sizes: Vec<usize> = vec![];
    fill(kind, n, 0, &mut labels, &mut sizes, &mut out);
    out.sort();
    Ok(out)
}

fn fill(
    kind: DiagramKind,
    n: usize,
    p: usize,
    labels: &mut Vec<usize>,
    sizes: &mut Vec<usize>,
    out: &mut Vec<Diagram>,
) {
    if p == 2 * n {
        if kind != DiagramKind::Brauer || sizes.iter().all(|&s| s == 2) {
            out.push(canon(n, labels));
        }
        return;
    }
    // Brauer: an open block must still be completable
    if kind == DiagramKind::Brauer {
        let open = sizes.iter().filter(|&&s| s == 1).count();
        if open > 2 * n - p {
            return;
        }
    }
    for l in 0..=sizes.len() {
        if l == sizes.len() {
            sizes.push(1);
        } else if sizes[l] < kind.max_block() {
            sizes[l] += 1;
        } else {
            continue;
        }
        labels[p] = l;
        fill(kind, n, p + 1, labels, sizes, out);
        if sizes[l] == 1 {
            sizes.pop();
        } else {
            sizes[l] -= 1;
        }
    }
}

/// P_n, PB_n or B_n with its Cayley table; element indices follow sorted order.
pub struct DiagramMonoid {
    kind: DiagramKind,
    n: usize,
    elems: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
    table: CayleyTable,
}

impl DiagramMonoid {
    pub fn build(kind: DiagramKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotSquare);
        }
        let elems = enumerate(kind, n)?;
        let index: HashMap<Diagram, usize> =
            elems.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let size = elems.len();
        let flat: Vec<u32> = (0..size * size)
            .into_par_iter()
            .map(|k| index[&elems[k / size].prod(&elems[k % size])] as u32)
            .collect();
        let table = CayleyTable::from_trusted(size, flat)
            .with_labels(elems.iter().map(|d| d.to_string()).collect());
        Ok(DiagramMonoid {
            kind,
            n,
            elems,
            index,
            table,
        })
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Diagram] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &Diagram {
        &self.elems[i]
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn index_of_checked(&self, d: &Diagram) -> Result<usize> {
        self.index_of(d)
            .ok_or_else(|| Error::InvalidDiagram(format!("{d} is not in {}", self.kind.name(self.n))))
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }
}

/// R-related per kernel data, L-related per cokernel data.
pub fn r_related(a: &Diagram, b: &Diagram) -> bool {
    let (sa, sb) = (a.stats(), b.stats());
    sa.kernel == sb.kernel && sa.kernel_t == sb.kernel_t
}

pub fn l_related(a: &Diagram, b: &Diagram) -> bool {
    let (sa, sb) = (a.stats(), b.stats());
    sa.cokernel == sb.cokernel && sa.cokernel_t == sb.cokernel_t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn worked_product() {
        let a = d("5; {1,3}{2,4'}{1',2'}{3',4,5}{5'}");
        let b = d("5; {1}{2,1'}{3,2'}{4,5,3'}{4',5'}");
        assert_eq!(a.mul(&b).unwrap(), d("5; {1,3}{2,3'}{4,5,2'}{1'}{4',5'}"));
    }

    #[test]
    fn literal_round_trip() {
        let a = d("5; {1,3}{2,4'}{1',2'}{3',4,5}{5'}");
        assert_eq!(a.to_string().parse::<Diagram>().unwrap(), a);
        assert!("3; {1,2}{3}".parse::<Diagram>().is_err());
        assert!("2; {1,1'}{1,2}{2'}".parse::<Diagram>().is_err());
        assert!("2 {1}".parse::<Diagram>().is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(DiagramKind::Partition.count(2), 15);
        assert_eq!(DiagramKind::Partition.count(3), 203);
        assert_eq!(DiagramKind::Brauer.count(4), 105);
        assert_eq!(DiagramKind::PartialBrauer.count(2), 10);
        for (k, n) in [
            (DiagramKind::Partition, 2),
            (DiagramKind::Partition, 3),
            (DiagramKind::Brauer, 3),
            (DiagramKind::Brauer, 4),
            (DiagramKind::PartialBrauer, 3),
        ] {
            assert_eq!(enumerate(k, n).unwrap().len() as u128, k.count(n));
        }
        assert!(matches!(
            enumerate(DiagramKind::Partition, 5),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Diagram::identity(3).cycle_type_omega_plus_one(), CycleType(vec![3, 0, 0]));
        let t = d("3; {1,2'}{2,1'}{3,3'}");
        assert!(t.is_group_element() && !t.is_idempotent());
        assert_eq!(t.cycle_type_omega_plus_one(), CycleType(vec![1, 1, 0]));
        assert_eq!(Diagram::singletons(3).cycle_type_omega_plus_one().to_string(), "(0)");
        assert!(Diagram::singletons(3).is_group_element());
    }
}
