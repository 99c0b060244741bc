//! Definition-level deciders for the conjugacy relations on a finite semigroup.
//!
//! Conjugators range over S¹. When S has no identity the adjoined one has
//! index `S.order()`.

use crate::epigroup::EpigroupData;
use crate::error::{Error, Result};
use crate::green::GreenData;
use crate::relation::{Partition, Relation};
use crate::semigroup::{CayleyTable, WithOne};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationKind {
    G,
    N,
    P,
    PStar,
    O,
    C,
    W,
    Tr,
    Lin,
    I,
    IStar,
}

impl RelationKind {
    pub const ALL: [RelationKind; 11] = [
        RelationKind::G,
        RelationKind::N,
        RelationKind::P,
        RelationKind::PStar,
        RelationKind::O,
        RelationKind::C,
        RelationKind::W,
        RelationKind::Tr,
        RelationKind::Lin,
        RelationKind::I,
        RelationKind::IStar,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RelationKind::G => "g",
            RelationKind::N => "n",
            RelationKind::P => "p",
            RelationKind::PStar => "pstar",
            RelationKind::O => "o",
            RelationKind::C => "c",
            RelationKind::W => "w",
            RelationKind::Tr => "tr",
            RelationKind::Lin => "lin",
            RelationKind::I => "i",
            RelationKind::IStar => "istar",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        RelationKind::ALL
            .into_iter()
            .find(|k| k.tag() == t || (t == "p*" && *k == RelationKind::PStar) || (t == "i*" && *k == RelationKind::IStar))
            .ok_or_else(|| Error::RelationUnsupported(format!("unknown relation tag {s:?}")))
    }
}

/// Conjugators are indices into S¹.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    PairGH { g: usize, h: usize },
    /// (u₁,v₁),…,(u_k,v_k) with a = u₁v₁, vᵢuᵢ = uᵢ₊₁vᵢ₊₁, v_k u_k = b.
    Chain(Vec<(usize, usize)>),
    SinglePower { g: usize, h: usize, m: usize },
    UnitG { g: usize },
    /// Word g₁⋯g_k conjugating by g_k⁻¹⋯g₁⁻¹ a g₁⋯g_k.
    IChain(Vec<usize>),
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassPartition {
    pub relation: RelationKind,
    pub classes: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Inclusion {
    Equal,
    Subset,
    Superset,
    Incomparable,
}

impl Inclusion {
    pub fn symbol(self) -> &'static str {
        match self {
            Inclusion::Equal => "=",
            Inclusion::Subset => "⊆",
            Inclusion::Superset => "⊇",
            Inclusion::Incomparable => "||",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum InverseKind {
    Unique,
    Commuting,
}

pub struct Conjugacy {
    s: CayleyTable,
    one: WithOne,
    /// epigroup data of S¹ (covers S)
    epi: EpigroupData,
    green: OnceLock<GreenData>,
    inverse_kind: OnceLock<Option<InverseKind>>,
    cache: [OnceLock<Relation>; 11],
}

impl Conjugacy {
    pub fn new(s: &CayleyTable) -> Self {
        let one = WithOne::new(s);
        let epi = EpigroupData::new(&one.s1);
        Conjugacy {
            s: s.clone(),
            one,
            epi,
            green: OnceLock::new(),
            inverse_kind: OnceLock::new(),
            cache: Default::default(),
        }
    }

    pub fn semigroup(&self) -> &CayleyTable {
        &self.s
    }

    pub fn with_one(&self) -> &WithOne {
        &self.one
    }

    pub fn epigroup(&self) -> &EpigroupData {
        &self.epi
    }

    pub fn green(&self) -> &GreenData {
        self.green.get_or_init(|| GreenData::new(&self.s))
    }

    #[inline]
    fn n(&self) -> usize {
        self.s.order()
    }

    #[inline]
    fn m1(&self) -> usize {
        self.one.len1()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.one.mul(a, b)
    }

    #[inline]
    fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.n() {
            Ok(())
        } else {
            Err(Error::NoSuchElement(a))
        }
    }

    fn inverse_kind(&self) -> Option<InverseKind> {
        *self.inverse_kind.get_or_init(|| {
            if self.s.is_completely_regular() {
                Some(InverseKind::Commuting)
            } else if self.s.is_inverse_semigroup() {
                Some(InverseKind::Unique)
            } else {
                None
            }
        })
    }

    /// g⁻¹ for the ∼i relation: the unique inverse, or the commuting inverse on
    /// completely regular semigroups. The adjoined identity maps to itself.
    pub fn i_inverse(&self, g: usize) -> Result<usize> {
        let kind = self.inverse_kind().ok_or_else(|| {
            Error::RelationUnsupported("i".into())
        })?;
        if g >= self.n() {
            return Ok(g);
        }
        Ok(match kind {
            InverseKind::Commuting => self.epi.pseudo_inverse(g),
            InverseKind::Unique => self.s.inverses(g)[0],
        })
    }

    /// The set 𝔭(a) of admissible conjugators for ∼c, as a membership vector over S¹.
    pub fn frak_p(&self, a: usize) -> Vec<bool> {
        let m1 = self.m1();
        let mut ok = vec![false; m1];
        let z = match self.s.zero() {
            None => return vec![true; m1],
            Some(z) => z,
        };
        if a == z {
            ok[self.one.one] = true;
            return ok;
        }
        let left: Vec<usize> = {
            let mut seen = vec![false; m1];
            for m in 0..m1 {
                let x = self.mul(m, a);
                if x != z {
                    seen[x] = true;
                }
            }
            (0..m1).filter(|&x| seen[x]).collect()
        };
        for (g, slot) in ok.iter_mut().enumerate() {
            *slot = left.iter().all(|&x| self.mul(x, g) != z);
        }
        ok
    }

    // ---------------------------------------------------------------- verify

    /// Re-checks a witness by table lookups.
    pub fn verify(&self, rel: RelationKind, a: usize, b: usize, w: &Witness) -> bool {
        let n = self.n();
        let m1 = self.m1();
        if a >= n || b >= n {
            return false;
        }
        let in1 = |x: usize| x < m1;
        match (rel, w) {
            (RelationKind::G, Witness::UnitG { g }) => {
                in1(*g)
                    && self.units1().contains(g)
                    && self.mul(a, *g) == self.mul(*g, b)
            }
            (RelationKind::N, Witness::PairGH { g, h }) => {
                let (g, h) = (*g, *h);
                in1(g)
                    && in1(h)
                    && self.mul(a, g) == self.mul(g, b)
                    && self.mul(b, h) == self.mul(h, a)
                    && self.mul3(h, a, g) == b
                    && self.mul3(g, b, h) == a
            }
            (RelationKind::P, Witness::Chain(c)) if c.len() == 1 => {
                let (u, v) = c[0];
                in1(u) && in1(v) && self.mul(u, v) == a && self.mul(v, u) == b
            }
            (RelationKind::PStar, Witness::Chain(c)) => {
                if c.is_empty() {
                    return a == b;
                }
                if c.iter().any(|&(u, v)| !in1(u) || !in1(v)) {
                    return false;
                }
                if self.mul(c[0].0, c[0].1) != a {
                    return false;
                }
                for w in c.windows(2) {
                    if self.mul(w[0].1, w[0].0) != self.mul(w[1].0, w[1].1) {
                        return false;
                    }
                }
                let (u, v) = *c.last().unwrap();
                self.mul(v, u) == b
            }
            (RelationKind::O, Witness::PairGH { g, h }) => {
                in1(*g) && in1(*h) && self.mul(a, *g) == self.mul(*g, b) && self.mul(b, *h) == self.mul(*h, a)
            }
            (RelationKind::C, Witness::PairGH { g, h }) => {
                self.verify(RelationKind::O, a, b, w) && self.frak_p(a)[*g] && self.frak_p(b)[*h]
            }
            (RelationKind::W, Witness::SinglePower { g, h, m }) => {
                let (g, h, m) = (*g, *h, *m);
                m >= 1
                    && in1(g)
                    && in1(h)
                    && self.mul(a, g) == self.mul(g, b)
                    && self.mul(b, h) == self.mul(h, a)
                    && self.mul(g, h) == self.s.power(a, m)
                    && self.mul(h, g) == self.s.power(b, m)
            }
            (RelationKind::Tr, Witness::PairGH { g, h }) => {
                let (g, h) = (*g, *h);
                in1(g)
                    && in1(h)
                    && self.mul(a, g) == self.mul(g, b)
                    && self.mul(b, h) == self.mul(h, a)
                    && self.mul(g, h) == self.epi.omega(a)
                    && self.mul(h, g) == self.epi.omega(b)
            }
            (RelationKind::Lin, Witness::PairGH { .. }) => {
                self.verify(RelationKind::Tr, a, b, w) && self.powers_d_related(a, b)
            }
            (RelationKind::I, Witness::PairGH { g, h }) => {
                in1(*g)
                    && self.i_inverse(*g).ok() == Some(*h)
                    && self.mul3(*h, a, *g) == b
                    && self.mul3(*g, b, *h) == a
            }
            (RelationKind::IStar, Witness::IChain(gs)) => {
                if gs.iter().any(|&g| !in1(g)) {
                    return false;
                }
                let Some((w, wi)) = self.word_pair(gs) else {
                    return false;
                };
                self.mul3(wi, a, w) == b && self.mul3(w, b, wi) == a
            }
            _ => false,
        }
    }

    fn units1(&self) -> Vec<usize> {
        self.one.s1.units()
    }

    /// a^k D b^k for k = 1..2·|S|.
    pub fn powers_d_related(&self, a: usize, b: usize) -> bool {
        let d = &self.green().d;
        let (mut x, mut y) = (a, b);
        for _ in 0..2 * self.n() {
            if !d.same(x, y) {
                return false;
            }
            x = self.s.mul(x, a);
            y = self.s.mul(y, b);
        }
        true
    }

    // ---------------------------------------------------------------- decide

    pub fn decide(&self, rel: RelationKind, a: usize, b: usize) -> Result<Option<Witness>> {
        self.check(a)?;
        self.check(b)?;
        let m1 = self.m1();
        let w = match rel {
            RelationKind::G => self
                .units1()
                .into_iter()
                .find(|&g| self.mul(a, g) == self.mul(g, b))
                .map(|g| Witness::UnitG { g }),
            RelationKind::N => self.search_pair(a, b, |g, h| {
                self.mul3(h, a, g) == b && self.mul3(g, b, h) == a
            }),
            RelationKind::P => (0..m1)
                .flat_map(|u| (0..m1).map(move |v| (u, v)))
                .find(|&(u, v)| self.mul(u, v) == a && self.mul(v, u) == b)
                .map(|p| Witness::Chain(vec![p])),
            RelationKind::PStar => self.pstar_chain(a, b),
            RelationKind::O => self.search_pair(a, b, |_, h| self.mul(b, h) == self.mul(h, a)),
            RelationKind::C => {
                let pa = self.frak_p(a);
                let pb = self.frak_p(b);
                self.search_pair(a, b, |g, h| pa[g] && pb[h] && self.mul(b, h) == self.mul(h, a))
            }
            RelationKind::W => self.w_witness(a, b),
            RelationKind::Tr => {
                let (ea, eb) = (self.epi.omega(a), self.epi.omega(b));
                self.search_pair(a, b, |g, h| {
                    self.mul(b, h) == self.mul(h, a) && self.mul(g, h) == ea && self.mul(h, g) == eb
                })
            }
            RelationKind::Lin => {
                if !self.powers_d_related(a, b) {
                    None
                } else {
                    self.decide(RelationKind::Tr, a, b)?
                }
            }
            RelationKind::I => {
                let mut found = None;
                for g in 0..m1 {
                    let gi = self.i_inverse(g)?;
                    if self.mul3(gi, a, g) == b && self.mul3(g, b, gi) == a {
                        found = Some(Witness::PairGH { g, h: gi });
                        break;
                    }
                }
                found
            }
            RelationKind::IStar => self.istar_chain(a, b)?,
        };
        if let Some(w) = &w {
            debug_assert!(self.verify(rel, a, b, w), "{rel} witness {w:?} for ({a},{b})");
        }
        Ok(w)
    }

    /// Lexicographic search over (g,h) with ag = gb and `rest(g,h)`.
    fn search_pair(&self, a: usize, b: usize, rest: impl Fn(usize, usize) -> bool) -> Option<Witness> {
        let m1 = self.m1();
        for g in 0..m1 {
            if self.mul(a, g) != self.mul(g, b) {
                continue;
            }
            for h in 0..m1 {
                if rest(g, h) {
                    return Some(Witness::PairGH { g, h });
                }
            }
        }
        None
    }

    fn power_pairs(&self, a: usize, b: usize) -> Vec<(usize, usize, usize)> {
        let mut seen = HashMap::new();
        let (mut x, mut y, mut m) = (a, b, 1);
        let mut out = vec![];
        while seen.insert((x, y), m).is_none() {
            out.push((x, y, m));
            x = self.s.mul(x, a);
            y = self.s.mul(y, b);
            m += 1;
        }
        out
    }

    fn w_witness(&self, a: usize, b: usize) -> Option<Witness> {
        let m1 = self.m1();
        for (x, y, m) in self.power_pairs(a, b) {
            for g in 0..m1 {
                if self.mul(a, g) != self.mul(g, b) {
                    continue;
                }
                for h in 0..m1 {
                    if self.mul(g, h) == x && self.mul(h, g) == y && self.mul(b, h) == self.mul(h, a) {
                        return Some(Witness::SinglePower { g, h, m });
                    }
                }
            }
        }
        None
    }

    fn p_step(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        let m1 = self.m1();
        (0..m1)
            .flat_map(|u| (0..m1).map(move |v| (u, v)))
            .find(|&(u, v)| self.mul(u, v) == x && self.mul(v, u) == y)
    }

    fn bfs_path(&self, rel: &Relation, a: usize, b: usize) -> Option<Vec<usize>> {
        let n = self.n();
        let mut prev = vec![usize::MAX; n];
        prev[a] = a;
        let mut q = VecDeque::from([a]);
        while let Some(x) = q.pop_front() {
            if x == b {
                let mut path = vec![b];
                let mut c = b;
                while c != a {
                    c = prev[c];
                    path.push(c);
                }
                path.reverse();
                return Some(path);
            }
            for y in rel.row(x) {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    q.push_back(y);
                }
            }
        }
        None
    }

    fn pstar_chain(&self, a: usize, b: usize) -> Option<Witness> {
        let p = self.relation(RelationKind::P).ok()?;
        let path = self.bfs_path(&p, a, b)?;
        if path.len() == 1 {
            // a = a·1 and 1·a = a
            return Some(Witness::Chain(vec![(a, self.one.one)]));
        }
        let steps = path.windows(2).map(|w| self.p_step(w[0], w[1])).collect::<Option<Vec<_>>>()?;
        Some(Witness::Chain(steps))
    }

    /// (g₁⋯g_k, g_k⁻¹⋯g₁⁻¹) for a word of conjugators.
    fn word_pair(&self, gs: &[usize]) -> Option<(usize, usize)> {
        let (mut w, mut wi) = (self.one.one, self.one.one);
        for &g in gs {
            let gi = self.i_inverse(g).ok()?;
            w = self.mul(w, g);
            wi = self.mul(gi, wi);
        }
        Some((w, wi))
    }

    /// All pairs (g₁⋯g_k, g_k⁻¹⋯g₁⁻¹), each with a shortest word producing it.
    fn word_pairs(&self) -> Result<Vec<((usize, usize), Vec<usize>)>> {
        let m1 = self.m1();
        let inv: Vec<usize> = (0..m1).map(|g| self.i_inverse(g)).collect::<Result<_>>()?;
        let start = (self.one.one, self.one.one);
        let mut word: HashMap<(usize, usize), Vec<usize>> = HashMap::from([(start, vec![])]);
        let mut order = vec![start];
        let mut q = VecDeque::from([start]);
        while let Some((w, wi)) = q.pop_front() {
            for g in 0..m1 {
                let next = (self.mul(w, g), self.mul(inv[g], wi));
                if !word.contains_key(&next) {
                    let mut v = word[&(w, wi)].clone();
                    v.push(g);
                    word.insert(next, v);
                    order.push(next);
                    q.push_back(next);
                }
            }
        }
        Ok(order.into_iter().map(|p| (p, word[&p].clone())).collect())
    }

    fn istar_chain(&self, a: usize, b: usize) -> Result<Option<Witness>> {
        for ((w, wi), gs) in self.word_pairs()? {
            if self.mul3(wi, a, w) == b && self.mul3(w, b, wi) == a {
                return Ok(Some(Witness::IChain(gs)));
            }
        }
        Ok(None)
    }

    // ---------------------------------------------------------------- relations

    /// The full relation as a bit matrix on S.
    pub fn relation(&self, rel: RelationKind) -> Result<Relation> {
        if matches!(rel, RelationKind::I | RelationKind::IStar) && self.inverse_kind().is_none() {
            return Err(Error::RelationUnsupported(rel.tag().into()));
        }
        Ok(self.cache[rel.slot()].get_or_init(|| self.compute(rel)).clone())
    }

    fn compute(&self, rel: RelationKind) -> Relation {
        let n = self.n();
        match rel {
            RelationKind::G => {
                let units = self.units1();
                let mut r = Relation::empty(n);
                for &g in &units {
                    let gi = self.one.s1.group_inverse(g).unwrap();
                    for a in 0..n {
                        r.set(a, self.mul3(gi, a, g));
                    }
                }
                r
            }
            RelationKind::N => self.compute_n(),
            RelationKind::P => {
                let m1 = self.m1();
                let mut r = Relation::empty(n);
                for u in 0..m1 {
                    for v in 0..m1 {
                        let (x, y) = (self.mul(u, v), self.mul(v, u));
                        if x < n && y < n {
                            r.set(x, y);
                        }
                    }
                }
                r
            }
            RelationKind::PStar => {
                let p = self.relation(RelationKind::P).unwrap();
                Relation::from_partition(&p.equivalence_closure())
            }
            RelationKind::O => self.compute_intertwine(false),
            RelationKind::C => {
                if self.s.zero().is_none() {
                    self.relation(RelationKind::O).unwrap()
                } else {
                    self.compute_intertwine(true)
                }
            }
            RelationKind::W => self.compute_w(),
            RelationKind::Tr => self.compute_tr(),
            RelationKind::Lin => {
                let tr = self.relation(RelationKind::Tr).unwrap();
                Relation::from_fn(n, |a, b| tr.get(a, b) && self.powers_d_related(a, b))
            }
            RelationKind::I => {
                let m1 = self.m1();
                let inv: Vec<usize> = (0..m1).map(|g| self.i_inverse(g).unwrap()).collect();
                let mut r = Relation::empty(n);
                for g in 0..m1 {
                    for a in 0..n {
                        let b = self.mul3(inv[g], a, g);
                        if b < n && self.mul3(g, b, inv[g]) == a {
                            r.set(a, b);
                        }
                    }
                }
                r
            }
            RelationKind::IStar => {
                let pairs = self.word_pairs().unwrap();
                let mut r = Relation::empty(n);
                for ((w, wi), _) in pairs {
                    for a in 0..n {
                        let b = self.mul3(wi, a, w);
                        if b < n && self.mul3(w, b, wi) == a {
                            r.set(a, b);
                        }
                    }
                }
                r
            }
        }
    }

    /// a ∼n b iff b = hag for some (g,h) with a ∈ D_{g,h}.
    fn compute_n(&self) -> Relation {
        let n = self.n();
        let m1 = self.m1();
        let fix: Vec<Vec<u32>> = (0..m1)
            .into_par_iter()
            .map(|x| {
                (0..n)
                    .filter(|&a| self.mul(x, a) == a && self.mul(a, x) == a)
                    .map(|a| a as u32)
                    .collect()
            })
            .collect();
        (0..m1)
            .into_par_iter()
            .with_min_len(16)
            .fold(
                || Relation::empty(n),
                |mut r, g| {
                    for h in 0..m1 {
                        for &a in &fix[self.mul(g, h)] {
                            let a = a as usize;
                            r.set(a, self.mul3(h, a, g));
                        }
                    }
                    r
                },
            )
            .reduce(
                || Relation::empty(n),
                |mut x, y| {
                    x.union_with(&y);
                    x
                },
            )
    }

    /// ∃g: ag = gb (restricted to g ∈ 𝔭(a) when `restrict`), symmetrised.
    fn compute_intertwine(&self, restrict: bool) -> Relation {
        let n = self.n();
        let m1 = self.m1();
        let frak: Vec<Vec<bool>> = if restrict {
            (0..n).into_par_iter().map(|a| self.frak_p(a)).collect()
        } else {
            vec![]
        };
        let left = (0..m1)
            .into_par_iter()
            .with_min_len(16)
            .fold(
                || Relation::empty(n),
                |mut r, g| {
                    // pre[c] = {b : gb = c}
                    let mut pre: Vec<Vec<u32>> = vec![vec![]; m1];
                    for b in 0..n {
                        pre[self.mul(g, b)].push(b as u32);
                    }
                    for a in 0..n {
                        if restrict && !frak[a][g] {
                            continue;
                        }
                        for &b in &pre[self.mul(a, g)] {
                            r.set(a, b as usize);
                        }
                    }
                    r
                },
            )
            .reduce(
                || Relation::empty(n),
                |mut x, y| {
                    x.union_with(&y);
                    x
                },
            );
        left.intersect(&left.transpose())
    }

    fn compute_tr(&self) -> Relation {
        let n = self.n();
        let m1 = self.m1();
        let mut by_omega: Vec<Vec<usize>> = vec![vec![]; m1];
        for a in 0..n {
            by_omega[self.epi.omega(a)].push(a);
        }
        (0..m1)
            .into_par_iter()
            .fold(
                || Relation::empty(n),
                |mut r, g| {
                    for h in 0..m1 {
                        let (x, y) = (self.mul(g, h), self.mul(h, g));
                        for &a in &by_omega[x] {
                            let ag = self.mul(a, g);
                            for &b in &by_omega[y] {
                                if ag == self.mul(g, b) && self.mul(b, h) == self.mul(h, a) {
                                    r.set(a, b);
                                }
                            }
                        }
                    }
                    r
                },
            )
            .reduce(
                || Relation::empty(n),
                |mut x, y| {
                    x.union_with(&y);
                    x
                },
            )
    }

    fn compute_w(&self) -> Relation {
        let n = self.n();
        let m1 = self.m1();
        let mut by_pair: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for g in 0..m1 {
            for h in 0..m1 {
                let (x, y) = (self.mul(g, h), self.mul(h, g));
                if x < n && y < n {
                    by_pair.entry((x, y)).or_default().push((g, h));
                }
            }
        }
        Relation::from_fn(n, |a, b| {
            self.power_pairs(a, b).into_iter().any(|(x, y, _)| {
                by_pair.get(&(x, y)).is_some_and(|l| {
                    l.iter()
                        .any(|&(g, h)| self.mul(a, g) == self.mul(g, b) && self.mul(b, h) == self.mul(h, a))
                })
            })
        })
    }

    // ---------------------------------------------------------------- classes

    pub fn classes(&self, rel: RelationKind) -> Result<ClassPartition> {
        let p = self.partition(rel)?;
        Ok(ClassPartition {
            relation: rel,
            representatives: p.representatives(),
            classes: p.classes,
        })
    }

    /// Equivalence closure of the relation.
    pub fn partition(&self, rel: RelationKind) -> Result<Partition> {
        Ok(self.relation(rel)?.equivalence_closure())
    }

    pub fn compare(&self, rels: &[RelationKind]) -> Result<Vec<Vec<Inclusion>>> {
        let mats = rels.iter().map(|&r| self.relation(r)).collect::<Result<Vec<_>>>()?;
        Ok(mats
            .iter()
            .map(|x| {
                mats.iter()
                    .map(|y| match (x.is_subset(y), y.is_subset(x)) {
                        (true, true) => Inclusion::Equal,
                        (true, false) => Inclusion::Subset,
                        (false, true) => Inclusion::Superset,
                        (false, false) => Inclusion::Incomparable,
                    })
                    .collect()
            })
            .collect())
    }

    // ---------------------------------------------------------------- witnesses

    /// ḡ = (gh)^ω g, h̄ = h(gh)′.
    pub fn normalize_witness(&self, a: usize, b: usize, g: usize, h: usize) -> Result<(usize, usize)> {
        let w = Witness::PairGH { g, h };
        if !self.verify(RelationKind::N, a, b, &w) {
            return Err(Error::InvalidWitness(format!("({g},{h}) for ({a},{b})")));
        }
        let x = self.mul(g, h);
        let gb = self.mul(self.epi.omega(x), g);
        let hb = self.mul(h, self.epi.pseudo_inverse(x));
        debug_assert!(self.verify(RelationKind::N, a, b, &Witness::PairGH { g: gb, h: hb }));
        Ok((gb, hb))
    }

    /// Single conjugator g with ag = gb, g⁰a = a, bg⁰ = b (completely regular case).
    pub fn cr_single_conjugator(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.m1()).find(|&g| {
            let g0 = self.epi.omega(g);
            self.mul(a, g) == self.mul(g, b) && self.mul(g0, a) == a && self.mul(b, g0) == b
        })
    }

    /// D_{g,h} = {a ∈ S : gh·a = a = a·gh}.
    pub fn domain_gh(&self, g: usize, h: usize) -> Vec<usize> {
        let x = self.mul(g, h);
        (0..self.n())
            .filter(|&a| self.mul(x, a) == a && self.mul(a, x) == a)
            .collect()
    }

    /// S¹ product, exposed for witness checks.
    pub fn mul1(&self, a: usize, b: usize) -> usize {
        self.mul(a, b)
    }

    pub fn one(&self) -> usize {
        self.one.one
    }

    pub fn label1(&self, x: usize) -> String {
        if x < self.n() {
            self.s.label(x)
        } else {
            "1".into()
        }
    }
}
