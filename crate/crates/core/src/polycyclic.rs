//! The polycyclic monoid P_n: every nonzero element is y·x⁻¹ with y, x words over p₁..p_n.

use crate::error::{parse_err, Error, Result};
use crate::io::bound;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Largest ball radius for the brute-force oracle.
pub const MAX_ORACLE_RADIUS: usize = 8;
/// Largest number of elements in an oracle ball.
pub const MAX_BALL: usize = 60_000;

pub type Word = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyElement {
    Zero,
    /// y·x⁻¹
    Nonzero { y: Word, x: Word },
}

use PolyElement::{Nonzero, Zero};

fn is_prefix(p: &[u8], w: &[u8]) -> bool {
    p.len() <= w.len() && &w[..p.len()] == p
}

impl PolyElement {
    pub fn one() -> Self {
        Nonzero { y: vec![], x: vec![] }
    }

    pub fn new(y: Word, x: Word) -> Self {
        Nonzero { y, x }
    }

    /// p_i, 0-based letter.
    pub fn gen(i: u8) -> Self {
        Nonzero { y: vec![i], x: vec![] }
    }

    /// p_i⁻¹, 0-based letter.
    pub fn gen_inv(i: u8) -> Self {
        Nonzero { y: vec![], x: vec![i] }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Zero)
    }

    /// |y| + |x|, and 1 for the zero.
    pub fn len(&self) -> usize {
        match self {
            Zero => 1,
            Nonzero { y, x } => y.len() + x.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max_letter(&self) -> Option<u8> {
        match self {
            Zero => None,
            Nonzero { y, x } => y.iter().chain(x).copied().max(),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Zero => Zero,
            Nonzero { y, x } => Nonzero {
                y: x.clone(),
                x: y.clone(),
            },
        }
    }

    pub fn mul(&self, other: &PolyElement) -> PolyElement {
        let (Nonzero { y, x }, Nonzero { y: v, x: u }) = (self, other) else {
            return Zero;
        };
        if is_prefix(x, v) {
            let mut w = y.clone();
            w.extend_from_slice(&v[x.len()..]);
            Nonzero { y: w, x: u.clone() }
        } else if is_prefix(v, x) {
            let mut w = u.clone();
            w.extend_from_slice(&x[v.len()..]);
            Nonzero { y: y.clone(), x: w }
        } else {
            Zero
        }
    }

    /// Strips the longest common prefix of y and x.
    pub fn cyclic_reduce(&self) -> PolyElement {
        match self {
            Zero => Zero,
            Nonzero { y, x } => {
                let k = y.iter().zip(x).take_while(|(a, b)| a == b).count();
                Nonzero {
                    y: y[k..].to_vec(),
                    x: x[k..].to_vec(),
                }
            }
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match self {
            Zero => true,
            Nonzero { y, x } => y.first().is_none() || y.first() != x.first(),
        }
    }

    /// Normal form of x⁻¹y.
    pub fn rho(&self) -> PolyElement {
        match self {
            Zero => Zero,
            Nonzero { y, x } => PolyElement::new(vec![], x.clone()).mul(&PolyElement::new(y.clone(), vec![])),
        }
    }

    /// In A* (x empty).
    pub fn is_positive(&self) -> bool {
        matches!(self, Nonzero { x, .. } if x.is_empty())
    }

    /// In (A⁻¹)* (y empty).
    pub fn is_negative(&self) -> bool {
        matches!(self, Nonzero { y, .. } if y.is_empty())
    }

    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

fn word_str(w: &[u8]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|c| format!("p{}", c + 1)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Zero => write!(f, "0"),
            Nonzero { y, x } if x.is_empty() => write!(f, "{}", word_str(y)),
            Nonzero { y, x } => write!(f, "{} / {}", word_str(y), word_str(x)),
        }
    }
}

fn parse_word(s: &str) -> Result<Word> {
    let mut w = vec![];
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let k: usize = tok
            .strip_prefix('p')
            .and_then(|d| d.parse().ok())
            .filter(|&k| (1..=255).contains(&k))
            .ok_or_else(|| parse_err(1, format!("bad generator '{tok}'")))?;
        w.push((k - 1) as u8);
    }
    Ok(w)
}

impl FromStr for PolyElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Zero);
        }
        let (y, x) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        Ok(Nonzero {
            y: parse_word(y)?,
            x: parse_word(x)?,
        })
    }
}

/// Parses an element and checks its letters are below n.
pub fn parse_element(s: &str, n: usize) -> Result<PolyElement> {
    let e: PolyElement = s.parse()?;
    if let Some(c) = e.max_letter() {
        if c as usize >= n {
            return Err(parse_err(1, format!("generator p{} not in P_{n}", c + 1)));
        }
    }
    Ok(e)
}

/// Equal up to a cyclic rotation.
pub fn is_rotation(a: &[u8], b: &[u8]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|k| a[k..].iter().chain(&a[..k]).eq(b.iter())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PolyRelation {
    N,
    C,
    P,
    PStar,
}

impl FromStr for PolyRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "n" => Ok(PolyRelation::N),
            "c" => Ok(PolyRelation::C),
            "p" => Ok(PolyRelation::P),
            "pstar" | "p*" => Ok(PolyRelation::PStar),
            _ => Err(parse_err(1, format!("unknown relation '{s}'"))),
        }
    }
}

fn rotation_of(a: &PolyElement, b: &PolyElement, positive: bool) -> bool {
    match (a, b) {
        (Nonzero { y: ay, x: ax }, Nonzero { y: by, x: bx }) => {
            if positive {
                ax.is_empty() && bx.is_empty() && is_rotation(ay, by)
            } else {
                ay.is_empty() && by.is_empty() && is_rotation(ax, bx)
            }
        }
        _ => false,
    }
}

pub fn poly_conj(rel: PolyRelation, a: &PolyElement, b: &PolyElement) -> bool {
    let (ta, tb) = (a.cyclic_reduce(), b.cyclic_reduce());
    match rel {
        PolyRelation::N => ta == tb,
        PolyRelation::C => ta == tb || rotation_of(&ta, &tb, false),
        PolyRelation::P => {
            let (ra, rb) = (a.rho(), b.rho());
            (a.is_zero() && rb.is_zero())
                || (ra.is_zero() && b.is_zero())
                || (ra.is_zero() && rb.is_zero() && ta == tb)
                || rotation_of(&ta, &tb, true)
                || rotation_of(&ta, &tb, false)
        }
        PolyRelation::PStar => {
            (a.rho().is_zero() && b.rho().is_zero()) || rotation_of(&ta, &tb, true) || rotation_of(&ta, &tb, false)
        }
    }
}

/// Membership g ∈ 𝔭(a): for a ≠ 0, (ma)g ≠ 0 whenever ma ≠ 0. Every nonzero ma has the
/// form w·(xz)⁻¹, so this holds iff g ≠ 0 and the positive part of g is a prefix of x.
pub fn in_frak_p(a: &PolyElement, g: &PolyElement) -> bool {
    match (a, g) {
        (Zero, _) => *g == PolyElement::one(),
        (_, Zero) => false,
        (Nonzero { x, .. }, Nonzero { y: gy, .. }) => is_prefix(gy, x),
    }
}

/// Every b with g·b = c, for c ≠ 0.
pub fn solve_left(g: &PolyElement, c: &PolyElement) -> Vec<PolyElement> {
    let (Nonzero { y: s, x: t }, Nonzero { y: cp, x: cm }) = (g, c) else {
        return vec![];
    };
    let mut out = vec![];
    // b = (t z)·c₋⁻¹ with s z = c₊
    if is_prefix(s, cp) {
        let mut y = t.clone();
        y.extend_from_slice(&cp[s.len()..]);
        out.push(PolyElement::new(y, cm.clone()));
    }
    // b = y·x⁻¹ with t = y z, c₋ = x z, z nonempty, and s = c₊
    if s == cp {
        for k in 1..=t.len().min(cm.len()) {
            if t[t.len() - k..] == cm[cm.len() - k..] {
                out.push(PolyElement::new(t[..t.len() - k].to_vec(), cm[..cm.len() - k].to_vec()));
            }
        }
    }
    out
}

/// Elements of length exactly m: (m+1)nᵐ normal forms, plus 0 when m = 1.
pub fn elements_of_length(n: usize, m: usize) -> Vec<PolyElement> {
    let mut out = vec![];
    if m == 1 {
        out.push(Zero);
    }
    for k in 0..=m {
        for y in words(n, k) {
            for x in words(n, m - k) {
                out.push(PolyElement::new(y.clone(), x));
            }
        }
    }
    out
}

pub fn words(n: usize, len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n as u8).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

// ---------------------------------------------------------------- growth

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GrowthRelation {
    Sigma,
    N,
    C,
    PStar,
}

impl GrowthRelation {
    pub const ALL: [GrowthRelation; 4] = [GrowthRelation::Sigma, GrowthRelation::N, GrowthRelation::C, GrowthRelation::PStar];

    pub fn tag(self) -> &'static str {
        match self {
            GrowthRelation::Sigma => "sigma",
            GrowthRelation::N => "n",
            GrowthRelation::C => "c",
            GrowthRelation::PStar => "pstar",
        }
    }
}

impl FromStr for GrowthRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sigma" => Ok(GrowthRelation::Sigma),
            "n" => Ok(GrowthRelation::N),
            "c" => Ok(GrowthRelation::C),
            "pstar" | "p*" => Ok(GrowthRelation::PStar),
            _ => Err(parse_err(1, format!("unknown growth relation '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub relation: GrowthRelation,
    pub n: usize,
    pub values: Vec<u128>,
    pub series: Vec<u128>,
    pub oracle: Option<Vec<u128>>,
}

impl GrowthTable {
    pub fn consistent(&self) -> bool {
        self.values == self.series && self.oracle.as_ref().map_or(true, |o| o == &self.values[..o.len()])
    }
}

fn overflow(m: usize) -> Error {
    Error::BoundExceeded {
        what: "growth table length (exact integer range)".into(),
        value: m,
        limit: m.saturating_sub(1),
    }
}

fn pow(n: usize, k: usize) -> Result<u128> {
    (n as u128).checked_pow(k as u32).ok_or_else(|| overflow(k))
}

pub fn mobius(m: usize) -> i128 {
    let mut k = m;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}

pub fn totient(m: usize) -> u128 {
    (1..=m).filter(|&k| gcd(k, m) == 1).count() as u128
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisors(m: usize) -> Vec<usize> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Number of cyclic-rotation classes of words of length m ≥ 1 over n letters (Möbius form).
pub fn necklaces(n: usize, m: usize) -> Result<u128> {
    let mut total: u128 = 0;
    for d in divisors(m) {
        let mut primitive: i128 = 0;
        for e in divisors(d) {
            primitive += mobius(d / e) * pow(n, e)? as i128;
        }
        total += primitive as u128 / d as u128;
    }
    Ok(total)
}

/// σ(m) and the cgf values for m = 0..=max.
pub fn growth_values(rel: GrowthRelation, n: usize, max: usize) -> Result<Vec<u128>> {
    guard(n, max)?;
    let nn = n as u128;
    (0..=max)
        .map(|m| -> Result<u128> {
            if m == 0 {
                return Ok(1);
            }
            if m == 1 {
                return Ok(2 * nn + 1);
            }
            let mixed = (m as u128 - 1) * pow(n, m - 1)? * (nn - 1);
            Ok(match rel {
                GrowthRelation::Sigma => (m as u128 + 1) * pow(n, m)?,
                GrowthRelation::N => 2 * pow(n, m)? + mixed,
                GrowthRelation::C => pow(n, m)? + mixed + necklaces(n, m)?,
                GrowthRelation::PStar => 2 * necklaces(n, m)?,
            })
        })
        .collect()
}

/// Keeps (m+2)²·n^(m+2) inside i128 so every table and series term fits.
fn guard(n: usize, max: usize) -> Result<()> {
    let k = max + 2;
    pow(n, k)
        .ok()
        .and_then(|p| p.checked_mul((k * k) as u128))
        .filter(|&v| v < i128::MAX as u128)
        .map(|_| ())
        .ok_or_else(|| overflow(max))
}

type Series = Vec<i128>;

fn s_add(a: &Series, b: &Series) -> Series {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn s_mul(a: &Series, b: &Series) -> Series {
    let len = a.len();
    let mut out = vec![0i128; len];
    for i in 0..len {
        for j in 0..len - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// a / b with b₀ = 1.
fn s_div(a: &Series, b: &Series) -> Series {
    let len = a.len();
    let mut out = vec![0i128; len];
    for k in 0..len {
        let mut v = a[k];
        for j in 1..=k {
            v -= b[j] * out[k - j];
        }
        out[k] = v;
    }
    out
}

fn poly(coeffs: &[i128], len: usize) -> Series {
    let mut s = vec![0i128; len];
    for (i, &c) in coeffs.iter().enumerate().take(len) {
        s[i] = c;
    }
    s
}

/// Σ_{r,s ≥ 1} nʳ φ(s)/(rs) z^{rs}; every coefficient has common denominator m = rs.
fn necklace_series(n: usize, len: usize) -> Result<Series> {
    let mut s = vec![0i128; len];
    for (m, slot) in s.iter_mut().enumerate().skip(1) {
        let mut num: u128 = 0;
        for r in divisors(m) {
            num += pow(n, r)? * totient(m / r);
        }
        *slot = (num / m as u128) as i128;
    }
    Ok(s)
}

/// Coefficients of the closed-form growth series up to z^max.
pub fn series_coefficients(rel: GrowthRelation, n: usize, max: usize) -> Result<Vec<u128>> {
    guard(n, max)?;
    let len = max + 1;
    let n = n as i128;
    let one_minus_nz = poly(&[1, -n], len);
    let sq = s_mul(&one_minus_nz, &one_minus_nz);
    let z = poly(&[0, 1], len);
    let s = match rel {
        GrowthRelation::Sigma => s_add(&s_div(&poly(&[1], len), &sq), &z),
        // z + (1 − nz²)/(1 − nz)²
        GrowthRelation::N => s_add(&z, &s_div(&poly(&[1, 0, -n], len), &sq)),
        GrowthRelation::C => {
            let a = s_div(&poly(&[1], len), &one_minus_nz);
            let b = s_div(&poly(&[0, 0, n * n - n], len), &sq);
            s_add(&s_add(&a, &z), &s_add(&b, &necklace_series(n as usize, len)?))
        }
        GrowthRelation::PStar => {
            let l = necklace_series(n as usize, len)?;
            s_add(&poly(&[1, 1], len), &s_add(&l, &l))
        }
    };
    Ok(s.into_iter().map(|c| c as u128).collect())
}

pub fn growth_table(rel: GrowthRelation, n: usize, max: usize, with_oracle: bool) -> Result<GrowthTable> {
    if n < 2 {
        return Err(Error::BoundExceeded {
            what: "n below 2".into(),
            value: n,
            limit: 2,
        });
    }
    let values = growth_values(rel, n, max)?;
    let series = series_coefficients(rel, n, max)?;
    let oracle = if with_oracle {
        let m = max.min(MAX_ORACLE_RADIUS);
        Some(Ball::new(n, m)?.counts(rel))
    } else {
        None
    };
    Ok(GrowthTable {
        relation: rel,
        n,
        values,
        series,
        oracle,
    })
}

// ---------------------------------------------------------------- oracle

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// All elements of word length ≤ radius, lengths found by breadth-first search over
/// the generators p_i, p_i⁻¹ and 0.
pub struct Ball {
    n: usize,
    radius: usize,
    elems: Vec<PolyElement>,
    dist: Vec<usize>,
    index: HashMap<PolyElement, usize>,
}

impl Ball {
    pub fn new(n: usize, radius: usize) -> Result<Self> {
        bound("oracle radius", radius, MAX_ORACLE_RADIUS)?;
        let mut gens: Vec<PolyElement> = (0..n as u8).map(PolyElement::gen).collect();
        gens.extend((0..n as u8).map(PolyElement::gen_inv));
        gens.push(Zero);
        let mut elems = vec![PolyElement::one()];
        let mut dist = vec![0];
        let mut index: HashMap<PolyElement, usize> = HashMap::new();
        index.insert(PolyElement::one(), 0);
        let mut frontier = vec![0usize];
        for d in 1..=radius {
            let mut next = vec![];
            for &i in &frontier {
                for g in &gens {
                    let p = elems[i].mul(g);
                    if !index.contains_key(&p) {
                        index.insert(p.clone(), elems.len());
                        next.push(elems.len());
                        elems.push(p);
                        dist.push(d);
                        bound("oracle ball size", elems.len(), MAX_BALL)?;
                    }
                }
            }
            frontier = next;
        }
        Ok(Ball {
            n,
            radius,
            elems,
            dist,
            index,
        })
    }

    pub fn elements(&self) -> &[PolyElement] {
        &self.elems
    }

    pub fn distance(&self, i: usize) -> usize {
        self.dist[i]
    }

    pub fn index_of(&self, e: &PolyElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// ∼n by the definition with conjugators from the ball: g⁻¹ag = b and gbg⁻¹ = a.
    pub fn n_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs(|a, g| {
            let gi = g.inverse();
            let b = gi.mul(a).mul(g);
            if !b.is_zero() || a.is_zero() {
                if g.mul(&b).mul(&gi) == *a {
                    return vec![b];
                }
            }
            vec![]
        })
    }

    /// One direction of ∼c: g ∈ 𝔭(a) and ag = gb.
    pub fn c_arrows(&self) -> Vec<(usize, usize)> {
        self.pairs(|a, g| {
            if !in_frak_p(a, g) {
                return vec![];
            }
            let c = a.mul(g);
            if c.is_zero() {
                // only a = 0, g = 1 reaches here
                return vec![Zero];
            }
            solve_left(g, &c)
        })
    }

    /// ∼p: a = uv, b = vu with u, v in the ball.
    pub fn p_pairs(&self) -> Vec<(usize, usize)> {
        let len = self.elems.len();
        (0..len)
            .into_par_iter()
            .flat_map_iter(|u| {
                let e = &self.elems;
                (0..len).filter_map(move |v| {
                    let a = self.index_of(&e[u].mul(&e[v]))?;
                    let b = self.index_of(&e[v].mul(&e[u]))?;
                    Some((a, b))
                })
            })
            .collect()
    }

    fn pairs(&self, f: impl Fn(&PolyElement, &PolyElement) -> Vec<PolyElement> + Sync) -> Vec<(usize, usize)> {
        let len = self.elems.len();
        let mut v: Vec<(usize, usize)> = (0..len)
            .into_par_iter()
            .flat_map_iter(|a| {
                let e = &self.elems;
                let f = &f;
                (0..len).flat_map(move |g| {
                    f(&e[a], &e[g])
                        .into_iter()
                        .filter_map(|b| self.index_of(&b))
                        .map(move |b| (a, b))
                })
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Class labels (least member index) for the relation.
    pub fn classes(&self, rel: GrowthRelation) -> Vec<usize> {
        let len = self.elems.len();
        let mut uf = UnionFind((0..len).collect());
        match rel {
            GrowthRelation::Sigma => {}
            GrowthRelation::N => {
                for (a, b) in self.n_pairs() {
                    uf.union(a, b);
                }
            }
            GrowthRelation::C => {
                let arrows = self.c_arrows();
                let set: std::collections::HashSet<(usize, usize)> = arrows.iter().copied().collect();
                for &(a, b) in &arrows {
                    if set.contains(&(b, a)) {
                        uf.union(a, b);
                    }
                }
            }
            GrowthRelation::PStar => {
                for (a, b) in self.p_pairs() {
                    uf.union(a, b);
                }
            }
        }
        (0..len).map(|i| uf.find(i)).collect()
    }

    /// Classes (or elements, for σ) counted by least member length, for lengths 0..=radius.
    pub fn counts(&self, rel: GrowthRelation) -> Vec<u128> {
        let mut out = vec![0u128; self.radius + 1];
        if rel == GrowthRelation::Sigma {
            for &d in &self.dist {
                out[d] += 1;
            }
            return out;
        }
        let labels = self.classes(rel);
        let mut least: HashMap<usize, usize> = HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            let e = least.entry(l).or_insert(usize::MAX);
            *e = (*e).min(self.dist[i]);
        }
        for d in least.values() {
            out[*d] += 1;
        }
        out
    }
}
