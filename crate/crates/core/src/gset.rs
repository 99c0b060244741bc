//! Endomorphisms of finite G-sets over an abelian group G.
//!
//! Maps compose right to left here: `f.compose(g)` is x ↦ f(g(x)), and the Cayley table
//! built from these maps uses that product.

use crate::error::{parse_err, Error, Result};
use crate::io::bound;
use crate::semigroup::CayleyTable;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

pub const MAX_GROUP_ORDER: usize = 4096;
pub const MAX_ELEMENTS: usize = 5000;

/// Product of cyclic groups Z_{m1} × Z_{m2} × ...; elements are mixed-radix indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    moduli: Vec<u32>,
    order: usize,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        if moduli.iter().any(|&m| m == 0) {
            return Err(Error::InvalidGSet("cyclic factor of order 0".into()));
        }
        let moduli = if moduli.is_empty() { vec![1] } else { moduli };
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m as usize))
            .unwrap_or(usize::MAX);
        bound("group order", order, MAX_GROUP_ORDER)?;
        Ok(AbelianGroup { moduli, order })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            moduli: vec![1],
            order: 1,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn tuple(&self, mut i: usize) -> Vec<u32> {
        self.moduli
            .iter()
            .map(|&m| {
                let d = (i % m as usize) as u32;
                i /= m as usize;
                d
            })
            .collect()
    }

    /// Index of a tuple, reducing each coordinate.
    pub fn index(&self, t: &[u32]) -> usize {
        self.moduli
            .iter()
            .zip(t)
            .rev()
            .fold(0, |acc, (&m, &d)| acc * m as usize + (d % m) as usize)
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        let (a, b) = (self.tuple(i), self.tuple(j));
        let s: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        self.index(&s)
    }

    pub fn neg(&self, i: usize) -> usize {
        let t: Vec<u32> = self.tuple(i).iter().zip(&self.moduli).map(|(&x, &m)| m - x).collect();
        self.index(&t)
    }

    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !members[y] {
                    members[y] = true;
                    stack.push(y);
                }
            }
        }
        Subgroup { members }
    }

    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found = vec![self.subgroup(&[])];
        let mut i = 0;
        while i < found.len() {
            let gens = found[i].elements();
            for g in 0..self.order {
                let mut with = gens.clone();
                with.push(g);
                let s = self.subgroup(&with);
                if !found.contains(&s) {
                    found.push(s);
                }
            }
            i += 1;
        }
        found.sort();
        found
    }

    pub fn format(&self, i: usize) -> String {
        let t: Vec<String> = self.tuple(i).iter().map(|d| d.to_string()).collect();
        format!("({})", t.join(","))
    }

    /// `(a,b)` or a bare integer for a cyclic group.
    pub fn parse_elem(&self, s: &str) -> Result<usize> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        if parts.len() != self.moduli.len() {
            return Err(Error::InvalidGSet(format!(
                "element `{}` needs {} coordinates",
                s.trim(),
                self.moduli.len()
            )));
        }
        let t = parts
            .iter()
            .map(|p| p.parse::<u32>().map_err(|_| Error::InvalidGSet(format!("bad coordinate `{p}`"))))
            .collect::<Result<Vec<u32>>>()?;
        Ok(self.index(&t))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    members: Vec<bool>,
}

impl Subgroup {
    pub fn contains(&self, g: usize) -> bool {
        self.members[g]
    }

    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&g| self.members[g]).collect()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.iter().zip(&other.members).all(|(a, b)| !a || *b)
    }

    fn tag(&self) -> String {
        self.members.iter().map(|&m| if m { '1' } else { '0' }).collect()
    }
}

#[derive(Clone, Debug)]
struct Orbit {
    stab: Subgroup,
    /// group element -> coset index
    coset_of: Vec<usize>,
    /// coset index -> least representative
    reps: Vec<usize>,
    offset: usize,
}

/// A disjoint union of transitive G-sets G/H.
#[derive(Clone, Debug)]
pub struct GSet {
    group: AbelianGroup,
    orbits: Vec<Orbit>,
    points: usize,
}

impl GSet {
    pub fn new(group: AbelianGroup, stabs: Vec<Subgroup>) -> Result<Self> {
        if stabs.is_empty() {
            return Err(Error::InvalidGSet("no orbits".into()));
        }
        let mut orbits = vec![];
        let mut offset = 0;
        for stab in stabs {
            if stab.members.len() != group.order {
                return Err(Error::InvalidGSet("stabilizer from a different group".into()));
            }
            let mut coset_of = vec![usize::MAX; group.order];
            let mut reps = vec![];
            for g in 0..group.order {
                if coset_of[g] != usize::MAX {
                    continue;
                }
                for h in stab.elements() {
                    coset_of[group.add(g, h)] = reps.len();
                }
                reps.push(g);
            }
            let size = reps.len();
            orbits.push(Orbit {
                stab,
                coset_of,
                reps,
                offset,
            });
            offset += size;
        }
        Ok(GSet {
            group,
            orbits,
            points: offset,
        })
    }

    /// Parses `G=2x2` then one `orbit stab={(1,0),...}` line per orbit; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut group: Option<AbelianGroup> = None;
        let mut stabs = vec![];
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let ln = ln + 1;
            if let Some(spec) = line.strip_prefix("G=") {
                let moduli = spec
                    .split(['x', '×'])
                    .map(|m| m.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<u32>, _>>()
                    .map_err(|_| parse_err(ln, format!("bad group `{spec}`")))?;
                group = Some(AbelianGroup::new(moduli)?);
            } else if let Some(rest) = line.strip_prefix("orbit") {
                let g = group.as_ref().ok_or_else(|| parse_err(ln, "orbit before G= line"))?;
                let body = rest
                    .trim()
                    .strip_prefix("stab=")
                    .ok_or_else(|| parse_err(ln, "expected `stab={...}`"))?
                    .trim();
                let inner = body
                    .strip_prefix('{')
                    .and_then(|b| b.strip_suffix('}'))
                    .ok_or_else(|| parse_err(ln, "stabilizer must be in braces"))?;
                let gens = split_groups(inner)
                    .map_err(|m| parse_err(ln, m))?
                    .iter()
                    .map(|t| g.parse_elem(t))
                    .collect::<Result<Vec<usize>>>()?;
                stabs.push(g.subgroup(&gens));
            } else {
                return Err(parse_err(ln, format!("unexpected line `{line}`")));
            }
        }
        let group = group.ok_or_else(|| parse_err(1, "missing G= line"))?;
        GSet::new(group, stabs)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    pub fn stabilizer(&self, o: usize) -> &Subgroup {
        &self.orbits[o].stab
    }

    pub fn orbit_size(&self, o: usize) -> usize {
        self.orbits[o].reps.len()
    }

    /// The point k·x_o, where x_o is the base point of orbit o.
    pub fn point(&self, o: usize, k: usize) -> usize {
        let orb = &self.orbits[o];
        orb.offset + orb.coset_of[k]
    }

    /// (orbit, least k) with p = k·x_orbit.
    pub fn locate(&self, p: usize) -> (usize, usize) {
        let o = self.orbits.iter().rposition(|orb| orb.offset <= p).unwrap();
        (o, self.orbits[o].reps[p - self.orbits[o].offset])
    }

    pub fn act(&self, k: usize, p: usize) -> usize {
        let (o, r) = self.locate(p);
        self.point(o, self.group.add(k, r))
    }

    /// Least element of the coset k + G_o.
    pub fn coset_rep(&self, o: usize, k: usize) -> usize {
        let orb = &self.orbits[o];
        orb.reps[orb.coset_of[k]]
    }

    pub fn to_spec(&self) -> String {
        let moduli: Vec<String> = self.group.moduli.iter().map(|m| m.to_string()).collect();
        let mut s = format!("G={}\n", moduli.join("x"));
        for orb in &self.orbits {
            let gens: Vec<String> = orb
                .stab
                .elements()
                .into_iter()
                .filter(|&g| g != 0)
                .map(|g| self.group.format(g))
                .collect();
            s += &format!("orbit stab={{{}}}\n", gens.join(","));
        }
        s
    }
}

/// Top-level parenthesised groups or bare tokens separated by commas/whitespace.
fn split_groups(s: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = vec![];
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced `)`".into());
                }
                cur.push(c);
            }
            ',' | ' ' | '\t' | ';' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced `(`".into());
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    Ok(out)
}

/// Per source orbit: (target orbit, k) meaning x_o ↦ k·x_target, with k the least coset rep.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GEndo {
    img: Vec<(u32, u32)>,
}

impl GEndo {
    pub fn new(x: &GSet, img: &[(usize, usize)]) -> Result<Self> {
        if img.len() != x.orbit_count() {
            return Err(Error::SizeMismatch(img.len(), x.orbit_count()));
        }
        let mut out = vec![];
        for (o, &(t, k)) in img.iter().enumerate() {
            if t >= x.orbit_count() || k >= x.group.order {
                return Err(Error::InvalidGSet(format!("image of orbit {} out of range", o + 1)));
            }
            if !x.stabilizer(o).is_subset(x.stabilizer(t)) {
                return Err(Error::InvalidGSet(format!(
                    "orbit {} cannot map to orbit {}: stabilizer would shrink",
                    o + 1,
                    t + 1
                )));
            }
            out.push((t as u32, x.coset_rep(t, k) as u32));
        }
        Ok(GEndo { img: out })
    }

    pub fn identity(x: &GSet) -> Self {
        GEndo {
            img: (0..x.orbit_count()).map(|o| (o as u32, 0)).collect(),
        }
    }

    pub fn target(&self, o: usize) -> usize {
        self.img[o].0 as usize
    }

    pub fn shift(&self, o: usize) -> usize {
        self.img[o].1 as usize
    }

    /// self ∘ g.
    pub fn compose(&self, x: &GSet, g: &GEndo) -> GEndo {
        GEndo {
            img: g
                .img
                .iter()
                .map(|&(t, k)| {
                    let (u, l) = self.img[t as usize];
                    (u, x.coset_rep(u as usize, x.group.add(k as usize, l as usize)) as u32)
                })
                .collect(),
        }
    }

    pub fn apply(&self, x: &GSet, p: usize) -> usize {
        let (o, r) = x.locate(p);
        let (t, k) = self.img[o];
        x.point(t as usize, x.group.add(r, k as usize))
    }

    pub fn point_map(&self, x: &GSet) -> Vec<usize> {
        (0..x.len()).map(|p| self.apply(x, p)).collect()
    }

    /// Orbit indices are 1-based: `(2,(1,0)) (2,(0,0))`.
    pub fn to_literal(&self, x: &GSet) -> String {
        let parts: Vec<String> = self
            .img
            .iter()
            .map(|&(t, k)| format!("({},{})", t + 1, x.group.format(k as usize)))
            .collect();
        parts.join(" ")
    }

    pub fn parse(x: &GSet, s: &str) -> Result<Self> {
        let groups = split_groups(s).map_err(|m| parse_err(1, m))?;
        let mut img = vec![];
        for g in groups {
            let inner = g
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| parse_err(1, format!("expected `(orbit,element)`, got `{g}`")))?;
            let (o, k) = inner
                .split_once(',')
                .ok_or_else(|| parse_err(1, format!("expected `(orbit,element)`, got `{g}`")))?;
            let o: usize = o
                .trim()
                .parse()
                .map_err(|_| parse_err(1, format!("bad orbit index `{}`", o.trim())))?;
            if o == 0 {
                return Err(Error::InvalidGSet("orbit indices start at 1".into()));
            }
            img.push((o - 1, x.group.parse_elem(k)?));
        }
        GEndo::new(x, &img)
    }
}

/// Number of G-endomorphisms, saturating.
pub fn count_end(x: &GSet) -> usize {
    (0..x.orbit_count())
        .map(|o| {
            (0..x.orbit_count())
                .filter(|&t| x.stabilizer(o).is_subset(x.stabilizer(t)))
                .map(|t| x.orbit_size(t))
                .sum::<usize>()
        })
        .try_fold(1usize, |acc, c| acc.checked_mul(c))
        .unwrap_or(usize::MAX)
}

/// Every G-endomorphism, sorted.
pub fn enumerate_end(x: &GSet) -> Result<Vec<GEndo>> {
    bound("End_G(X) order", count_end(x), MAX_ELEMENTS)?;
    let choices: Vec<Vec<(u32, u32)>> = (0..x.orbit_count())
        .map(|o| {
            (0..x.orbit_count())
                .filter(|&t| x.stabilizer(o).is_subset(x.stabilizer(t)))
                .flat_map(|t| x.orbits[t].reps.iter().map(move |&k| (t as u32, k as u32)))
                .collect()
        })
        .collect();
    let mut out = vec![GEndo { img: vec![] }];
    for c in &choices {
        out = out
            .iter()
            .flat_map(|e| {
                c.iter().map(move |&pair| {
                    let mut img = e.img.clone();
                    img.push(pair);
                    GEndo { img }
                })
            })
            .collect();
    }
    out.sort();
    Ok(out)
}

/// End_G(X) with product f·g = f ∘ g.
pub struct EndMonoid {
    gset: GSet,
    elems: Vec<GEndo>,
    index: HashMap<GEndo, usize>,
    table: CayleyTable,
}

impl EndMonoid {
    pub fn build(x: &GSet) -> Result<Self> {
        let elems = enumerate_end(x)?;
        let index: HashMap<GEndo, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elems.len();
        let flat: Vec<u32> = (0..n * n)
            .into_par_iter()
            .map(|k| index[&elems[k / n].compose(x, &elems[k % n])] as u32)
            .collect();
        let table = CayleyTable::from_trusted(n, flat)
            .with_labels(elems.iter().map(|e| e.to_literal(x)).collect());
        Ok(EndMonoid {
            gset: x.clone(),
            elems,
            index,
            table,
        })
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn elements(&self) -> &[GEndo] {
        &self.elems
    }

    pub fn index_of(&self, f: &GEndo) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }
}

/// Orbit digraph with stabilizer tags and cycle labels, restricted to `kept` orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledOrbitGraph {
    pub kept: Vec<bool>,
    pub next: Vec<usize>,
    pub stabs: Vec<Subgroup>,
    /// Least representative of the cycle label coset, for orbits on cycles.
    pub labels: Vec<Option<usize>>,
}

impl LabeledOrbitGraph {
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.kept.len()).filter(|&o| self.kept[o]).collect()
    }

    /// Isomorphism invariant that is complete for functional digraphs with coloured vertices.
    pub fn canonical_form(&self) -> String {
        let vs = self.vertices();
        let mut children: HashMap<usize, Vec<usize>> = HashMap::new();
        let on_cycle = cycle_vertices(&self.next, &vs);
        for &v in &vs {
            if !on_cycle[v] {
                children.entry(self.next[v]).or_default().push(v);
            }
        }
        fn code(
            g: &LabeledOrbitGraph,
            v: usize,
            children: &HashMap<usize, Vec<usize>>,
        ) -> String {
            let mut kids: Vec<String> = children
                .get(&v)
                .map(|c| c.iter().map(|&u| code(g, u, children)).collect())
                .unwrap_or_default();
            kids.sort();
            let label = g.labels[v].map_or(String::from("-"), |l| l.to_string());
            format!("({}:{}{})", g.stabs[v].tag(), label, kids.concat())
        }
        let mut seen = vec![false; self.kept.len()];
        let mut comps = vec![];
        for &v in &vs {
            if !on_cycle[v] || seen[v] {
                continue;
            }
            let mut cyc = vec![];
            let mut u = v;
            while !seen[u] {
                seen[u] = true;
                cyc.push(code(self, u, &children));
                u = self.next[u];
            }
            let best = (0..cyc.len())
                .map(|r| {
                    let mut rot = cyc[r..].to_vec();
                    rot.extend_from_slice(&cyc[..r]);
                    rot
                })
                .min()
                .unwrap();
            comps.push(format!("C{}", best.concat()));
        }
        comps.sort();
        comps.join("|")
    }
}

fn cycle_vertices(next: &[usize], vs: &[usize]) -> Vec<bool> {
    let mut on = vec![false; next.len()];
    let mut state = vec![0u8; next.len()];
    for &s in vs {
        let mut path = vec![];
        let mut u = s;
        while state[u] == 0 {
            state[u] = 1;
            path.push(u);
            u = next[u];
        }
        if state[u] == 1 {
            let pos = path.iter().position(|&p| p == u).unwrap();
            for &p in &path[pos..] {
                on[p] = true;
            }
        }
        for p in path {
            state[p] = 2;
        }
    }
    on
}

/// k with f^len(x_o) = k·x_o for an orbit o on a cycle, as the least coset representative.
pub fn cycle_label(x: &GSet, f: &GEndo, o: usize) -> Option<usize> {
    let all: Vec<usize> = (0..x.orbit_count()).collect();
    let next: Vec<usize> = all.iter().map(|&v| f.target(v)).collect();
    if !cycle_vertices(&next, &all)[o] {
        return None;
    }
    let mut k = 0;
    let mut u = o;
    loop {
        k = x.group.add(k, f.shift(u));
        u = f.target(u);
        if u == o {
            return Some(x.coset_rep(o, k));
        }
    }
}

/// The full orbit graph K(f).
pub fn orbit_graph(x: &GSet, f: &GEndo) -> LabeledOrbitGraph {
    let m = x.orbit_count();
    LabeledOrbitGraph {
        kept: vec![true; m],
        next: (0..m).map(|o| f.target(o)).collect(),
        stabs: (0..m).map(|o| x.stabilizer(o).clone()).collect(),
        labels: (0..m).map(|o| cycle_label(x, f, o)).collect(),
    }
}

/// G-trim keeping the smallest orbit of each U_O.
pub fn g_trim(x: &GSet, f: &GEndo) -> LabeledOrbitGraph {
    g_trim_with(x, f, false)
}

/// G-trim; `keep_largest` picks the largest orbit of each U_O instead.
pub fn g_trim_with(x: &GSet, f: &GEndo, keep_largest: bool) -> LabeledOrbitGraph {
    let mut g = orbit_graph(x, f);
    let m = x.orbit_count();
    let mut initial = vec![true; m];
    for o in 0..m {
        initial[f.target(o)] = false;
    }
    let stab = |o: usize| x.stabilizer(o);
    let same_image = |o: usize| -> Vec<usize> { (0..m).filter(|&p| f.target(p) == f.target(o)).collect() };
    let strictly_below = |o: usize, p: usize| stab(o).is_subset(stab(p)) && stab(o) != stab(p);
    // step 1
    let step1: Vec<bool> = (0..m)
        .map(|o| initial[o] && same_image(o).iter().any(|&p| strictly_below(o, p)))
        .collect();
    // step 2
    let step2: Vec<bool> = (0..m)
        .map(|o| {
            initial[o]
                && !step1[o]
                && same_image(o).iter().any(|&p| !initial[p] && stab(p) == stab(o))
        })
        .collect();
    for o in 0..m {
        g.kept[o] = !(step1[o] || step2[o]);
    }
    // step 3
    for o in 0..m {
        if !(g.kept[o] && initial[o]) {
            continue;
        }
        let u: Vec<usize> = same_image(o)
            .into_iter()
            .filter(|&p| g.kept[p] && stab(p) == stab(o))
            .collect();
        let keep = if keep_largest { *u.iter().max().unwrap() } else { *u.iter().min().unwrap() };
        for p in u {
            if p != keep {
                g.kept[p] = false;
            }
        }
    }
    g
}

pub fn conj_n_gset(x: &GSet, a: &GEndo, b: &GEndo) -> Result<bool> {
    if a.img.len() != x.orbit_count() || b.img.len() != x.orbit_count() {
        return Err(Error::SizeMismatch(a.img.len(), b.img.len()));
    }
    Ok(g_trim(x, a).canonical_form() == g_trim(x, b).canonical_form())
}

/// Every G-set with at most `max_orbits` orbits and `max_points` points, up to orbit order.
pub fn all_gsets(g: &AbelianGroup, max_orbits: usize, max_points: usize) -> Vec<GSet> {
    fn rec(
        g: &AbelianGroup,
        subs: &[Subgroup],
        from: usize,
        cur: &mut Vec<Subgroup>,
        points: usize,
        limits: (usize, usize),
        out: &mut Vec<GSet>,
    ) {
        if !cur.is_empty() {
            out.push(GSet::new(g.clone(), cur.clone()).expect("subgroups of g"));
        }
        if cur.len() == limits.0 {
            return;
        }
        for i in from..subs.len() {
            let size = g.order() / subs[i].size();
            if points + size <= limits.1 {
                cur.push(subs[i].clone());
                rec(g, subs, i, cur, points + size, limits, out);
                cur.pop();
            }
        }
    }
    let subs = g.all_subgroups();
    let mut out = vec![];
    rec(g, &subs, 0, &mut vec![], 0, (max_orbits, max_points), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> AbelianGroup {
        AbelianGroup::new(vec![2]).unwrap()
    }

    #[test]
    fn counts() {
        let g = z2();
        let free = g.subgroup(&[]);
        let whole = g.subgroup(&[1]);
        let x = GSet::new(g.clone(), vec![free.clone()]).unwrap();
        assert_eq!(enumerate_end(&x).unwrap().len(), 2);
        let x = GSet::new(g, vec![free, whole]).unwrap();
        assert_eq!(enumerate_end(&x).unwrap().len(), 3);
    }

    #[test]
    fn spec_round_trip() {
        let text = "G=2x2\norbit stab={(1,0)}\norbit stab={}\n";
        let x = GSet::parse(text).unwrap();
        assert_eq!(x.len(), 2 + 4);
        assert_eq!(GSet::parse(&x.to_spec()).unwrap().len(), 6);
        let f = GEndo::parse(&x, "(1,(0,0)) (2,(1,1))").unwrap();
        assert_eq!(GEndo::parse(&x, &f.to_literal(&x)).unwrap(), f);
        assert!(GEndo::parse(&x, "(2,(0,0)) (1,(0,0))").is_err());
        assert!(GSet::parse("orbit stab={}").is_err());
    }
}
