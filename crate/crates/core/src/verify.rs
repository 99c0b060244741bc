//! Oracle-equivalence suites run by `conjlab verify`.
//!
//! Each check compares a fast decider or closed form against the definition-level
//! computation on small instances and reports the number of disagreements.

use crate::conjugacy::{Conjugacy, RelationKind};
use crate::diagram::{self, DiagramKind, DiagramMonoid};
use crate::enumerate::semigroups_up_to_iso;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::gset::{self, AbelianGroup, EndMonoid};
use crate::inner::{self, PartialAut};
use crate::polycyclic::{self, GrowthRelation};
use crate::relation::Relation;
use crate::semigroup::{cyclic_group, symmetric_group, CayleyTable, WithOne};
use crate::transform::{self, TransformKind, TransformationMonoid};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Inclusions,
    Idempotents,
    Transformations,
    Diagrams,
    Gsets,
    Inn,
    Polycyclic,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Inclusions,
        Suite::Idempotents,
        Suite::Transformations,
        Suite::Diagrams,
        Suite::Gsets,
        Suite::Inn,
        Suite::Polycyclic,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Suite::Inclusions => "inclusions",
            Suite::Idempotents => "idempotents",
            Suite::Transformations => "transformations",
            Suite::Diagrams => "diagrams",
            Suite::Gsets => "gsets",
            Suite::Inn => "inn",
            Suite::Polycyclic => "polycyclic",
        }
    }

    /// `--n` when not given.
    pub fn default_n(self) -> usize {
        match self {
            Suite::Inclusions | Suite::Idempotents => 3,
            Suite::Transformations | Suite::Diagrams | Suite::Inn => 3,
            Suite::Gsets => 6,
            Suite::Polycyclic => 2,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.tag() == s.trim())
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("unknown suite '{s}'"),
            })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Size parameter; its meaning depends on the suite.
    pub n: Option<usize>,
    /// Polycyclic table length.
    pub max: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Pairs or items compared.
    pub compared: usize,
    pub failures: usize,
    pub detail: String,
    pub millis: u128,
}

struct Tally {
    compared: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            compared: 0,
            failures: 0,
            first: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.compared += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }
}

fn timed(suite: Suite, name: impl Into<String>, f: impl FnOnce(&mut Tally) -> Result<()>) -> Result<Check> {
    let start = Instant::now();
    let mut t = Tally::new();
    f(&mut t)?;
    Ok(Check {
        suite,
        name: name.into(),
        passed: t.failures == 0,
        compared: t.compared,
        failures: t.failures,
        detail: t.first.unwrap_or_default(),
        millis: start.elapsed().as_millis(),
    })
}

fn limit(what: &str, value: usize, max: usize) -> Result<()> {
    if value > max {
        return Err(Error::BoundExceeded {
            what: what.into(),
            value,
            limit: max,
        });
    }
    Ok(())
}

pub fn run(suite: Suite, opts: VerifyOptions) -> Result<Vec<Check>> {
    let n = opts.n.unwrap_or(suite.default_n());
    match suite {
        Suite::Inclusions => inclusions(n),
        Suite::Idempotents => idempotents(n),
        Suite::Transformations => transformations(n),
        Suite::Diagrams => diagrams(n),
        Suite::Gsets => gsets(n),
        Suite::Inn => inn(n),
        Suite::Polycyclic => polycyclic(n, opts.max.unwrap_or(6)),
    }
}

/// Bundled fixtures plus every semigroup of order ≤ n up to isomorphism.
pub fn chain_semigroups(n: usize) -> Result<Vec<(String, CayleyTable)>> {
    limit("semigroup order for exhaustive enumeration", n, 4)?;
    let mut v: Vec<(String, CayleyTable)> = fixtures::all().into_iter().map(|(k, t)| (k.to_string(), t)).collect();
    for k in 1..=n {
        for (i, t) in semigroups_up_to_iso(k)?.into_iter().enumerate() {
            v.push((format!("order{k}#{i}"), t));
        }
    }
    Ok(v)
}

const CHAIN: [(RelationKind, RelationKind, bool); 8] = [
    (RelationKind::G, RelationKind::N, false),
    (RelationKind::N, RelationKind::PStar, false),
    (RelationKind::PStar, RelationKind::Tr, false),
    (RelationKind::Tr, RelationKind::O, false),
    (RelationKind::N, RelationKind::C, false),
    (RelationKind::C, RelationKind::O, false),
    (RelationKind::W, RelationKind::Tr, true),
    (RelationKind::N, RelationKind::G, false),
];

fn inclusions(n: usize) -> Result<Vec<Check>> {
    let sgs = chain_semigroups(n)?;
    let conj: Vec<Conjugacy> = sgs.iter().map(|(_, t)| Conjugacy::new(t)).collect();
    let mut out = vec![];
    // the last row stands for ∼n ⊆ D
    for (i, &(a, b, eq)) in CHAIN.iter().enumerate() {
        let name = if i == CHAIN.len() - 1 {
            "n ⊆ D".to_string()
        } else {
            format!("{a} {} {b}", if eq { "=" } else { "⊆" })
        };
        out.push(timed(Suite::Inclusions, name, |t| {
            for ((label, _), c) in sgs.iter().zip(&conj) {
                let ra = c.relation(a)?;
                let rb = if i == CHAIN.len() - 1 {
                    Relation::from_partition(&c.green().d)
                } else {
                    c.relation(b)?
                };
                let ok = if eq { ra == rb } else { ra.is_subset(&rb) };
                t.check(ok, || format!("fails on {label}"));
            }
            Ok(())
        })?);
    }
    Ok(out)
}

fn idempotents(n: usize) -> Result<Vec<Check>> {
    let sgs = chain_semigroups(n)?;
    Ok(vec![timed(Suite::Idempotents, "n = D on idempotents", |t| {
        for (label, s) in &sgs {
            let c = Conjugacy::new(s);
            let nrel = c.relation(RelationKind::N)?;
            let d = &c.green().d;
            let es = s.idempotents();
            for &e in &es {
                for &f in &es {
                    t.check(nrel.get(e, f) == d.same(e, f), || format!("{label}: {e} {f}"));
                }
            }
        }
        Ok(())
    })?])
}

fn decider_check(kind: TransformKind, n: usize) -> Result<Check> {
    let m = TransformationMonoid::build(kind.clone(), n)?;
    timed(Suite::Transformations, format!("{} decider ≡ n", kind.name(n)), |t| {
        let r = Conjugacy::new(m.table()).relation(RelationKind::N)?;
        let es = m.elements();
        for (i, a) in es.iter().enumerate() {
            for (j, b) in es.iter().enumerate() {
                t.check(kind.conj_n(a, b)? == r.get(i, j), || format!("{a} {b}"));
            }
        }
        Ok(())
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn transformations(n: usize) -> Result<Vec<Check>> {
    limit("transformation degree", n, 5)?;
    let mut out = vec![];
    out.push(decider_check(TransformKind::Full, n)?);
    out.push(decider_check(TransformKind::OrderPreserving, n)?);
    out.push(decider_check(TransformKind::OrderPreservingInjective, n)?);
    if n <= 4 {
        out.push(decider_check(TransformKind::Partial, n)?);
        out.push(decider_check(TransformKind::Injective, n)?);
        for mask in 1..(1usize << n) {
            let y: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            out.push(decider_check(TransformKind::ImageIn(y), n)?);
        }
    }
    let m = TransformationMonoid::build(TransformKind::OrderPreservingInjective, n)?;
    out.push(timed(Suite::Transformations, format!("OI_{n} class sizes = C(n,k)"), |t| {
        let p = Conjugacy::new(m.table()).partition(RelationKind::N)?;
        for (i, a) in m.elements().iter().enumerate() {
            let k = a.span().len();
            let class = transform::class_oin(a)?;
            let ok = class.len() == binomial(n, k) && p.class(i).len() == class.len();
            t.check(ok, || format!("{a}"));
        }
        Ok(())
    })?);
    Ok(out)
}

fn diagram_checks(kind: DiagramKind, n: usize) -> Result<Vec<Check>> {
    let m = DiagramMonoid::build(kind, n)?;
    let c = Conjugacy::new(m.table());
    let e = m.elements();
    let name = kind.name(n);
    let pairwise = |label: String, rel: RelationKind, f: &dyn Fn(usize, usize) -> Result<bool>| {
        timed(Suite::Diagrams, label, |t| {
            let r = c.relation(rel)?;
            for i in 0..e.len() {
                for j in 0..e.len() {
                    t.check(f(i, j)? == r.get(i, j), || format!("{} {}", e[i], e[j]));
                }
            }
            Ok(())
        })
    };
    Ok(vec![
        pairwise(format!("{name} conj_n ≡ n"), RelationKind::N, &|i, j| diagram::conj_n(kind, &e[i], &e[j]))?,
        pairwise(format!("{name} conj_tr ≡ tr"), RelationKind::Tr, &|i, j| diagram::conj_tr(&e[i], &e[j]))?,
        pairwise(format!("{name} conj_tr ≡ pstar"), RelationKind::PStar, &|i, j| {
            diagram::conj_tr(&e[i], &e[j])
        })?,
        pairwise(format!("{name} conj_o ≡ o"), RelationKind::O, &|i, j| diagram::conj_o(kind, &e[i], &e[j]))?,
        pairwise(format!("{name} conj_c ≡ c"), RelationKind::C, &|i, j| diagram::conj_c(kind, &e[i], &e[j]))?,
    ])
}

fn diagrams(n: usize) -> Result<Vec<Check>> {
    limit("diagram degree", n, 4)?;
    let mut out = vec![];
    if n <= 3 {
        out.extend(diagram_checks(DiagramKind::Partition, n)?);
        out.extend(diagram_checks(DiagramKind::PartialBrauer, n)?);
    }
    out.extend(diagram_checks(DiagramKind::Brauer, n)?);
    Ok(out)
}

fn gsets(max_points: usize) -> Result<Vec<Check>> {
    limit("G-set size", max_points, 6)?;
    let mut out = vec![];
    for moduli in [vec![2u32], vec![3], vec![2, 2]] {
        let g = AbelianGroup::new(moduli)?;
        let label = g.moduli().iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x");
        let xs = gset::all_gsets(&g, 3, max_points);
        out.push(timed(Suite::Gsets, format!("{label}: conj_n_gset ≡ n"), |t| {
            for x in &xs {
                let m = EndMonoid::build(x)?;
                let r = Conjugacy::new(m.table()).relation(RelationKind::N)?;
                let e = m.elements();
                for i in 0..e.len() {
                    for j in 0..e.len() {
                        let ok = gset::conj_n_gset(x, &e[i], &e[j])? == r.get(i, j);
                        t.check(ok, || format!("{} {} on {}", e[i].to_literal(x), e[j].to_literal(x), x.to_spec()));
                    }
                }
            }
            Ok(())
        })?);
        out.push(timed(Suite::Gsets, format!("{label}: cycle labels do not depend on the point"), |t| {
            for x in &xs {
                for f in gset::enumerate_end(x)? {
                    let pm = f.point_map(x);
                    for o in 0..x.orbit_count() {
                        let Some(label) = gset::cycle_label(x, &f, o) else { continue };
                        let mut len = 1;
                        let mut u = f.target(o);
                        while u != o {
                            u = f.target(u);
                            len += 1;
                        }
                        // f^len(p) = k·p exactly for k ∈ label + G_o, at every point p of the orbit
                        for j in 0..g.order() {
                            let p = x.point(o, j);
                            let q = (0..len).fold(p, |q, _| pm[q]);
                            let ks: Vec<usize> = (0..g.order()).filter(|&k| x.act(k, p) == q).collect();
                            let ok = ks.contains(&label) && ks.len() == x.stabilizer(o).size();
                            t.check(ok, || format!("{} orbit {} point {j}", f.to_literal(x), o + 1));
                        }
                    }
                }
            }
            Ok(())
        })?);
    }
    Ok(out)
}

fn two_chain_check(t: &mut Tally, label: &str, s: &CayleyTable) -> Result<()> {
    let inn = inner::generate_inn(s)?;
    let k = s.order();
    let ok = inn.order() == 2
        && inn.index_of(&PartialAut::empty(k)).is_some()
        && inn.index_of(&PartialAut::identity(k)).is_some();
    t.check(ok, || format!("Inn({label}) has order {}", inn.order()));
    Ok(())
}

fn inn(n: usize) -> Result<Vec<Check>> {
    limit("Inn suite degree", n, 3)?;
    let mut out = vec![];
    out.push(timed(Suite::Inn, "Inn(Z2), Inn(Z3) are 2-chains", |t| {
        two_chain_check(t, "Z2", &cyclic_group(2))?;
        two_chain_check(t, "Z3", &cyclic_group(3))
    })?);
    out.push(timed(Suite::Inn, "Inn(S3) = inner automorphisms + empty map", |t| {
        let s = symmetric_group(3);
        let inn = inner::generate_inn(&s)?;
        let mut conj = vec![];
        for g in 0..6 {
            let gi = s.group_inverse(g).ok_or(Error::NotAGroup)?;
            let pairs: Vec<(usize, usize)> = (0..6).map(|x| (x, s.mul(s.mul(gi, x), g))).collect();
            conj.push(PartialAut::new(6, &pairs)?);
        }
        conj.push(PartialAut::empty(6));
        conj.sort();
        conj.dedup();
        let mut got = inn.elements().to_vec();
        got.sort();
        t.check(got == conj && got.len() == 7, || format!("order {}", got.len()));
        Ok(())
    })?);
    out.push(timed(Suite::Inn, format!("Inn(I_k) ≅ I_k for k ≤ {n}"), |t| {
        for k in 1..=n {
            let m = TransformationMonoid::build(TransformKind::Injective, k)?;
            let s = m.table();
            let w = WithOne::new(s);
            let phi: Vec<PartialAut> = (0..s.order())
                .map(|g| inner::phi_gh(&w, g, s.inverses(g)[0]))
                .collect();
            let inn = inner::generate_inn(s)?;
            let mut distinct = phi.clone();
            distinct.sort();
            distinct.dedup();
            let onto = inn.order() == s.order() && distinct.len() == s.order();
            t.check(onto, || format!("I_{k}: Inn order {}", inn.order()));
            for g in 0..s.order() {
                for h in 0..s.order() {
                    t.check(phi[g].then(&phi[h]) == phi[s.mul(g, h)], || format!("I_{k}: {g} {h}"));
                }
            }
        }
        Ok(())
    })?);
    out.push(timed(Suite::Inn, format!("T_k generator census for k ≤ {n}"), |t| {
        for k in 1..=n {
            let c = inner::tn_generator_census(k)?;
            t.check(c.agrees(), || format!("{c:?}"));
        }
        Ok(())
    })?);
    out.push(timed(Suite::Inn, "φ_{g,h}φ_{k,l} ⊆ φ_{gk,lh} on all fixtures", |t| {
        for (label, s) in fixtures::all() {
            let w = WithOne::new(&s);
            let k = w.len1();
            let phi: Vec<PartialAut> = (0..k * k).map(|i| inner::phi_gh(&w, i / k, i % k)).collect();
            for g1 in 0..k {
                for h1 in 0..k {
                    for g2 in 0..k {
                        for h2 in 0..k {
                            let lhs = phi[g1 * k + h1].then(&phi[g2 * k + h2]);
                            let rhs = &phi[w.mul(g1, g2) * k + w.mul(h2, h1)];
                            t.check(lhs.is_restriction_of(rhs), || format!("{label}: {g1} {h1} {g2} {h2}"));
                        }
                    }
                }
            }
        }
        let z2 = cyclic_group(2);
        let w = WithOne::new(&z2);
        let lhs = inner::phi_gh(&w, 0, 1).then(&inner::phi_gh(&w, 0, 1));
        let rhs = inner::phi_gh(&w, 0, 0);
        t.check(lhs.is_restriction_of(&rhs) && lhs != rhs, || "Z2 inclusion is not strict".into());
        Ok(())
    })?);
    Ok(out)
}

fn polycyclic(n: usize, max: usize) -> Result<Vec<Check>> {
    limit("polycyclic oracle rank", n, 3)?;
    limit("polycyclic oracle radius", max, polycyclic::MAX_ORACLE_RADIUS)?;
    let start = Instant::now();
    let ball = polycyclic::Ball::new(n, max)?;
    let ball_ms = start.elapsed().as_millis();
    let mut out = vec![];
    for rel in GrowthRelation::ALL {
        let mut c = timed(Suite::Polycyclic, format!("n={n} {} closed form = series = oracle", rel.tag()), |t| {
            let values = polycyclic::growth_values(rel, n, max)?;
            let series = polycyclic::series_coefficients(rel, n, max)?;
            let oracle = ball.counts(rel);
            for m in 0..=max {
                t.check(values[m] == series[m] && oracle[m] == values[m], || {
                    format!("m={m}: {} {} {}", values[m], series[m], oracle[m])
                });
            }
            Ok(())
        })?;
        c.millis += ball_ms / GrowthRelation::ALL.len() as u128;
        out.push(c);
    }
    Ok(out)
}
