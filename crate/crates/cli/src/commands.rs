use crate::input::{self, guard, load_semigroup};
use crate::{Command, Common, OutputFormat};
use clap::Args;
use conjlab::diagram::{self, Diagram, DiagramKind};
use conjlab::gset::{self, GEndo, GSet};
use conjlab::inner::{self, InnMonoid};
use conjlab::polycyclic::{self, GrowthRelation, PolyRelation};
use conjlab::rees::{ReesMatrix, ReesMatrixSpec};
use conjlab::semigroup::{cyclic_group, symmetric_group};
use conjlab::transform::{TransformKind, TransformationMonoid};
use conjlab::verify::{self, Suite, VerifyOptions};
use conjlab::{CayleyTable, Conjugacy, Error, RelationKind, Witness};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

pub enum CliError {
    Lib(Error),
    Io(String),
    /// A check ran and failed.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::BoundExceeded { .. }) => 3,
            CliError::Lib(_) | CliError::Io(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Failed(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn read(path: &str) -> Res<String> {
    input::read(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// Output of one command in both formats.
struct Report {
    tsv: Vec<String>,
    json: Value,
}

fn emit(common: &Common, r: Report) -> Res<()> {
    let text = match common.format {
        OutputFormat::Tsv => {
            let mut s = r.tsv.join("\n");
            s.push('\n');
            s
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&r.json).expect("json value");
            s.push('\n');
            s
        }
    };
    match &common.output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{p}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn big(v: u128) -> Value {
    u64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::from(v.to_string()))
}

pub fn run(common: &Common, cmd: Command) -> Res<()> {
    match cmd {
        Command::Classes { input, relation } => classes(common, &input, &relation),
        Command::Decide {
            input,
            relation,
            poly,
            a,
            b,
        } => match poly {
            Some(n) => decide_poly(common, n, &relation, &a, &b),
            None => decide(common, input.as_deref().unwrap_or("-"), &relation, &a, &b),
        },
        Command::Compare { input, relations } => compare(common, &input, relations.as_deref()),
        Command::Inn { input, elements } => inn(common, &input, elements),
        Command::Build(args) => build(common, &args),
        Command::Diagram {
            kind,
            n,
            relation,
            a,
            b,
        } => {
            let kind: DiagramKind = kind.parse()?;
            match (n, a) {
                (Some(n), _) => diagram_classes(common, kind, n, &relation),
                (None, Some(a)) => diagram_pair(common, kind, &a, b.as_deref()),
                (None, None) => Err(CliError::Lib(Error::Parse {
                    line: 1,
                    msg: "diagram needs --n or --a".into(),
                })),
            }
        }
        Command::Gset { input, a, b } => gset_cmd(common, &input, a.as_deref(), b.as_deref()),
        Command::Polygrowth {
            n,
            max,
            relation,
            verify,
        } => polygrowth(common, n, max, &relation, verify),
        Command::Verify { suite, n, max } => verify_cmd(common, &suite, n, max),
    }
}

fn classes(common: &Common, path: &str, relation: &str) -> Res<()> {
    let rel: RelationKind = relation.parse()?;
    let s = load_semigroup(&read(path)?, common.force)?;
    let c = Conjugacy::new(&s);
    let p = c.classes(rel)?;
    let mut tsv = vec!["class\tsize\tmembers".to_string()];
    let mut js = vec![];
    for (k, class) in p.classes.iter().enumerate() {
        let labels: Vec<String> = class.iter().map(|&x| s.label(x)).collect();
        tsv.push(format!("{}\t{}\t{}", k + 1, class.len(), labels.join("\t")));
        js.push(json!({ "size": class.len(), "members": class, "labels": labels }));
    }
    emit(
        common,
        Report {
            tsv,
            json: json!({ "relation": rel.tag(), "order": s.order(), "classes": js }),
        },
    )
}

fn describe_witness(c: &Conjugacy, w: &Witness) -> String {
    let l = |x: usize| c.label1(x);
    match w {
        Witness::PairGH { g, h } => format!("g={} h={}", l(*g), l(*h)),
        Witness::Chain(v) => {
            let steps: Vec<String> = v.iter().map(|(u, w)| format!("({},{})", l(*u), l(*w))).collect();
            format!("chain={}", steps.join(";"))
        }
        Witness::SinglePower { g, h, m } => format!("g={} h={} m={m}", l(*g), l(*h)),
        Witness::UnitG { g } => format!("g={}", l(*g)),
        Witness::IChain(v) => {
            let ws: Vec<String> = v.iter().map(|&g| l(g)).collect();
            format!("word={}", ws.join(","))
        }
    }
}

fn decide(common: &Common, path: &str, relation: &str, a: &str, b: &str) -> Res<()> {
    let rel: RelationKind = relation.parse()?;
    let s = load_semigroup(&read(path)?, common.force)?;
    let (ia, ib) = (input::element(&s, a)?, input::element(&s, b)?);
    let c = Conjugacy::new(&s);
    let w = c.decide(rel, ia, ib)?;
    if let Some(w) = &w {
        if !c.verify(rel, ia, ib, w) {
            return Err(CliError::Failed(format!("witness {w:?} does not verify")));
        }
    }
    let text = w.as_ref().map(|w| describe_witness(&c, w)).unwrap_or_else(|| "-".into());
    emit(
        common,
        Report {
            tsv: vec![
                "a\tb\trelation\trelated\twitness".into(),
                format!("{}\t{}\t{}\t{}\t{}", s.label(ia), s.label(ib), rel.tag(), w.is_some(), text),
            ],
            json: json!({
                "a": ia, "b": ib, "relation": rel.tag(), "related": w.is_some(),
                "witness": w, "witness_labels": text,
            }),
        },
    )
}

fn decide_poly(common: &Common, n: usize, relation: &str, a: &str, b: &str) -> Res<()> {
    let rel: PolyRelation = relation.parse()?;
    let x = polycyclic::parse_element(a, n)?;
    let y = polycyclic::parse_element(b, n)?;
    let related = polycyclic::poly_conj(rel, &x, &y);
    let (rx, ry) = (x.cyclic_reduce(), y.cyclic_reduce());
    emit(
        common,
        Report {
            tsv: vec![
                "a\tb\trelation\trelated\treduced_a\treduced_b".into(),
                format!("{x}\t{y}\t{relation}\t{related}\t{rx}\t{ry}"),
            ],
            json: json!({
                "a": x.to_string(), "b": y.to_string(), "relation": relation, "related": related,
                "reduced_a": rx.to_string(), "reduced_b": ry.to_string(),
            }),
        },
    )
}

fn compare(common: &Common, path: &str, relations: Option<&str>) -> Res<()> {
    let s = load_semigroup(&read(path)?, common.force)?;
    let c = Conjugacy::new(&s);
    let rels: Vec<RelationKind> = match relations {
        Some(list) => list.split(',').map(|t| t.parse()).collect::<conjlab::Result<_>>()?,
        None => RelationKind::ALL.into_iter().filter(|&r| c.relation(r).is_ok()).collect(),
    };
    let m = c.compare(&rels)?;
    let mut tsv = vec!["left\tright\tinclusion".to_string()];
    let mut js = vec![];
    for i in 0..rels.len() {
        for j in i + 1..rels.len() {
            tsv.push(format!("{}\t{}\t{}", rels[i], rels[j], m[i][j].symbol()));
            js.push(json!({ "left": rels[i].tag(), "right": rels[j].tag(), "inclusion": m[i][j] }));
        }
    }
    emit(common, Report { tsv, json: json!({ "order": s.order(), "pairs": js }) })
}

fn inn(common: &Common, path: &str, elements: bool) -> Res<()> {
    let s = load_semigroup(&read(path)?, common.force)?;
    let m: InnMonoid = inner::generate_inn(&s)?;
    let sum = m.summary();
    let mut tsv = vec![
        format!("order\t{}", sum.order),
        format!("generators\t{}", sum.generators),
        format!("idempotents\t{}", sum.idempotents),
        format!("r_classes\t{}", sum.r_classes),
        format!("l_classes\t{}", sum.l_classes),
        format!("contains_empty\t{}", sum.contains_empty),
        format!("contains_identity\t{}", sum.contains_identity),
    ];
    for ((d, i), k) in &sum.shapes {
        tsv.push(format!("shape\t{d}\t{i}\t{k}"));
    }
    let mut js_elems = vec![];
    if elements {
        for (k, p) in m.elements().iter().enumerate() {
            let src = m
                .source(k)
                .map(|(g, h)| format!("phi({},{})", label1(&s, g), label1(&s, h)))
                .unwrap_or_else(|| "-".into());
            tsv.push(format!("element\t{k}\t{}\t{}\t{p}\t{src}", p.domain().len(), p.image().len()));
            js_elems.push(json!({ "map": p.to_string(), "domain": p.domain(), "image": p.image(), "source": src }));
        }
    }
    emit(common, Report { tsv, json: json!({ "summary": sum, "elements": js_elems }) })
}

fn label1(s: &CayleyTable, x: usize) -> String {
    if x < s.order() {
        s.label(x)
    } else {
        "1".into()
    }
}

#[derive(Args)]
pub struct BuildArgs {
    /// full, partial, injective, order-preserving, order-preserving-injective, image,
    /// partition, partial-brauer, brauer, gset or rees.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: Option<usize>,
    /// Y for `--kind image`, 1-based, e.g. `{1,2}`.
    #[arg(long)]
    image: Option<String>,
    /// G-set file for `--kind gset`.
    #[arg(long)]
    input: Option<String>,
    /// Group for `--kind rees`: z<k> or s<k>.
    #[arg(long, default_value = "z1")]
    group: String,
    /// Sandwich matrix rows (one per Λ index) separated by `;`, entries 0-based group indices or `-` for zero.
    #[arg(long)]
    sandwich: Option<String>,
    /// Build M⁰ instead of M.
    #[arg(long)]
    zero: bool,
}

fn need_n(n: Option<usize>) -> Res<usize> {
    n.ok_or_else(|| {
        CliError::Lib(Error::Parse {
            line: 1,
            msg: "--n is required for this kind".into(),
        })
    })
}

fn parse_group(s: &str) -> Res<CayleyTable> {
    let bad = || {
        CliError::Lib(Error::Parse {
            line: 1,
            msg: format!("unknown group `{s}`, expected z<k> or s<k>"),
        })
    };
    let k: usize = s.get(1..).and_then(|t| t.parse().ok()).filter(|&k| k > 0).ok_or_else(bad)?;
    match s.chars().next().map(|c| c.to_ascii_lowercase()) {
        Some('z') => {
            guard(k, false)?;
            Ok(cyclic_group(k))
        }
        Some('s') if k <= 6 => Ok(symmetric_group(k)),
        Some('s') => Err(CliError::Lib(Error::BoundExceeded {
            what: "symmetric group degree".into(),
            value: k,
            limit: 6,
        })),
        _ => Err(bad()),
    }
}

fn parse_sandwich(text: &str) -> Res<Vec<Vec<Option<usize>>>> {
    text.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|t| {
                    if t == "-" {
                        Ok(None)
                    } else {
                        t.parse().map(Some).map_err(|_| {
                            CliError::Lib(Error::Parse {
                                line: 1,
                                msg: format!("bad sandwich entry `{t}`"),
                            })
                        })
                    }
                })
                .collect()
        })
        .collect()
}

fn build(common: &Common, a: &BuildArgs) -> Res<()> {
    let kind = a.kind.to_ascii_lowercase();
    let tkind = match kind.as_str() {
        "full" | "t" => Some(TransformKind::Full),
        "partial" | "pt" => Some(TransformKind::Partial),
        "injective" | "i" => Some(TransformKind::Injective),
        "order-preserving" | "o" => Some(TransformKind::OrderPreserving),
        "order-preserving-injective" | "oi" => Some(TransformKind::OrderPreservingInjective),
        "image" => {
            let y = conjlab::io::parse_set(a.image.as_deref().unwrap_or("{}"))?;
            let n = need_n(a.n)?;
            if y.is_empty() || y.iter().any(|&p| p == 0 || p > n) {
                return Err(CliError::Lib(Error::ImageNotInY));
            }
            Some(TransformKind::ImageIn(y.iter().map(|p| p - 1).collect()))
        }
        _ => None,
    };
    let (name, table) = if let Some(k) = tkind {
        let n = need_n(a.n)?;
        let m = TransformationMonoid::build(k.clone(), n)?;
        (k.name(n), m.table().clone())
    } else {
        match kind.as_str() {
            "gset" => {
                let x = GSet::parse(&read(a.input.as_deref().unwrap_or("-"))?)?;
                guard(gset::count_end(&x), common.force)?;
                let m = gset::EndMonoid::build(&x)?;
                ("End_G(X)".to_string(), m.table().clone())
            }
            "rees" => {
                let group = parse_group(&a.group)?;
                let p = parse_sandwich(a.sandwich.as_deref().unwrap_or("0"))?;
                let lambda = p.len();
                let i = p.first().map_or(0, Vec::len);
                let spec = ReesMatrixSpec::new(group, i, lambda, p)?;
                let m = ReesMatrix::build(spec, a.zero)?;
                (if a.zero { "M0" } else { "M" }.to_string(), m.table().clone())
            }
            other => {
                let k: DiagramKind = other.parse()?;
                let n = need_n(a.n)?;
                if k.count(n) > input::GUARD as u128 && !common.force {
                    guard(usize::try_from(k.count(n)).unwrap_or(usize::MAX), false)?;
                }
                (k.name(n), diagram::DiagramMonoid::build(k, n)?.table().clone())
            }
        }
    };
    let text = conjlab::io::format_cayley(&table);
    let labels: Vec<String> = (0..table.order()).map(|i| table.label(i)).collect();
    emit(
        common,
        Report {
            tsv: vec![format!("# {name}"), text.trim_end().to_string()],
            json: json!({
                "name": name, "order": table.order(), "table": table.rows(), "labels": labels,
                "identity": table.identity(), "zero": table.zero(),
            }),
        },
    )
}

fn diagram_classes(common: &Common, kind: DiagramKind, n: usize, relation: &str) -> Res<()> {
    let rel: RelationKind = relation.parse()?;
    if !matches!(rel, RelationKind::N | RelationKind::Tr | RelationKind::PStar) {
        return Err(Error::RelationUnsupported(format!("diagram classification supports n, tr and pstar, not {rel}")).into());
    }
    let count = kind.count(n);
    if count > input::GUARD as u128 && !common.force {
        guard(usize::try_from(count).unwrap_or(usize::MAX), false)?;
    }
    let elems = diagram::enumerate(kind, n)?;
    // group by a key that is exact for tr and sufficient for n, then merge with the decider
    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, d) in elems.iter().enumerate() {
        let key = if rel == RelationKind::N {
            diagram::orbit_canonical(&diagram::normalize_n(d, kind)?.0)?.to_string()
        } else {
            d.cycle_type_omega_plus_one().to_string()
        };
        groups.entry(key).or_default().push(i);
    }
    let mut classes: Vec<(String, Vec<usize>)> = vec![];
    for (key, members) in groups {
        let rep = &elems[members[0]];
        let mut merged = false;
        if rel == RelationKind::N {
            for (_, c) in classes.iter_mut() {
                if diagram::conj_n(kind, &elems[c[0]], rep)? {
                    c.extend(&members);
                    merged = true;
                    break;
                }
            }
        }
        if !merged {
            classes.push((key, members));
        }
    }
    let mut tsv = vec!["class\tsize\tkey\tmembers".to_string()];
    let mut js = vec![];
    for (k, (key, members)) in classes.iter_mut().enumerate() {
        members.sort();
        let labels: Vec<String> = members.iter().map(|&i| elems[i].to_string()).collect();
        tsv.push(format!("{}\t{}\t{key}\t{}", k + 1, members.len(), labels.join("\t")));
        js.push(json!({ "key": key, "size": members.len(), "members": labels }));
    }
    emit(
        common,
        Report {
            tsv,
            json: json!({ "monoid": kind.name(n), "relation": rel.tag(), "classes": js }),
        },
    )
}

fn verify_pair(a: &Diagram, b: &Diagram, g: &Diagram, h: &Diagram) -> conjlab::Result<bool> {
    Ok(a.mul(g)? == g.mul(b)?
        && b.mul(h)? == h.mul(a)?
        && h.mul(a)?.mul(g)? == *b
        && g.mul(b)?.mul(h)? == *a)
}

fn diagram_pair(common: &Common, kind: DiagramKind, a: &str, b: Option<&str>) -> Res<()> {
    let da: Diagram = a.parse()?;
    if !kind.contains(&da) {
        return Err(Error::InvalidDiagram(format!("{da} is not in {}", kind.name(da.n()))).into());
    }
    let (nf, steps) = diagram::normalize_n(&da, kind)?;
    let mut tsv = vec![
        format!("diagram\t{da}"),
        format!("rank\t{}", da.rank()),
        format!("cycle_type\t{}", da.cycle_type_omega_plus_one()),
        format!("normal_form\t{nf}"),
        format!("rewrite_steps\t{}", steps.len()),
    ];
    let mut js = json!({
        "diagram": da.to_string(), "rank": da.rank(),
        "cycle_type": da.cycle_type_omega_plus_one().to_string(),
        "normal_form": nf.to_string(), "rewrite_steps": steps.len(),
    });
    if let Some(b) = b {
        let db: Diagram = b.parse()?;
        let n = diagram::conj_n(kind, &da, &db)?;
        let tr = diagram::conj_tr(&da, &db)?;
        let o = diagram::conj_o(kind, &da, &db)?;
        let c = diagram::conj_c(kind, &da, &db)?;
        let conj = diagram::find_n_conjugators(kind, &da, &db)?;
        if let Some((g, h)) = &conj {
            if !verify_pair(&da, &db, g, h)? {
                return Err(CliError::Failed(format!("conjugators {g}, {h} do not verify")));
            }
        }
        tsv.push(format!("other\t{db}"));
        tsv.push(format!("n\t{n}"));
        tsv.push(format!("tr\t{tr}"));
        tsv.push(format!("pstar\t{tr}"));
        tsv.push(format!("o\t{o}"));
        tsv.push(format!("c\t{c}"));
        if let Some((g, h)) = &conj {
            tsv.push(format!("witness\tg={g}\th={h}"));
        }
        js["other"] = json!(db.to_string());
        js["relations"] = json!({ "n": n, "tr": tr, "pstar": tr, "o": o, "c": c });
        js["witness"] = json!(conj.map(|(g, h)| [g.to_string(), h.to_string()]));
    }
    emit(common, Report { tsv, json: js })
}

fn gset_cmd(common: &Common, path: &str, a: Option<&str>, b: Option<&str>) -> Res<()> {
    let x = GSet::parse(&read(path)?)?;
    let Some(a) = a else {
        guard(gset::count_end(&x), common.force)?;
        let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for f in gset::enumerate_end(&x)? {
            groups.entry(gset::g_trim(&x, &f).canonical_form()).or_default().push(f.to_literal(&x));
        }
        let mut tsv = vec!["class\tsize\tmembers".to_string()];
        let mut js = vec![];
        for (k, (key, members)) in groups.iter().enumerate() {
            tsv.push(format!("{}\t{}\t{}", k + 1, members.len(), members.join("\t")));
            js.push(json!({ "trim": key, "size": members.len(), "members": members }));
        }
        return emit(
            common,
            Report {
                tsv,
                json: json!({ "points": x.len(), "orbits": x.orbit_count(), "classes": js }),
            },
        );
    };
    let fa = GEndo::parse(&x, a)?;
    let labels = |f: &GEndo| -> Vec<String> {
        (0..x.orbit_count())
            .map(|o| match gset::cycle_label(&x, f, o) {
                Some(k) => x.group().format(k),
                None => "-".into(),
            })
            .collect()
    };
    let mut tsv = vec![
        format!("a\t{}", fa.to_literal(&x)),
        format!("cycle_labels_a\t{}", labels(&fa).join(" ")),
        format!("trim_a\t{}", gset::g_trim(&x, &fa).canonical_form()),
    ];
    let mut js = json!({
        "a": fa.to_literal(&x), "cycle_labels_a": labels(&fa),
        "trim_a": gset::g_trim(&x, &fa).canonical_form(),
    });
    if let Some(b) = b {
        let fb = GEndo::parse(&x, b)?;
        let n = gset::conj_n_gset(&x, &fa, &fb)?;
        tsv.push(format!("b\t{}", fb.to_literal(&x)));
        tsv.push(format!("cycle_labels_b\t{}", labels(&fb).join(" ")));
        tsv.push(format!("trim_b\t{}", gset::g_trim(&x, &fb).canonical_form()));
        tsv.push(format!("n\t{n}"));
        js["b"] = json!(fb.to_literal(&x));
        js["cycle_labels_b"] = json!(labels(&fb));
        js["trim_b"] = json!(gset::g_trim(&x, &fb).canonical_form());
        js["n"] = json!(n);
    }
    emit(common, Report { tsv, json: js })
}

fn polygrowth(common: &Common, n: usize, max: usize, relation: &str, verify: bool) -> Res<()> {
    let rel: GrowthRelation = relation.parse()?;
    if verify {
        if n > 3 {
            return Err(Error::BoundExceeded {
                what: "polycyclic oracle rank".into(),
                value: n,
                limit: 3,
            }
            .into());
        }
    }
    let t = polycyclic::growth_table(rel, n, max, verify)?;
    let mut tsv = vec![if verify { "m\tclosed_form\toracle" } else { "m\tclosed_form" }.to_string()];
    let mut rows = vec![];
    for m in 0..=max {
        let oracle = t.oracle.as_ref().and_then(|o| o.get(m).copied());
        let mut line = format!("{m}\t{}", t.values[m]);
        if verify {
            line.push('\t');
            line.push_str(&oracle.map_or("-".into(), |v| v.to_string()));
        }
        tsv.push(line);
        rows.push(json!({ "m": m, "closed_form": big(t.values[m]), "series": big(t.series[m]), "oracle": oracle.map(big) }));
    }
    emit(
        common,
        Report {
            tsv,
            json: json!({ "n": n, "relation": rel.tag(), "rows": rows, "consistent": t.consistent() }),
        },
    )?;
    if !t.consistent() {
        return Err(CliError::Failed("closed form, series and oracle disagree".into()));
    }
    Ok(())
}

fn verify_cmd(common: &Common, suite: &str, n: Option<usize>, max: Option<usize>) -> Res<()> {
    let suite: Suite = suite.parse()?;
    let checks = verify::run(suite, VerifyOptions { n, max })?;
    let mut tsv = vec![];
    for c in &checks {
        tsv.push(format!(
            "{}\t{}\t{}\t{}\t{}\t{}ms\t{}",
            if c.passed { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            c.compared,
            c.failures,
            c.millis,
            c.detail
        ));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    emit(common, Report { tsv, json: json!({ "suite": suite.tag(), "checks": checks }) })?;
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} check(s) failed")));
    }
    Ok(())
}
