//! Loading semigroups from the three input formats.

use conjlab::diagram::Diagram;
use conjlab::io::parse_cayley;
use conjlab::transform::PartialMap;
use conjlab::{CayleyTable, Error, Result};
use std::collections::HashMap;
use std::hash::Hash;

/// Order above which pairwise work needs `--force`.
pub const GUARD: usize = 5000;
/// Hard cap on generated semigroups, even with `--force`.
pub const HARD_CAP: usize = 20_000;

pub fn read(path: &str) -> std::io::Result<String> {
    if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Cayley,
    Transformations,
    Diagrams,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn detect(text: &str) -> Format {
    match content_lines(text).next() {
        Some((_, l)) if l.starts_with('[') => Format::Transformations,
        Some((_, l)) if l.contains(';') => Format::Diagrams,
        _ => Format::Cayley,
    }
}

fn with_line(ln: usize, e: Error) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line: ln, msg },
        other => Error::Parse {
            line: ln,
            msg: other.to_string(),
        },
    }
}

/// The semigroup generated by `gens` under `mul`, labelled by `label`.
pub fn close<T: Clone + Eq + Hash>(
    gens: Vec<T>,
    mul: impl Fn(&T, &T) -> T,
    label: impl Fn(&T) -> String,
    cap: usize,
) -> Result<CayleyTable> {
    let mut elems: Vec<T> = vec![];
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut gen_idx = vec![];
    for g in gens {
        let i = *index.entry(g.clone()).or_insert_with(|| {
            elems.push(g);
            elems.len() - 1
        });
        if !gen_idx.contains(&i) {
            gen_idx.push(i);
        }
    }
    let mut right: Vec<Vec<u32>> = vec![];
    let mut k = 0;
    while k < elems.len() {
        let mut row = vec![];
        for &g in &gen_idx {
            let p = mul(&elems[k], &elems[g]);
            let next = elems.len();
            let i = *index.entry(p.clone()).or_insert(next);
            if i == next {
                elems.push(p);
                if elems.len() > cap {
                    return Err(Error::BoundExceeded {
                        what: "generated semigroup order".into(),
                        value: elems.len(),
                        limit: cap,
                    });
                }
            }
            row.push(i as u32);
        }
        right.push(row);
        k += 1;
    }
    // every element is a word in the generators; extend products along words
    let n = elems.len();
    let mut word: Vec<Option<(usize, usize)>> = vec![None; n];
    for (k, row) in right.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            let p = p as usize;
            if word[p].is_none() && !gen_idx.contains(&p) {
                word[p] = Some((k, j));
            }
        }
    }
    let mut table = vec![0u32; n * n];
    // order elements so that prefixes come first
    let mut order: Vec<usize> = gen_idx.clone();
    let mut seen = vec![false; n];
    for &g in &gen_idx {
        seen[g] = true;
    }
    let mut q = 0;
    while q < order.len() {
        let k = order[q];
        for &p in &right[k] {
            let p = p as usize;
            if !seen[p] && word[p].map(|(src, _)| src) == Some(k) {
                seen[p] = true;
                order.push(p);
            }
        }
        q += 1;
    }
    for a in 0..n {
        for &b in &order {
            let v = match word[b] {
                None => right[a][gen_idx.iter().position(|&g| g == b).expect("generator")],
                Some((pre, j)) => right[table[a * n + pre] as usize][j],
            };
            table[a * n + b] = v;
        }
    }
    Ok(CayleyTable::from_trusted(n, table).with_labels(elems.iter().map(label).collect()))
}

pub fn parse_transformations(text: &str) -> Result<Vec<PartialMap>> {
    let mut out: Vec<PartialMap> = vec![];
    for (ln, l) in content_lines(text) {
        let a: PartialMap = l.parse().map_err(|e| with_line(ln, e))?;
        if let Some(first) = out.first() {
            if first.n() != a.n() {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("degree {} differs from {}", a.n(), first.n()),
                });
            }
        }
        out.push(a);
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "no transformations".into(),
        });
    }
    Ok(out)
}

pub fn parse_diagrams(text: &str) -> Result<Vec<Diagram>> {
    let mut out: Vec<Diagram> = vec![];
    for (ln, l) in content_lines(text) {
        let d: Diagram = l.parse().map_err(|e| with_line(ln, e))?;
        if let Some(first) = out.first() {
            if first.n() != d.n() {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("degree {} differs from {}", d.n(), first.n()),
                });
            }
        }
        out.push(d);
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "no diagrams".into(),
        });
    }
    Ok(out)
}

/// Cayley table as given, or the semigroup generated by a transformation or diagram list.
pub fn load_semigroup(text: &str, force: bool) -> Result<CayleyTable> {
    let cap = if force { HARD_CAP } else { GUARD };
    let s = match detect(text) {
        Format::Cayley => parse_cayley(text)?,
        Format::Transformations => close(
            parse_transformations(text)?,
            |a, b| a.then(b),
            |a| a.to_string(),
            cap,
        )?,
        Format::Diagrams => close(
            parse_diagrams(text)?,
            |a, b| a.mul(b).expect("equal degrees"),
            |a| a.to_string(),
            cap,
        )?,
    };
    guard(s.order(), force)?;
    Ok(s)
}

pub fn guard(order: usize, force: bool) -> Result<()> {
    if order > GUARD && !force {
        return Err(Error::BoundExceeded {
            what: "semigroup order (pass --force to override)".into(),
            value: order,
            limit: GUARD,
        });
    }
    Ok(())
}

/// An element by label, falling back to a 0-based index.
pub fn element(s: &CayleyTable, token: &str) -> Result<usize> {
    if let Some(i) = s.index_of_label(token.trim()) {
        return Ok(i);
    }
    match token.trim().parse::<usize>() {
        Ok(i) if i < s.order() => Ok(i),
        Ok(i) => Err(Error::NoSuchElement(i)),
        Err(_) => Err(Error::Parse {
            line: 1,
            msg: format!("no element labelled `{token}`"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_matches_direct_products() {
        let gens: Vec<PartialMap> = ["[2,3,1]", "[2,1,3]", "[1,1,3]"].iter().map(|s| s.parse().unwrap()).collect();
        let t = close(gens, |a, b| a.then(b), |a| a.to_string(), 100).unwrap();
        assert_eq!(t.order(), 27);
        let labels = t.labels().unwrap();
        let elems: Vec<PartialMap> = labels.iter().map(|l| l.parse().unwrap()).collect();
        for a in 0..27 {
            for b in 0..27 {
                assert_eq!(elems[t.mul(a, b)], elems[a].then(&elems[b]));
            }
        }
    }

    #[test]
    fn detection() {
        assert_eq!(detect("# c\n[1,2]\n"), Format::Transformations);
        assert_eq!(detect("2; {1,1'}{2,2'}"), Format::Diagrams);
        assert_eq!(detect("1\n0\n"), Format::Cayley);
    }
}
