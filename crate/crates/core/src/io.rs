//! Text formats.
//!
//! Cayley tables: first line `n`, then n rows of n 0-based indices, then optional
//! `identity=i`, `zero=i` and `label i text` lines. `#` starts a comment line.

use crate::error::{parse_err, Error, Result};
use crate::semigroup::CayleyTable;

pub fn parse_cayley(text: &str) -> Result<CayleyTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = first
        .parse()
        .map_err(|_| parse_err(ln, format!("expected order, found {first:?}")))?;
    if n == 0 {
        return Err(parse_err(ln, "order must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(ln, format!("expected {n} table rows")))?;
        let row = l
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse_err(ln, format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(parse_err(ln, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    let mut identity = None;
    let mut zero = None;
    let mut labels: Vec<Option<String>> = vec![None; n];
    for (ln, l) in lines {
        if let Some(v) = l.strip_prefix("identity=") {
            identity = Some((ln, v.trim().parse::<usize>().map_err(|_| parse_err(ln, "bad identity"))?));
        } else if let Some(v) = l.strip_prefix("zero=") {
            zero = Some((ln, v.trim().parse::<usize>().map_err(|_| parse_err(ln, "bad zero"))?));
        } else if let Some(rest) = l.strip_prefix("label") {
            let mut it = rest.trim().splitn(2, char::is_whitespace);
            let i: usize = it
                .next()
                .and_then(|x| x.parse().ok())
                .filter(|&i| i < n)
                .ok_or_else(|| parse_err(ln, "bad label index"))?;
            let s = it.next().map(str::trim).filter(|s| !s.is_empty());
            labels[i] = Some(s.ok_or_else(|| parse_err(ln, "missing label text"))?.to_string());
        } else {
            return Err(parse_err(ln, format!("unexpected line {l:?}")));
        }
    }
    let mut s = CayleyTable::new(&rows)?;
    if let Some((ln, e)) = identity {
        s.declare_identity(e)
            .map_err(|_| parse_err(ln, format!("{e} is not an identity")))?;
    }
    if let Some((ln, z)) = zero {
        s.declare_zero(z)
            .map_err(|_| parse_err(ln, format!("{z} is not a zero")))?;
    }
    if labels.iter().any(Option::is_some) {
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
            .collect();
        s = s.with_labels(labels);
    }
    Ok(s)
}

pub fn format_cayley(s: &CayleyTable) -> String {
    let mut out = format!("{}\n", s.order());
    for row in s.rows() {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&r.join(" "));
        out.push('\n');
    }
    if let Some(e) = s.identity() {
        out.push_str(&format!("identity={e}\n"));
    }
    if let Some(z) = s.zero() {
        out.push_str(&format!("zero={z}\n"));
    }
    if let Some(l) = s.labels() {
        for (i, x) in l.iter().enumerate() {
            out.push_str(&format!("label {i} {x}\n"));
        }
    }
    out
}

/// Parses a brace-delimited list of integers, e.g. `{1,2}`.
pub fn parse_set(text: &str) -> Result<Vec<usize>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(|| parse_err(1, format!("expected {{...}}, found {t:?}")))?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| parse_err(1, format!("bad set entry {x:?}"))))
        .collect()
}

pub(crate) fn bound(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::BoundExceeded {
            what: what.into(),
            value,
            limit,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# c\n2\n0 0\n0 1\nidentity=1\nlabel 0 z\n";
        let s = parse_cayley(text).unwrap();
        assert_eq!(s.identity(), Some(1));
        assert_eq!(s.zero(), Some(0));
        assert_eq!(s.label(0), "z");
        assert_eq!(parse_cayley(&format_cayley(&s)).unwrap(), s);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_cayley("2\n0 0\n0 x\n").unwrap_err();
        assert_eq!(err, parse_err(3, "bad entry \"x\""));
        assert!(matches!(parse_cayley("2\n0 0\n0 1\nzero=1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_cayley("2\n0 3\n0 1\n"), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn sets() {
        assert_eq!(parse_set("{1, 2}").unwrap(), vec![1, 2]);
        assert_eq!(parse_set("{}").unwrap(), Vec::<usize>::new());
    }
}
