//! All semigroups of small order up to isomorphism, by backtracking over tables.

use crate::io::bound;
use crate::error::Result;
use crate::semigroup::{permutations, CayleyTable};
use std::collections::BTreeSet;

const UNSET: u8 = u8::MAX;

/// Every associative table on `0..n`, labelled (not up to isomorphism).
pub fn all_tables(n: usize) -> Result<Vec<Vec<u8>>> {
    bound("semigroup order", n, 4)?;
    let mut t = vec![UNSET; n * n];
    let mut out = vec![];
    fill(n, 0, &mut t, &mut out);
    Ok(out)
}

fn consistent(n: usize, t: &[u8]) -> bool {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            if ab == UNSET {
                continue;
            }
            for c in 0..n {
                let bc = t[b * n + c];
                if bc == UNSET {
                    continue;
                }
                let l = t[ab as usize * n + c];
                let r = t[a * n + bc as usize];
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn fill(n: usize, cell: usize, t: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if cell == n * n {
        out.push(t.clone());
        return;
    }
    for v in 0..n as u8 {
        t[cell] = v;
        if consistent(n, t) {
            fill(n, cell + 1, t, out);
        }
    }
    t[cell] = UNSET;
}

fn canonical(n: usize, t: &[u8], perms: &[Vec<usize>]) -> Vec<u8> {
    perms
        .iter()
        .map(|p| {
            let mut r = vec![0u8; n * n];
            for a in 0..n {
                for b in 0..n {
                    r[p[a] * n + p[b]] = p[t[a * n + b] as usize] as u8;
                }
            }
            r
        })
        .min()
        .unwrap()
}

/// One representative per isomorphism class.
pub fn semigroups_up_to_iso(n: usize) -> Result<Vec<CayleyTable>> {
    let perms = permutations(n);
    let reps: BTreeSet<Vec<u8>> = all_tables(n)?
        .iter()
        .map(|t| canonical(n, t, &perms))
        .collect();
    Ok(reps
        .into_iter()
        .map(|t| CayleyTable::from_trusted(n, t.into_iter().map(u32::from).collect()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(semigroups_up_to_iso(1).unwrap().len(), 1);
        assert_eq!(semigroups_up_to_iso(2).unwrap().len(), 5);
        assert_eq!(semigroups_up_to_iso(3).unwrap().len(), 24);
        assert_eq!(all_tables(2).unwrap().len(), 8);
    }
}
