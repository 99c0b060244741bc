//! Rees matrix semigroups M(Γ;I,Λ;P) and M⁰(Γ;I,Λ;P).

use crate::error::{Error, Result};
use crate::io::bound;
use crate::semigroup::CayleyTable;

pub const MAX_ORDER: usize = 5000;

/// Γ, |I|, |Λ| and the Λ×I sandwich matrix. `None` entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesMatrixSpec {
    pub group: CayleyTable,
    pub i_size: usize,
    pub lambda_size: usize,
    pub sandwich: Vec<Vec<Option<usize>>>,
}

/// A nonzero element (A, g, α).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub i: usize,
    pub g: usize,
    pub lambda: usize,
}

impl ReesMatrixSpec {
    pub fn new(
        group: CayleyTable,
        i_size: usize,
        lambda_size: usize,
        sandwich: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        if !group.is_group() {
            return Err(Error::NotAGroup);
        }
        if i_size == 0 || lambda_size == 0 {
            return Err(Error::NotSquare);
        }
        if sandwich.len() != lambda_size {
            return Err(Error::SizeMismatch(sandwich.len(), lambda_size));
        }
        for row in &sandwich {
            if row.len() != i_size {
                return Err(Error::SizeMismatch(row.len(), i_size));
            }
            if let Some(&Some(v)) = row.iter().find(|e| matches!(e, Some(v) if *v >= group.order())) {
                return Err(Error::NoSuchElement(v));
            }
        }
        Ok(ReesMatrixSpec {
            group,
            i_size,
            lambda_size,
            sandwich,
        })
    }

    /// p_{αA}
    pub fn entry(&self, lambda: usize, i: usize) -> Option<usize> {
        self.sandwich[lambda][i]
    }

    pub fn has_zero_entry(&self) -> bool {
        self.sandwich.iter().flatten().any(|e| e.is_none())
    }

    pub fn has_zero_line(&self) -> bool {
        let row = self.sandwich.iter().any(|r| r.iter().all(|e| e.is_none()));
        let col = (0..self.i_size).any(|a| self.sandwich.iter().all(|r| r[a].is_none()));
        row || col
    }

    /// Index of (A, g, α), row-major in (A, g, α).
    pub fn index(&self, t: Triple) -> usize {
        (t.i * self.group.order() + t.g) * self.lambda_size + t.lambda
    }

    pub fn triple(&self, idx: usize) -> Triple {
        let l = self.lambda_size;
        let k = self.group.order();
        Triple {
            i: idx / (k * l),
            g: idx / l % k,
            lambda: idx % l,
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.i_size * self.group.order() * self.lambda_size
    }

    pub fn mul_triples(&self, a: Triple, b: Triple) -> Option<Triple> {
        let p = self.entry(a.lambda, b.i)?;
        let gr = &self.group;
        Some(Triple {
            i: a.i,
            g: gr.mul(gr.mul(a.g, p), b.g),
            lambda: b.lambda,
        })
    }
}

/// A Rees matrix semigroup with its Cayley table. With a zero, the zero is the last index.
#[derive(Debug, Clone)]
pub struct ReesMatrix {
    spec: ReesMatrixSpec,
    with_zero: bool,
    table: CayleyTable,
}

impl ReesMatrix {
    pub fn build(spec: ReesMatrixSpec, with_zero: bool) -> Result<Self> {
        if with_zero {
            if spec.has_zero_line() {
                return Err(Error::AllZeroRowOrColumn);
            }
        } else if spec.has_zero_entry() {
            return Err(Error::ZeroEntryWithoutZero);
        }
        let m = spec.nonzero_count();
        let order = m + with_zero as usize;
        bound("Rees matrix semigroup order", order, MAX_ORDER)?;
        let table = CayleyTable::from_fn(order, |a, b| {
            if a == m || b == m {
                return m;
            }
            match spec.mul_triples(spec.triple(a), spec.triple(b)) {
                Some(t) => spec.index(t),
                None => m,
            }
        });
        let mut labels: Vec<String> = (0..m)
            .map(|x| {
                let t = spec.triple(x);
                format!("({},{},{})", t.i + 1, spec.group.label(t.g), t.lambda + 1)
            })
            .collect();
        if with_zero {
            labels.push("0".into());
        }
        Ok(ReesMatrix {
            table: table.with_labels(labels),
            spec,
            with_zero,
        })
    }

    pub fn spec(&self) -> &ReesMatrixSpec {
        &self.spec
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn zero(&self) -> Option<usize> {
        self.with_zero.then(|| self.spec.nonzero_count())
    }

    pub fn triple(&self, idx: usize) -> Result<Triple> {
        if Some(idx) == self.zero() {
            return Err(Error::ZeroElement);
        }
        if idx >= self.table.order() {
            return Err(Error::NoSuchElement(idx));
        }
        Ok(self.spec.triple(idx))
    }

    pub fn index(&self, t: Triple) -> usize {
        self.spec.index(t)
    }
}

/// ∼n between nonzero triples: equal, or p_{βB} ≠ 0 ≠ p_{αA} and p_{βB}·b = g⁻¹·a·p_{αA}·g for some g.
pub fn rees_conj_n(spec: &ReesMatrixSpec, a: Triple, b: Triple) -> bool {
    if a == b {
        return true;
    }
    let (Some(pa), Some(pb)) = (spec.entry(a.lambda, a.i), spec.entry(b.lambda, b.i)) else {
        return false;
    };
    let gr = &spec.group;
    let lhs = gr.mul(pb, b.g);
    let x = gr.mul(a.g, pa);
    (0..gr.order()).any(|g| {
        let gi = gr.group_inverse(g).expect("group element");
        gr.mul(gr.mul(gi, x), g) == lhs
    })
}

/// Same as [`rees_conj_n`] on element indices of a built semigroup.
pub fn rees_conj_n_idx(m: &ReesMatrix, a: usize, b: usize) -> Result<bool> {
    Ok(rees_conj_n(m.spec(), m.triple(a)?, m.triple(b)?))
}

/// Every Λ×I matrix over Γ ∪ {0} with no zero row or column.
pub fn all_sandwiches(group_order: usize, i_size: usize, lambda_size: usize) -> Vec<Vec<Vec<Option<usize>>>> {
    let cells = i_size * lambda_size;
    let base = group_order + 1;
    let total = base.pow(cells as u32);
    let mut out = vec![];
    for mut code in 0..total {
        let mut p = vec![vec![None; i_size]; lambda_size];
        for c in 0..cells {
            let v = code % base;
            code /= base;
            p[c / i_size][c % i_size] = (v < group_order).then_some(v);
        }
        let row = p.iter().any(|r| r.iter().all(|e| e.is_none()));
        let col = (0..i_size).any(|a| p.iter().all(|r| r[a].is_none()));
        if !row && !col {
            out.push(p);
        }
    }
    out
}
