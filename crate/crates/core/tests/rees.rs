use conjlab::inner::generate_inn;
use conjlab::rees::*;
use conjlab::semigroup::{cyclic_group, symmetric_group, CayleyTable};
use conjlab::{Conjugacy, RelationKind};
use std::collections::BTreeSet;

fn check_all(gr: &CayleyTable, i_size: usize, l_size: usize) -> usize {
    let mut checked = 0;
    for p in all_sandwiches(gr.order(), i_size, l_size) {
        let spec = ReesMatrixSpec::new(gr.clone(), i_size, l_size, p).unwrap();
        let m = ReesMatrix::build(spec, true).unwrap();
        let t = m.table();
        let nrel = Conjugacy::new(t).relation(RelationKind::N).unwrap();
        let z = m.zero().unwrap();
        for a in 0..t.order() {
            for b in 0..t.order() {
                if a == z || b == z {
                    continue;
                }
                assert_eq!(rees_conj_n_idx(&m, a, b).unwrap(), nrel.get(a, b), "{} {}", t.label(a), t.label(b));
            }
        }
        checked += 1;
    }
    checked
}

#[test]
fn criterion_matches_brute_force() {
    for gr in [cyclic_group(2), cyclic_group(3), symmetric_group(3)] {
        for i_size in 1..=2 {
            for l_size in 1..=2 {
                assert!(check_all(&gr, i_size, l_size) > 0);
            }
        }
    }
}

#[test]
fn abelian_identity_sandwich() {
    let spec = ReesMatrixSpec::new(cyclic_group(2), 2, 2, vec![vec![Some(0); 2]; 2]).unwrap();
    let m = ReesMatrix::build(spec, false).unwrap();
    for a in 0..8 {
        for b in 0..8 {
            let (x, y) = (m.triple(a).unwrap(), m.triple(b).unwrap());
            assert_eq!(rees_conj_n_idx(&m, a, b).unwrap(), x.g == y.g);
        }
    }
}

#[test]
fn zero_entries_and_the_zero() {
    let spec = ReesMatrixSpec::new(cyclic_group(2), 2, 2, vec![vec![Some(0), None], vec![None, Some(1)]]).unwrap();
    let m = ReesMatrix::build(spec.clone(), true).unwrap();
    let t = m.table();
    let z = m.zero().unwrap();
    assert!((0..t.order()).all(|a| t.mul(a, z) == z && t.mul(z, a) == z));
    assert_eq!(rees_conj_n_idx(&m, z, 0), Err(conjlab::Error::ZeroElement));
    // p_{αA} = 0: only equal to itself
    let a = Triple { i: 1, g: 0, lambda: 0 };
    let b = Triple { i: 1, g: 1, lambda: 0 };
    assert!(rees_conj_n(&spec, a, a));
    assert!(!rees_conj_n(&spec, a, b));
    // a primitive idempotent: nonzero, and the only nonzero idempotent below it is itself
    let idem: Vec<usize> = t.idempotents().into_iter().filter(|&e| e != z).collect();
    assert!(!idem.is_empty());
    for &e in &idem {
        for &f in &idem {
            if t.mul(e, f) == f && t.mul(f, e) == f {
                assert_eq!(e, f);
            }
        }
    }
    let bad = ReesMatrixSpec::new(symmetric_group(3), 1, 1, vec![vec![Some(9)]]);
    assert!(bad.is_err());
    let not_group = CayleyTable::from_fn(2, |a, b| a.min(b));
    assert_eq!(
        ReesMatrixSpec::new(not_group, 1, 1, vec![vec![Some(0)]]).unwrap_err(),
        conjlab::Error::NotAGroup
    );
}

#[test]
fn inn_closure_adds_nothing() {
    // on these Rees matrix semigroups the φ_{g,h} are already closed under composition
    for (gr, step) in [(cyclic_group(2), 1), (cyclic_group(3), 1), (symmetric_group(3), 23)] {
        for p in all_sandwiches(gr.order(), 2, 2).into_iter().step_by(step) {
            for with_zero in [true, false] {
                let spec = ReesMatrixSpec::new(gr.clone(), 2, 2, p.clone()).unwrap();
                let Ok(m) = ReesMatrix::build(spec, with_zero) else { continue };
                let inn = generate_inn(m.table()).unwrap();
                assert_eq!(inn.order(), inn.generators().len());
                let gens: BTreeSet<Vec<usize>> =
                    inn.generators().iter().map(|&i| inn.elements()[i].domain()).collect();
                let all: BTreeSet<Vec<usize>> = inn.elements().iter().map(|p| p.domain()).collect();
                assert_eq!(gens, all);
                assert!(inn.table().unwrap().is_inverse_semigroup());
            }
        }
    }
}
