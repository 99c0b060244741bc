//! The natural partial order: a ≤ b iff sa = a = sb and at = a = bt for some s, t in S¹.

use crate::relation::Relation;
use crate::semigroup::CayleyTable;

pub fn natural_partial_order(s: &CayleyTable) -> Relation {
    let n = s.order();
    Relation::from_rows(n, |a, emit| {
        // s = t = 1 gives reflexivity
        let mut left = vec![false; n];
        let mut right = vec![false; n];
        left[a] = true;
        right[a] = true;
        for x in 0..n {
            if s.mul(x, a) == a {
                for b in 0..n {
                    if s.mul(x, b) == a {
                        left[b] = true;
                    }
                }
            }
            if s.mul(a, x) == a {
                for b in 0..n {
                    if s.mul(b, x) == a {
                        right[b] = true;
                    }
                }
            }
        }
        for b in 0..n {
            if left[b] && right[b] {
                emit(b);
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{cyclic_group, symmetric_group};

    #[test]
    fn groups_are_antichains() {
        for g in [cyclic_group(4), symmetric_group(3)] {
            assert_eq!(natural_partial_order(&g), Relation::identity(g.order()));
        }
    }

    #[test]
    fn left_identity_example() {
        // 0 zero, 2 left identity, other products 0
        let s = CayleyTable::new(&[vec![0, 0, 0], vec![0, 0, 0], vec![0, 1, 2]]).unwrap();
        let le = natural_partial_order(&s);
        assert!(le.get(0, 1));
        assert!(!le.get(1, 0));
        assert!(le.is_transitive());
    }
}
