//! Index, period, ω-power and pseudo-inverse of elements of a finite semigroup.

use crate::semigroup::CayleyTable;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EpiElement {
    /// Smallest k with a^k in a subgroup.
    pub index: usize,
    pub period: usize,
    pub omega: usize,
    pub pseudo_inverse: usize,
    pub omega_plus_one: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct EpigroupData {
    pub elems: Vec<EpiElement>,
}

impl EpigroupData {
    pub fn new(s: &CayleyTable) -> Self {
        EpigroupData {
            elems: (0..s.order()).map(|a| element_data(s, a)).collect(),
        }
    }

    #[inline]
    pub fn omega(&self, a: usize) -> usize {
        self.elems[a].omega
    }

    #[inline]
    pub fn pseudo_inverse(&self, a: usize) -> usize {
        self.elems[a].pseudo_inverse
    }

    #[inline]
    pub fn omega_plus_one(&self, a: usize) -> usize {
        self.elems[a].omega_plus_one
    }
}

pub fn element_data(s: &CayleyTable, a: usize) -> EpiElement {
    // powers[k] = a^(k+1)
    let mut powers = vec![a];
    let mut seen = HashMap::from([(a, 1usize)]);
    let (index, period) = loop {
        let next = s.mul(*powers.last().unwrap(), a);
        let k = powers.len() + 1;
        if let Some(&j) = seen.get(&next) {
            break (j, k - j);
        }
        seen.insert(next, k);
        powers.push(next);
    };
    // the idempotent of the cycle is a^m with m >= index and period | m
    let m = index.div_ceil(period) * period;
    let pow = |k: usize| {
        let k = if k < index {
            k
        } else {
            index + (k - index) % period
        };
        powers[k - 1]
    };
    let omega = pow(m);
    let omega_plus_one = pow(m + 1);
    let pseudo_inverse = if period == 1 {
        omega
    } else {
        s.power(omega_plus_one, period - 1)
    };
    EpiElement {
        index,
        period,
        omega,
        pseudo_inverse,
        omega_plus_one,
    }
}

pub fn omega_of(s: &CayleyTable, a: usize) -> usize {
    element_data(s, a).omega
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{cyclic_group, symmetric_group};

    fn check_identities(s: &CayleyTable) {
        let ep = EpigroupData::new(s);
        for a in 0..s.order() {
            let d = ep.elems[a];
            let p = d.pseudo_inverse;
            assert_eq!(s.mul(s.mul(p, a), p), p);
            assert_eq!(s.mul(a, p), s.mul(p, a));
            assert_eq!(s.mul(s.power(a, d.index + 1), p), s.power(a, d.index));
            assert!(s.is_idempotent(d.omega));
            assert_eq!(d.omega, s.mul(a, p));
            assert_eq!(d.omega_plus_one, s.mul(d.omega, a));
        }
    }

    #[test]
    fn identities_hold() {
        check_identities(&cyclic_group(6));
        check_identities(&symmetric_group(3));
        // truncated addition on {0,1,2,3}
        let s = CayleyTable::from_fn(4, |x, y| if x == 0 || y == 0 || x + y > 3 { 0 } else { x + y });
        check_identities(&s);
        let d = element_data(&s, 1);
        assert_eq!((d.index, d.omega), (4, 0));
    }

    #[test]
    fn transposition() {
        let s3 = symmetric_group(3);
        let t = s3.index_of_label("213").unwrap();
        let d = element_data(&s3, t);
        assert_eq!(Some(d.omega), s3.identity());
        assert_eq!(d.omega_plus_one, t);
        assert_eq!(d.pseudo_inverse, t);
    }
}
