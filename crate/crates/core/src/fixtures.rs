//! Bundled example tables.

use crate::io::parse_cayley;
use crate::semigroup::CayleyTable;

pub const N_PROPER: &str = include_str!("../fixtures/n_proper.cayley");
pub const STRICT: &str = include_str!("../fixtures/strict.cayley");
pub const CLIFFORD8: &str = include_str!("../fixtures/clifford8.cayley");
pub const CR7: &str = include_str!("../fixtures/cr7.cayley");
pub const NOTSAME3: &str = include_str!("../fixtures/notsame3.cayley");
pub const ORDER_LEFT_IDENTITY: &str = include_str!("../fixtures/order_left_identity.cayley");
pub const ORDER_CONSTANT: &str = include_str!("../fixtures/order_constant.cayley");

pub const ALL: [(&str, &str); 7] = [
    ("n_proper", N_PROPER),
    ("strict", STRICT),
    ("clifford8", CLIFFORD8),
    ("cr7", CR7),
    ("notsame3", NOTSAME3),
    ("order_left_identity", ORDER_LEFT_IDENTITY),
    ("order_constant", ORDER_CONSTANT),
];

pub fn load(name: &str) -> Option<CayleyTable> {
    ALL.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| parse_cayley(t).expect("bundled fixture parses"))
}

pub fn all() -> Vec<(&'static str, CayleyTable)> {
    ALL.iter()
        .map(|(n, t)| (*n, parse_cayley(t).expect("bundled fixture parses")))
        .collect()
}

/// Truncated addition on {0,..,k}: x·y = x+y if x+y ≤ k, else 0.
pub fn truncated_addition(k: usize) -> CayleyTable {
    CayleyTable::from_fn(k + 1, |x, y| if x == 0 || y == 0 || x + y > k { 0 } else { x + y })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse() {
        let f = all();
        assert_eq!(f.len(), 7);
        let np = load("n_proper").unwrap();
        assert_eq!((np.identity(), np.zero()), (Some(1), Some(0)));
        assert_eq!(load("notsame3").unwrap(), truncated_addition(3));
    }
}
