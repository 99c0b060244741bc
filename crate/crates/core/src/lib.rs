//! Conjugacy relations on finite semigroups.

pub mod conjugacy;
pub mod diagram;
pub mod enumerate;
pub mod epigroup;
pub mod fixtures;
pub mod error;
pub mod green;
pub mod gset;
pub mod inner;
pub mod io;
pub mod order;
pub mod polycyclic;
pub mod rees;
pub mod relation;
pub mod semigroup;
pub mod transform;
pub mod verify;

pub use conjugacy::{ClassPartition, Conjugacy, Inclusion, RelationKind, Witness};
pub use error::{Error, Result};
pub use relation::{Partition, Relation};
pub use semigroup::CayleyTable;

/// Caps the global rayon pool at `CONJLAB_THREADS` if set. Safe to call repeatedly.
pub fn init_threads() {
    if let Some(k) = std::env::var("CONJLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&k| k > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
}
