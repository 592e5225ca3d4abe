//! Khovanov homology by scanning: the diagram is built up one crossing at
//! a time as a complex over crossingless tangles, kept small by delooping
//! closed circles and cancelling isomorphisms.

pub(crate) type FxHashMap<K, V> = hashbrown::HashMap<K, V, rustc_hash::FxBuildHasher>;
pub(crate) type FxHashSet<K> = hashbrown::HashSet<K, rustc_hash::FxBuildHasher>;

mod complex;
mod scan;
mod surface;
mod tangle;

pub use complex::{LocalComplex, Morphism, Object};
pub use scan::{crossing_order, scan, tensor_crossing, ScanConfig, ScanOutcome, ScanProgress, DEFAULT_CEILING};
pub use tangle::{loop_roots, Tangle};

#[cfg(test)]
mod tests;
