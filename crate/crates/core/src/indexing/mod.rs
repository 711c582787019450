//! Index combinatorics over ℕ⁺.

mod infset;
mod pairing;
mod partition;
mod preorder;
mod refine;

pub use infset::{InfSet, DEFAULT_STALL_BOUND};
pub use pairing::{cantor, uncantor, z_pairing, zfold, zunfold, ZPairing};
pub use partition::{order_iso, seven_partition, tri_block, tri_locate, triangular, IndexMap, SevenPartition};
pub use preorder::{Branch, IndexSupport, PreorderDescriptor, Refinement};
pub use refine::{disjointify, nested_refine};
