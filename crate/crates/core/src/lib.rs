//! Exact arithmetic on row-finite ℕ⁺ × ℕ⁺ matrices acting on the right of
//! finitely supported vectors, plus executable builders and verifiers for
//! constructions in endomorphism rings of countable direct sums.
//!
//! Everything infinite is lazy: a [`RowFiniteMap`] is a memoized row
//! function, and all identities are checked exactly on finite row windows.

pub mod constructions;
pub mod error;
pub mod indexing;
pub mod ring;
pub mod rowfin;
pub mod words;

/// 1-based coordinate in ℕ⁺.
pub type Index = u64;

pub use error::{Error, Result};
pub use ring::{BaseRing, CountableRingEnum, Elem, RingElement, RingSpec};
pub use rowfin::{FinVec, RowFiniteMap, Window};
pub use words::RingWord;
