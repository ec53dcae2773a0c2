//! Finite poset calculus: constructions, mapping cylinders, recognizers,
//! order-complex homology, and searches that emit independently verifiable
//! certificates for zipping, constructibility, shelling and collapsing.

pub mod bitset;
pub mod certify;
pub mod cylinders;
pub mod error;
pub mod homology;
pub mod ops;
pub mod poset;
pub mod recognize;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use poset::{find_isomorphism, Mask, MonotoneMap, Poset, Preposet};
