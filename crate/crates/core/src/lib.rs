//! Graded subspace machinery over the free algebra `K<x,y,z>`.
//!
//! The crate builds the inductive tower of complementary subspaces `U(2^n) ⊕ V(2^n) = H(2^n)`,
//! the binary-decomposition spaces `W, S, R, Q`, the window ideal `E` with its membership
//! oracle and growth tables, and the enumeration / truncated right ideal apparatus used to
//! make the quotient nil.

pub mod construction;
pub mod decomposition;
pub mod error;
pub mod field;
pub mod ideal;
pub mod nil;
pub mod poly;
pub mod report;
pub mod subspace;
pub mod word;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use poly::Poly;
pub use subspace::{ComplementRule, GradedSubspace};
pub use word::{word_from_index, word_index, Word};
