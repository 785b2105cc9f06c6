//! Betti numbers of letterplace ideals `L(n, P)` of finite posets.
//!
//! Three engines compute the same tables:
//!
//! - [`oracle`]: Hochster's formula applied literally to the Stanley-Reisner
//!   complex of `L(n, P)`. Exponential, used as ground truth.
//! - [`strand`]: per-multidegree Betti polynomials as products of the
//!   homologies of small bipartite complexes, one per pair of consecutive
//!   layers. Every complex it builds has at most `width(P)` vertices.
//! - [`tree`]: a graded recursion for posets whose Hasse diagram is a
//!   rooted forest.

#![allow(clippy::needless_range_loop)]

pub mod check;
pub mod classify;
pub mod complex;
pub mod error;
pub mod field;
pub mod generators;
pub mod limits;
pub mod linalg;
pub mod multidegree;
pub mod oracle;
pub mod poly;
pub mod poset;
pub mod strand;
pub mod table;
pub mod tree;

pub use complex::SComplex;
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use multidegree::Multidegree;
pub use poly::HPoly;
pub use poset::{ElemSet, Poset};
pub use table::{BettiTable, Convention};
