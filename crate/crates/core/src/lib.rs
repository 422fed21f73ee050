//! Exact computation in free nilpotent quotients of surface groups:
//! Mal'cev normal forms, symplectic decompositions of homology classes
//! into simple-closed-curve classes, certified bounded rewriting over
//! simple-closed-curve generating sets, and empirical Cayley-graph
//! coverage experiments.
//!
//! All group and matrix arithmetic is exact (arbitrary-precision
//! integers); the only machine-integer fast path is the BFS state space
//! in [`diameter`], which is overflow-checked.

pub mod diameter;
pub mod error;
pub mod linalg;
pub mod nilpotent;
pub mod rewrite;
pub mod surface;
pub mod symplectic;
pub mod words;

pub use error::{Error, Result};
pub use nilpotent::{Engine, NormalForm, QuotientSpec};
pub use words::FreeWord;
