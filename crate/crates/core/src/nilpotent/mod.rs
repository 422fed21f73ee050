//! Hall basis construction and commutator collection in free nilpotent
//! quotients.
//!
//! Indexing convention: the lower central series is `gamma_1 = G`,
//! `gamma_{w+1} = [G, gamma_w]`, and "class `c`" means the quotient
//! `G / gamma_{c+1}`. Basic commutators are graded by weight (total
//! generator count), and the weight-`w` graded slice
//! `gamma_w / gamma_{w+1}` is the weight-`w` coordinate block.

pub mod basis;
pub mod engine;
pub mod magnus;

pub use basis::{witt_number, BasicCommutator, HallBasis, Node, QuotientSpec};
pub use engine::{equal_mod, verify_power_shift, Engine, NormalForm};
