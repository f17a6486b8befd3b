//! Congruence lattices of finite lattices: prime, maximal and two-class
//! congruences, admissible morphisms, and the decomposition results for
//! direct products and ordinal sums.

pub mod analysis;
pub mod catalog;
pub mod congruence;
pub mod constructions;
pub mod filters;
pub mod lattice;
pub mod morphisms;
pub mod partition;
pub mod spectra;

pub use congruence::{enumerate_con, quotient, Congruence, CongruenceError, CongruenceLattice};
pub use lattice::{FiniteLattice, LatticeError, LatticeId};
pub use partition::Partition;
