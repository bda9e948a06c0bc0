//! Recognition of Cayley graphs over `E4 x Cp` on `4p` vertices.
//!
//! The pipeline closes the input graph to a coherent configuration, finds a
//! representative set of semiregular `Cp`-subgroups of its automorphism
//! group, and extends each of them inside its centralizer to a regular
//! subgroup isomorphic to `E4 x Cp`. Such a subgroup yields an explicit
//! Cayley representation; the CI-property of the group turns this into an
//! isomorphism test for Cayley graphs over it.

pub mod autsearch;
pub mod cli;
pub mod coherent;
pub mod cyclebase;
pub mod error;
pub mod graph;
pub mod grouplib;
pub mod mainsub;
pub mod oracle;
pub mod perm;
pub mod solver;
pub mod structure;

pub use error::{Error, Result};
