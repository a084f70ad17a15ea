//! Pipe dreams and super pipe dreams on the half-plane, the flow operators
//! acting on them, and exhaustive checkers for the Schubert and
//! Grothendieck identities those operators prove bijectively.

pub mod cli;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod flow;
pub mod perm;
pub mod poly;
pub mod rectify;
pub mod suite;
pub mod tableau;

pub use diagram::{Cell, PipeDream, SuperPipeDream};
pub use error::{Error, Result};
pub use perm::{Partition, Permutation};
