pub mod cli;
pub mod cocycles;
pub mod colorings;
pub mod complexes;
pub mod cyclotomics;
pub mod error;
pub mod groups;
pub mod statesum;
pub mod tqft;

pub use cyclotomics::{CycNumber, Rational};
pub use error::{Error, Result};
pub use groups::{Element, FiniteGroup, Permutation};
