//! Compiles the code listings of the guide under `book/src` as doctests.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/groups-and-cocycles.md")]
pub mod groups_and_cocycles {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cyclotomics.md")]
pub mod cyclotomics {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/triangulations.md")]
pub mod triangulations {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/colorings.md")]
pub mod colorings {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/tqft.md")]
pub mod tqft {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
