//! Runs the code samples in `book/` as doctests, since mdbook cannot link
//! against workspace crates on its own.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}
#[doc = include_str!("../../../book/src/fock.md")]
pub mod fock {}
#[doc = include_str!("../../../book/src/boson.md")]
pub mod boson {}
#[doc = include_str!("../../../book/src/glhat.md")]
pub mod glhat {}
#[doc = include_str!("../../../book/src/geo.md")]
pub mod geo {}
#[doc = include_str!("../../../book/src/verify.md")]
pub mod verify {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
