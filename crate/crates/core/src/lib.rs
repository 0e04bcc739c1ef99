//! Sunflower-free set systems: exact sunflower detection, certified bound
//! evaluation, extremal search and replay of the inductive decomposition
//! arguments for `L`-intersecting families.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, JSON
//! certificates, threading and the command-line tool live in the
//! `sunflower-lab` companion crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod constructions;
pub mod detect;
mod error;
pub mod family;
pub mod numeric;
pub mod prover;
pub mod search;

pub use error::{Error, Result};
pub use family::{GroundSet, IntersectionProfile, MemberSet, SetFamily};
