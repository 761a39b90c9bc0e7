//! Mathematical morphology on propositional formulas.
//!
//! Formulas over a finite alphabet of `N` atoms are identified with their
//! model sets, subsets of the `2^N` interpretations. Every operator in this
//! crate works on those model sets ([`WorldSet`]) with a configurable
//! neighborhood relation ([`StructuringElement`]):
//!
//! - [`morphology`]: dilation, erosion and the derived filters (opening,
//!   closing, reconstruction, last and ultimate erosion, skeleton) plus the
//!   morphological stratification of the worlds around a theory.
//! - [`syntactic`]: the polynomial DNF/CNF algorithms for Hamming-ball
//!   operators, usable as an independent route to the semantic results.
//! - [`revision`], [`merging`] and [`abduction`]: belief change operators
//!   built from iterated dilations and erosions.
//!
//! ## no_std support
//!
//! The crate only needs `alloc`. Disable the default `std` feature to build
//! it for `no_std` targets; nothing else changes.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod abduction;
mod error;
pub mod formula;
pub mod merging;
pub mod morphology;
pub mod revision;
pub mod syntactic;
pub mod worlds;

pub use self::error::{Error, Result};
pub use self::formula::{Alphabet, CnfForm, Cube, DnfForm, Formula};
pub use self::worlds::{Distance, StructuringElement, World, WorldSet};

/// Largest supported alphabet size.
pub const MAX_ATOMS: usize = 20;
