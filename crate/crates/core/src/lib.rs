//! Computational toolkit for conjugacy growth of outer automorphisms coming
//! from the Rips construction.
//!
//! The pipeline: parse a presentation of a quotient group `Q`
//! ([`presentations`]), build the small cancellation group `G` with its
//! finitely generated normal subgroup `N = <x, y>` ([`rips`]), solve the word
//! problem in `G` with Dehn's algorithm ([`dehn`]), measure word lengths in `Q`
//! and bracket conjugacy norms in `N` ([`metrics`]), then sample and compare
//! growth curves `n -> ln ||Phi^n(c)||` ([`growth`]) and Lipschitz
//! displacements ([`lipschitz`]).

pub mod cli;
pub mod dehn;
pub mod error;
pub mod growth;
pub mod lipschitz;
pub mod metrics;
pub mod numeric;
pub mod presentations;
pub mod rips;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alphabet, CyclicWord, Letter, Word};

/// Version of the presentation text grammar accepted by
/// [`presentations::Presentation::parse`].
pub const GRAMMAR_VERSION: u32 = 1;
