//! Optimal-depth sorting network toolkit.
//!
//! The crate is organised bottom-up:
//!
//! * [`network`] – comparator networks, Boolean evaluation, output sets,
//!   permutations, reflection and untangling.
//! * [`graph`] – the labelled comparator graph and a brute-force isomorphism test.
//! * [`words`] – the word/sentence representation of two-layer prefixes and the
//!   generators for the filter sets `G_n`, `R(G_n)`, `S_n`, `R(S_n)` and `R_n`.
//! * [`saturation`] – redundancy, forbidden patterns, saturation and subsumption.
//! * [`encode`] – CNF construction for "a depth-`d` network sorts every input in `X`".
//! * [`solver`] – DIMACS output parsing and external solver processes.
//! * [`prover`] – prefix campaigns, lower-bound proofs and `T(n)`.
//! * [`tables`] – count tables and the published reference values.

pub mod encode;
pub mod error;
pub mod graph;
pub mod network;
pub mod prover;
pub mod saturation;
pub mod solver;
pub mod tables;
pub mod words;

pub use error::{Error, Result};
pub use network::{BoolSet, BoolVec, Comparator, Layer, Network};
pub use words::{Sentence, SetKind, Tag, Word};
