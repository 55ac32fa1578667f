//! Knot and link diagram analysis: Kauffman bracket state sums, Jones
//! polynomials, Seifert state graphs, diagram generators, and positivity
//! obstructions for census verification.
//!
//! The crate is organized bottom-up:
//!
//! * [`laurent`] — exact Laurent polynomials in `A` (integer exponents) or
//!   `t` (quarter-integer exponents), with parsing and printing.
//! * [`diagram`] — PD-code parsing, orientation propagation, crossing
//!   signs, and diagram predicates (split, reduced, positive).
//! * [`states`] — smoothing-state circle decompositions, the Seifert state
//!   graph and its reduction, diagram classification, and surgery
//!   (smoothing, balancing sequences, synchronization).
//! * [`jones`] — the bracket/Jones engine (full state-sum, exact integers).
//! * [`obstructions`] — degree-based positivity obstructions and verdicts.
//! * [`generators`] — seeded random generators for balanced and burdened
//!   diagram families.
//! * [`census`] — JSONL census loading, verification, and report emission.
//! * [`suites`] — batch invariant-checking suites shared by the CLI and
//!   the integration tests.

pub mod census;
pub mod diagram;
pub mod error;
pub mod generators;
pub mod jones;
pub mod laurent;
pub mod obstructions;
pub mod states;
pub mod suites;

pub use error::{Error, Result};
