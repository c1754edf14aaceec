//! Reasoning toolkit for the basic modal logic K.
//!
//! - [`formula`]: syntax, parsing, printing and modal degree.
//! - [`kripke`]: finite Kripke models, evaluation, unraveling, truncation,
//!   grafting and p-morphisms.
//! - [`prover`]: a tableau decision procedure for provability and a type
//!   elimination procedure for global consequence, both certificate-producing.
//! - [`unification`]: substitutions and the analysis of the unifiers of
//!   `p0 -> [] p0`.
//! - [`gen`]: seeded random formulas and models for property tests.

pub mod formula;
pub mod gen;
pub mod kripke;
pub mod prover;
pub mod unification;

pub use formula::{parse, Formula, ModalDegree};
pub use kripke::{KripkeModel, TreeModel, WorldMap};
pub use prover::{
    global_consequence, prove, ConsequenceVerdict, Prover, ProverConfig, ProverError, ProverVerdict,
};
pub use unification::{Rule, SigmaIndex, Substitution, UnificationError};
