//! Coined quantum walks on the half line, the birth–death chains behind
//! their point spectrum, and the planar edge-state model built from them.
//!
//! The modules, bottom up:
//!
//! - [`walk`]: arc states, coins, the flip-flop and moving shifts, evolution.
//! - [`birth_death`]: the induced chain, its recurrence class and measures.
//! - [`eigenspace`]: closed-form eigenvectors certified by Rayleigh quotients.
//! - [`ae`]: the planar walk, CMV matrices and the dispersion relation.
//! - [`cli`]: the command-line front end.

pub mod ae;
pub mod birth_death;
pub mod cli;
pub mod eigenspace;
pub mod error;
pub mod format;
pub mod spectrum;
pub mod walk;

pub use error::{Error, Result};
