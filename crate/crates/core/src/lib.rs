//! Finite-field character sequences and their aperiodic correlation.
//!
//! The crate builds m-sequences and multiplicative character sequences over
//! finite fields, measures their autocorrelation and crosscorrelation demerit
//! factors, and evaluates the closed-form limits those demerit factors
//! approach as sequences grow.

pub mod asym;
pub mod chars;
pub mod corr;
pub mod error;
pub mod experiment;
pub mod gf;
pub mod nt;
pub mod optim;
pub mod par;
pub mod seqgen;

pub use error::{Error, Result};
pub use gf::{DecimationClass, DecimationKind, FieldElement, FiniteField};
pub use par::Exec;
