//! Logic hazard analysis for Boolean circuits under three-valued
//! (Kleene) semantics.
//!
//! The crate covers:
//!
//! - ternary evaluation of circuits and depth-two formulas
//!   ([`circuit`], [`formula`]);
//! - minterm and maxterm enumeration ([`implicants`]);
//! - hazard detection: an exhaustive reference scan, Eichelberger's
//!   minterm/maxterm method, and polynomial-time detectors for 1-hazards in
//!   DNFs and 0-hazards in CNFs ([`detect`]);
//! - hazard-free DNF synthesis and selective hazard injection, including
//!   the CM and ACM function families ([`synthesis`]);
//! - the reduction from DNF falsifiability to hazard detection on depth-4
//!   formulas, plus a desk-scale verifier ([`reduction`]).
//!
//! The crate is `no_std` and only needs `alloc`. All operations are pure;
//! the exhaustive scans take index ranges so callers can partition them
//! across threads.

#![no_std]

extern crate alloc;

pub mod assignment;
pub mod circuit;
pub mod detect;
pub mod error;
pub mod formula;
pub mod implicants;
pub mod oracle;
pub mod reduction;
pub mod synthesis;
pub mod term;
pub mod ternary;

pub use assignment::PartialAssignment;
pub use circuit::{Circuit, CircuitBuilder, Node};
pub use detect::{DetectionMethod, Hazard, HazardKind, HazardReport};
pub use error::{Error, Result};
pub use formula::{CnfFormula, DnfFormula};
pub use implicants::{ImplicantKind, ImplicantSet};
pub use oracle::{BooleanFunction, TruthTable};
pub use term::{Connective, Literal, Term};
pub use ternary::Ternary;
