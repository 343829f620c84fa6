//! Propositional team semantics.
//!
//! Formulas are evaluated on *teams* (sets of valuations over a finite,
//! explicitly ordered [`Context`]). The crate provides a parser and printer
//! for the connective set, two independent evaluation strategies (recursive
//! clause-by-clause evaluation and bottom-up denotations), entailment by
//! exhaustive enumeration, the seven closure properties of team
//! propositions, constructive formula builders, and a bounded-exhaustive
//! harness for inference schemas of conditionals.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod closure;
pub mod context;
mod error;
pub mod harness;
pub mod prop;
pub mod semantics;
pub mod synthesis;
pub mod syntax;
pub mod team;

pub use closure::{ClosureProperty, ClosureReport, Witness};
pub use context::{Context, DEFAULT_VAR_CAP, MAX_VARS};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use prop::TeamProposition;
pub use semantics::{denotation, entails, eval, restrict_team, EntailmentResult};
pub use syntax::{parse, BinaryOp, Connective, Formula, Quantification, UnaryOp};
pub use team::Team;
