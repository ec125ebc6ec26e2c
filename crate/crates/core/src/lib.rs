//! A small proof checker for homotopy type theory.
//!
//! The kernel is a dependent type theory with universes, Π, Σ and identity
//! types with the J eliminator. Terms use de Bruijn indices; conversion is
//! decided by normalization by evaluation with η for functions and pairs.
//! Axioms are opaque constants, and every checked declaration records which
//! axioms it depends on.

pub mod checker;
pub mod cli;
pub mod corpus;
pub mod evaluator;
pub mod surface;
pub mod syntax;

pub use checker::{check_module, CheckOptions, Context, Report, Signature, TypeError};
pub use evaluator::{ConvOptions, Machine, Value};
pub use surface::{parse_source, parse_term, print_module, print_term, SourceModule};
pub use syntax::{alpha_equal, shift, DeclKind, Declaration, Name, RcTerm, Term};
