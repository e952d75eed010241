//! The associative operator algebra generated by a finite family of
//! observers: its structure constants depend only on the table of
//! pairwise trace invariants, so the whole algebra can be driven either
//! by geometry (observers in a metric context) or by a bare symbolic
//! table.
//!
//! Submodules:
//! * [`gram`]: the trace table and cyclic word traces;
//! * [`element`]: basis elements and formal linear combinations;
//! * [`mul`]: the product, the trace functional, and sandwich normal
//!   forms;
//! * [`rep`]: the faithful matrix representation through concrete
//!   observers;
//! * [`checks`]: associativity sweeps and the bilinear-form rank
//!   diagnostic.

pub mod checks;
pub mod element;
pub mod gram;
pub mod mul;
pub mod rep;

pub use checks::{
    basis_elements, check_associativity, frobenius_rank, AssociativityReport, FrobeniusReport,
};
pub use element::{AlgebraElement, BasisElement};
pub use gram::{word_trace, GramSignature, GramTable};
pub use mul::{multiply, sandwich_normal_form, trace_element};
pub use rep::matrix_rep;

use crate::scalar::Scalar;

/// Errors shared by the algebra submodules.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("unknown object id `{0}`")]
    UnknownObject(String),
    #[error("no trace entry for the pair ({0}, {1})")]
    MissingTrace(String, String),
    #[error("the diagonal trace of `{0}` is fixed at 1 and cannot be overridden")]
    DiagonalTraceNotOne(String),
    #[error("trace for ({a}, {b}) is {value}; pair traces must be >= 1")]
    TraceBelowOne { a: String, b: String, value: Scalar },
    #[error("the trace of the empty word is undefined")]
    EmptyWord,
    #[error("element involves the unit, whose trace needs an explicit value")]
    UnitTraceUndefined,
    #[error("product does not factor through the expected sandwich form: {detail}")]
    NotFactorable { detail: String },
    #[error("table trace for ({a}, {b}) is {table} but the embedded observers give {geometric}")]
    GramMismatch {
        a: String,
        b: String,
        table: Scalar,
        geometric: Scalar,
    },
    #[error("no embedded observer for id `{0}`")]
    MissingEmbedding(String),
}
