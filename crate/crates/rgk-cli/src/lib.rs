//! Library half of the `rgk` command-line tool: the expression
//! language, the on-disk file formats, and report assembly. The binary
//! in `main.rs` is a thin argument-parsing layer over these.

// Error enums carry exact scalars and offending input by value; they
// are built on cold paths only, so the size is not worth boxing away.
#![allow(clippy::result_large_err)]

pub mod expr;
pub mod files;
pub mod report;
