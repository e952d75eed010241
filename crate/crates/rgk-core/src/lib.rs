//! Relative-velocity kinematics where observers, not coordinate
//! frames, are the primitive objects.
//!
//! Each observer is a rank-one idempotent operator on a flat Lorentzian
//! four-space; the relative velocity measured between two observers is
//! a nilpotent arrow between them. Arrows compose head-to-tail like the
//! morphisms of a groupoid — and unlike one-parameter velocity
//! addition, this composition is associative, at the cost of arrows
//! remembering which observer measured them. The crate provides:
//!
//! * the underlying Lorentzian linear algebra in exact rational or
//!   float arithmetic ([`minkowski`], [`scalar`]),
//! * observers and their binary velocity arrows ([`observer`],
//!   [`velocity`]),
//! * the associative operator algebra generated by a family of
//!   observers, with a faithful matrix representation and structural
//!   diagnostics ([`algebra`]),
//! * head-to-tail composition, inverses, and identity arrows
//!   ([`groupoid`]),
//! * the standard one-frame velocity addition for comparison, with its
//!   associativity defect and gyration made measurable ([`einstein`]),
//! * the low-speed limit where composition degenerates to vector
//!   addition ([`galilean`]),
//! * seeded rational samplers and named invariant-check suites
//!   ([`sampling`], [`suites`]).

// Error enums carry exact scalars and offending input by value; they
// are built on cold paths only, so the size is not worth boxing away.
#![allow(clippy::result_large_err)]
// Index loops over fixed 4x4 matrices mirror the usual math notation.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod einstein;
pub mod galilean;
pub mod groupoid;
pub mod linalg;
pub mod minkowski;
pub mod observer;
pub mod sampling;
pub mod scalar;
pub mod suites;
pub mod velocity;

pub use minkowski::{Bivector, CausalClass, Covector4, Endo4, MetricContext, Vector4};
pub use observer::{observer_from_monad, Observer};
pub use scalar::{ArithmeticMode, Scalar};
pub use velocity::{binary_velocity_vector, VelocityArrow};
