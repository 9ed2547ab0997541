//! Exact computation of A_k singularities on plane curves of bidegree
//! (3, b), built from elementary links between Hirzebruch surfaces.
//!
//! The algebra is generic over an exact [`Field`]; the aliases below fix
//! the scalar used throughout the catalog and the command-line tool.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod hirzebruch;
pub mod links;
pub mod plane;

pub use arith::{Field, FieldDescriptor, MultiPoly, QuadFieldElement};
pub use error::{Error, Result};

/// Rational numbers.
pub type Rational = num_rational::BigRational;
/// Elements of Q, Q(i) or Q(√−3).
pub type Scalar = QuadFieldElement;
/// Polynomials over [`Scalar`].
pub type Poly = MultiPoly<Scalar>;
