//! Exact scalars and sparse polynomials.

pub mod field;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod quad;
pub mod roots;

pub use field::Field;
pub use gcd::{gcd, gcd_all, squarefree_test};
pub use parse::{parse_poly, parse_poly_auto, parse_scalar};
pub use poly::{Monomial, MultiPoly};
pub use quad::{FieldDescriptor, QuadFieldElement};
pub use roots::{binary_form_roots, linear_factor, BinaryRoots, ProjRoot};
