//! Exact computational commutative algebra for radical Sylvester-Gallai
//! configurations: cyclotomic scalar arithmetic, sparse polynomials, a
//! Groebner engine with radical membership, configuration verification,
//! general quotients, strength/collapse machinery and big-integer bound
//! evaluators.
//!
//! ```
//! use rsg_core::ideal::QuotientContext;
//! use rsg_core::poly::{parse_polynomial, RingContext};
//! use rsg_core::scalar::FieldDescriptor;
//! use rsg_core::sg::{verify_sg, SGConfig};
//!
//! let ring = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
//! let forms = ["x", "y", "x + y"]
//!     .iter()
//!     .map(|s| parse_polynomial(s, &ring).unwrap())
//!     .collect();
//! let config = SGConfig::basic(QuotientContext::polynomial_ring(&ring), forms, 1);
//! let report = verify_sg(&config, 42, 1).unwrap();
//! assert!(report.pass);
//! assert_eq!(report.span_dimension, 2);
//! ```

pub mod poly;
pub mod scalar;
pub mod util;

pub mod bounds;
pub mod format;
pub mod ideal;
pub mod quotient;
pub mod sg;
pub mod strength;

pub use poly::{
    parse_polynomial, poly_gcd, span_dimension, squarefree_part, GradedVectorSpace, Monomial,
    Polynomial, RingContext, RingRef,
};
pub use scalar::{FieldDescriptor, Scalar};
