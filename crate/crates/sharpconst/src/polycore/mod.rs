//! Exact and floating polynomial engine: arithmetic, calculus, the
//! shifted Legendre family, real-root isolation, and L_q integration of
//! piecewise polynomials.
//!
//! Everything here is immutable after construction and every operation is
//! a pure function, so values can be shared freely across threads.

pub mod exponent;
pub mod legendre;
pub mod piecewise;
pub mod poly;
pub mod quad;
pub mod roots;
pub mod scalar;

pub use exponent::Exponent;
pub use legendre::{legendre, legendre_antiderivative, legendre_antiderivative_value, legendre_value};
pub use piecewise::{KnotLimits, PiecewisePolynomial};
pub use poly::{Polynomial, DEGREE_CAP};
pub use quad::{graded_nodes, lq_norm, lq_norm_exact, power_segments, signed_power_integral, sup_norm, PowerSegment};
pub use roots::{isolate_roots, sign_change_points, Parity, RootEvent};
pub use scalar::{Rational, Scalar};
