//! Sharp constants for the embeddings of the Sobolev spaces W̊ⁿ_p[0;1]
//! into W̊ᵏ_∞[0;1], and the pointwise bound profiles behind them.
//!
//! The library constructs the two-piece spline kernels that represent the
//! point-evaluation functionals y ↦ y⁽ᵏ⁾(a) on W̊ⁿ_p[0;1], reduces the
//! sharp-constant question to best approximation of a piecewise polynomial
//! by elements of 𝒫_{n−1} in L_q[0;1], solves those approximation problems
//! for the whole range q ∈ [1;∞], and assembles the profiles A(a) and the
//! embedding constants Λ = sup_a A(a). A dual arithmetic backend (exact
//! big rationals and f64) lets the structural identities be checked
//! exactly while the optimization loops run in floating point.

pub mod error;
pub mod kernels;
pub mod polycore;

pub use error::{Error, Result};
