//! Best approximation of a piecewise polynomial by elements of 𝒫_{n-1} in
//! L_q[0;1], q ∈ [1;∞].
//!
//! Dispatch: Hilbert projection at q = 2, damped Newton on the first-order
//! conditions (with an IRLS fallback) for other smooth q, and discretized
//! linear programs with adaptive grid refinement at the endpoints q = 1
//! and q = ∞, where the residual may carry a genuine jump.

mod grid;
mod l1;
mod linalg;
mod linf;
pub mod simplex;
mod smooth;

pub use l1::best_approx_l1;
pub use linf::best_approx_linf;
pub use smooth::{best_approx_smooth, legendre_projection};

use crate::error::{Error, Result};
use crate::polycore::exponent::Exponent;
use crate::polycore::legendre::legendre;
use crate::polycore::piecewise::PiecewisePolynomial;
use crate::polycore::poly::Polynomial;
use crate::polycore::quad::{self, signed_power_integral};

/// Which algorithm produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxMethod {
    /// Closed-form Legendre projection (q = 2).
    Projection,
    /// Damped Newton on the orthogonality conditions (1 < q < ∞).
    SmoothNewton,
    /// Discretized L₁ program with refinement and polish (q = 1).
    L1Discretized,
    /// Discretized Chebyshev program with refinement (q = ∞).
    ChebyshevDiscretized,
}

/// Residual quality indicators; which fields are populated depends on the
/// exponent regime.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    /// `int x^j |r|^(q-1) sgn r` for smooth q.
    pub orthogonality_defects: Vec<f64>,
    /// Residual sign-change locations (q = 1).
    pub sign_changes: Vec<f64>,
    /// Locations where |r| attains its sup within tolerance (q = ∞).
    pub active_points: Vec<f64>,
    /// Certified distance between the discrete lower bound and the achieved
    /// value (LP regimes).
    pub lp_gap: f64,
}

#[derive(Debug, Clone)]
pub struct ApproxSolution {
    /// The optimal u ∈ 𝒫_degree.
    pub correction: Polynomial<f64>,
    /// Achieved L_q norm of the residual.
    pub value: f64,
    /// f - correction.
    pub residual: PiecewisePolynomial<f64>,
    pub diagnostics: Diagnostics,
    pub iterations: usize,
    pub method: ApproxMethod,
}

/// Iteration caps, overridable through `SHARPCONST_MAX_ITERS`.
#[derive(Debug, Clone, Copy)]
pub struct SolverCaps {
    pub smooth_iters: usize,
    pub refine_rounds: usize,
}

pub fn solver_caps() -> SolverCaps {
    let base = std::env::var("SHARPCONST_MAX_ITERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    SolverCaps {
        smooth_iters: base.unwrap_or(500),
        refine_rounds: base.map(|b| b.max(8)).unwrap_or(60),
    }
}

/// Values of the Legendre basis P_0..P_degree at `x`, by recurrence.
pub(crate) fn basis_row(degree: usize, x: f64) -> Vec<f64> {
    let t = 2.0 * x - 1.0;
    let mut out = Vec::with_capacity(degree + 1);
    out.push(1.0);
    if degree >= 1 {
        out.push(t);
    }
    for i in 1..degree {
        let next = ((2 * i + 1) as f64 * t * out[i] - i as f64 * out[i - 1]) / (i + 1) as f64;
        out.push(next);
    }
    out
}

/// Assemble a monomial polynomial from Legendre coefficients.
pub(crate) fn legendre_combo(coeffs: &[f64]) -> Polynomial<f64> {
    let mut acc = Polynomial::zero();
    for (m, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let pm: Polynomial<f64> = legendre(m).expect("degree within cap");
        acc = &acc + &pm.scale(&c);
    }
    acc
}

/// Best approximation of `f` by polynomials of the given degree in L_q.
///
/// The objective is convex; for 1 < q < ∞ the minimizer is unique, at the
/// endpoints any minimizer satisfying the stated diagnostics is returned
/// (deterministically, via Bland pivoting on a fixed grid).
pub fn best_approx(
    f: &PiecewisePolynomial<f64>,
    degree: usize,
    q: &Exponent,
) -> Result<ApproxSolution> {
    if degree >= crate::polycore::poly::DEGREE_CAP {
        return Err(Error::DegreeCap {
            got: degree,
            cap: crate::polycore::poly::DEGREE_CAP,
        });
    }
    match q {
        Exponent::One => best_approx_l1(f, degree),
        Exponent::Infinity => best_approx_linf(f, degree),
        Exponent::Finite(v) => best_approx_smooth(f, degree, *v),
    }
}

/// The orthogonality defects `int_0^1 x^j |r|^(q-1) sgn(r) dx` for
/// j = 0..=degree, by sign-segment-split quadrature. At a minimizer of
/// `||f - u||_q` over 𝒫_degree these all vanish.
pub fn residual_orthogonality(
    r: &PiecewisePolynomial<f64>,
    q: f64,
    degree: usize,
) -> Result<Vec<f64>> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(Error::OutOfDomain {
            name: "q",
            value: q,
            domain: "(1; inf)",
        });
    }
    (0..=degree)
        .map(|j| {
            signed_power_integral(
                r,
                q - 1.0,
                true,
                &|x: f64| x.powi(j as i32),
                quad::QUAD_REL_TOL,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::legendre::legendre;

    #[test]
    fn basis_row_matches_polynomials() {
        for &x in &[0.0, 0.3, 0.77, 1.0] {
            let row = basis_row(5, x);
            for (m, v) in row.iter().enumerate() {
                let pm: Polynomial<f64> = legendre(m).unwrap();
                assert!((pm.eval(&x) - v).abs() < 1e-11, "m={m} x={x}");
            }
        }
    }

    #[test]
    fn defects_of_legendre_vanish() {
        // r = P_n is orthogonal to all lower powers at q = 2
        let pn: Polynomial<f64> = legendre(3).unwrap();
        let r = PiecewisePolynomial::from_polynomial(pn);
        let defects = residual_orthogonality(&r, 2.0, 2).unwrap();
        for d in defects {
            assert!(d.abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_endpoint_exponents() {
        let r = PiecewisePolynomial::from_polynomial(Polynomial::constant(1.0));
        assert!(residual_orthogonality(&r, 1.0, 0).is_err());
        assert!(residual_orthogonality(&r, f64::INFINITY, 0).is_err());
    }
}
