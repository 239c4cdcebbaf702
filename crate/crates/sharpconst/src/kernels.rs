//! The concrete objects behind the pointwise bounds: the reproducing
//! kernel of y ↦ y⁽ᵏ⁾(a) on W̊ⁿ₂[0;1], its n-th derivative, the fixed jump
//! spline, the ν-parametrized spline family representing the same
//! functional for every p, and admissible test functions.
//!
//! All constructions are generic over the scalar backend; factorials and
//! binomials are always computed in exact integers and converted, never
//! through a floating gamma function.

use crate::error::{Error, Result};
use crate::polycore::exponent::Exponent;
use crate::polycore::legendre::legendre_antiderivative_value;
use crate::polycore::piecewise::PiecewisePolynomial;
use crate::polycore::poly::{inv_factorial, scalar_pow, Polynomial};
use crate::polycore::scalar::{binomial, scalar_from_bigint, Scalar};

/// Largest n for which the degree-(2n-1) kernel pieces stay under the
/// polynomial degree cap.
pub const MAX_N: usize = 32;

/// One pointwise-bound problem: the constant in
/// |y⁽ᵏ⁾(a)| ≤ A·‖y⁽ⁿ⁾‖_p for y ∈ W̊ⁿ_p[0;1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub n: usize,
    pub k: usize,
    pub p: Exponent,
    pub a: f64,
}

impl ProblemSpec {
    pub fn new(n: usize, k: usize, p: Exponent, a: f64) -> Result<Self> {
        validate_orders(n, k)?;
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::OutOfDomain {
                name: "a",
                value: a,
                domain: "(0;1)",
            });
        }
        Ok(ProblemSpec { n, k, p, a })
    }

    /// Conjugate exponent: the approximation problem lives in L_{p'}.
    pub fn conjugate(&self) -> Exponent {
        self.p.conjugate()
    }
}

fn validate_orders(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfDomain {
            name: "n",
            value: n as f64,
            domain: "1..=32",
        });
    }
    if k >= n {
        return Err(Error::OutOfDomain {
            name: "k",
            value: k as f64,
            domain: "0 <= k <= n-1",
        });
    }
    Ok(())
}

fn check_point<T: Scalar>(a: &T) -> Result<()> {
    if *a <= T::zero() || *a >= T::one() {
        return Err(Error::OutOfDomain {
            name: "a",
            value: a.to_f64(),
            domain: "(0;1)",
        });
    }
    Ok(())
}

fn sign_scalar<T: Scalar>(exponent: usize) -> T {
    if exponent % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// The weight polynomial entering both kernel pieces:
/// `sum_{l<n} (-1)^(n-1-l) C(2n-1-k, n-1-l) x^(n-1-l) a^l sum_{m<=l} C(n-1+m, m) x^m`.
/// Degree at most n-1 in x.
pub fn kernel_factor<T: Scalar>(n: usize, k: usize, a: &T) -> Result<Polynomial<T>> {
    validate_orders(n, k)?;
    let mut coeffs = vec![T::zero(); n];
    for l in 0..n {
        let outer: T = scalar_from_bigint::<T>(binomial(2 * n - 1 - k, n - 1 - l));
        let sgn: T = sign_scalar::<T>(n - 1 - l);
        let a_pow = scalar_pow(a, l);
        let factor = sgn * outer * a_pow;
        for m in 0..=l {
            let inner: T = scalar_from_bigint::<T>(binomial(n - 1 + m, m));
            let deg = n - 1 - l + m;
            coeffs[deg] = coeffs[deg].clone() + factor.clone() * inner;
        }
    }
    Ok(Polynomial::new(coeffs))
}

/// The reproducing kernel g(·, a) of y ↦ y⁽ᵏ⁾(a) on W̊ⁿ₂[0;1], as a
/// two-piece polynomial with knot at `a`. Each piece has degree at most
/// 2n-1; the function satisfies Dirichlet conditions of order n-1 at both
/// endpoints and is C^(2n-k-2) across the knot.
pub fn point_eval_kernel<T: Scalar>(n: usize, k: usize, a: &T) -> Result<PiecewisePolynomial<T>> {
    validate_orders(n, k)?;
    check_point(a)?;
    let inv_fact = inv_factorial::<T>(2 * n - k - 1);
    let one_minus_a = T::one() - a.clone();

    // left piece: (-1)^(n-k-1)/(2n-k-1)! (1-a)^(n-k) x^n h(1-x, 1-a)
    let h_left = kernel_factor(n, k, &one_minus_a)?;
    let h_left_flipped = h_left.compose_affine(&-T::one(), &T::one());
    let left_scale =
        sign_scalar::<T>(n - k - 1) * inv_fact.clone() * scalar_pow(&one_minus_a, n - k);
    let left = h_left_flipped.mul_xk(n).scale(&left_scale);

    // right piece: (-1)^(n-1)/(2n-k-1)! a^(n-k) (1-x)^n h(x, a)
    let h_right = kernel_factor(n, k, a)?;
    let one_minus_x = Polynomial::new(vec![T::one(), -T::one()]);
    let right_scale = sign_scalar::<T>(n - 1) * inv_fact * scalar_pow(a, n - k);
    let right = (&h_right * &one_minus_x.pow(n as u32)).scale(&right_scale);

    PiecewisePolynomial::two_pieces(a.clone(), left, right)
}

/// n-th x-derivative of the kernel: two pieces of degree at most n-1,
/// orthogonal to 𝒫_{n-1}, continuous at `a` except for a unit jump when
/// k = n-1.
pub fn point_eval_kernel_deriv<T: Scalar>(
    n: usize,
    k: usize,
    a: &T,
) -> Result<PiecewisePolynomial<T>> {
    let mut g = point_eval_kernel(n, k, a)?;
    for _ in 0..n {
        g = g.derivative();
    }
    Ok(g)
}

/// The fixed jump part of the spline family:
/// left piece (-1)^(n-k-1) (x-a)^(n-k-1) / (n-k-1)!, right piece 0.
/// For k = n-1 this is the characteristic function of [0; a].
pub fn jump_spline<T: Scalar>(n: usize, k: usize, a: &T) -> Result<PiecewisePolynomial<T>> {
    validate_orders(n, k)?;
    check_point(a)?;
    let left = jump_spline_left(n, k, a);
    PiecewisePolynomial::two_pieces(a.clone(), left, Polynomial::zero())
}

fn jump_spline_left<T: Scalar>(n: usize, k: usize, a: &T) -> Polynomial<T> {
    let d = n - k - 1;
    let scale = sign_scalar::<T>(d) * inv_factorial::<T>(d);
    Polynomial::x_minus(a).pow(d as u32).scale(&scale)
}

/// One basis member of the ν-parametrization:
/// `(-1)^(n-1-l) (x-a)^(n-1-l) / (n-1-l)!`.
fn nu_basis<T: Scalar>(n: usize, l: usize, a: &T) -> Polynomial<T> {
    let d = n - 1 - l;
    let scale = sign_scalar::<T>(d) * inv_factorial::<T>(d);
    Polynomial::x_minus(a).pow(d as u32).scale(&scale)
}

/// A member of the spline family representing y ↦ y⁽ᵏ⁾(a): the right piece
/// is the ν-combination of the basis, the left piece adds the fixed jump
/// part, so left - right equals [`jump_spline`] identically.
pub fn functional_spline<T: Scalar>(
    n: usize,
    k: usize,
    a: &T,
    nu: &[T],
) -> Result<PiecewisePolynomial<T>> {
    validate_orders(n, k)?;
    check_point(a)?;
    if nu.len() != n {
        return Err(Error::InvalidProblem(format!(
            "nu has length {} but n = {n}",
            nu.len()
        )));
    }
    let mut right = Polynomial::zero();
    for (l, coeff) in nu.iter().enumerate() {
        right = &right + &nu_basis(n, l, a).scale(coeff);
    }
    let left = &right + &jump_spline_left(n, k, a);
    PiecewisePolynomial::two_pieces(a.clone(), left, right)
}

/// ν recovering a given correction polynomial u: the family member with
/// these coefficients equals `kernel_deriv - u + (kernel pieces shift)`;
/// concretely `nu_l = (-1)^(n-1-l) (g_right - u)^((n-1-l))(a)`.
pub fn nu_vector_for<T: Scalar>(
    n: usize,
    k: usize,
    a: &T,
    correction: &Polynomial<T>,
) -> Result<Vec<T>> {
    let g = point_eval_kernel_deriv(n, k, a)?;
    let right = &g.pieces()[1] - correction;
    let mut nu = Vec::with_capacity(n);
    for l in 0..n {
        let mut d = right.clone();
        for _ in 0..(n - 1 - l) {
            d = d.derivative();
        }
        nu.push(sign_scalar::<T>(n - 1 - l) * d.eval(a));
    }
    Ok(nu)
}

/// Legendre coefficients `alpha_m = (2m+1) P_m^(k-n)(a)` of the kernel
/// derivative, for `m = n..=max_index` (all lower coefficients vanish).
pub fn kernel_legendre_coeffs(n: usize, k: usize, a: f64, max_index: usize) -> Result<Vec<f64>> {
    validate_orders(n, k)?;
    if max_index < n {
        return Err(Error::InvalidProblem(format!(
            "max_index {max_index} below n = {n}"
        )));
    }
    Ok((n..=max_index)
        .map(|m| (2 * m + 1) as f64 * legendre_antiderivative_value(m, n - k, a))
        .collect())
}

/// An element of W̊ⁿ_p[0;1] together with its derivatives up to order n.
///
/// `derivs[j]` is y⁽ʲ⁾; the top entry is the generating density itself.
#[derive(Debug, Clone)]
pub struct TestFunction<T: Scalar> {
    derivs: Vec<PiecewisePolynomial<T>>,
}

impl<T: Scalar> TestFunction<T> {
    /// Highest derivative order stored (the n it was built with).
    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }

    /// y⁽ʲ⁾(x) for 0 ≤ j ≤ n.
    pub fn deriv(&self, j: usize, x: &T) -> T {
        self.derivs[j].eval(x)
    }

    pub fn deriv_piecewise(&self, j: usize) -> &PiecewisePolynomial<T> {
        &self.derivs[j]
    }
}

/// Integrate a density n times into a test function, verifying first that
/// it is orthogonal to 𝒫_{n-1} (otherwise the boundary conditions at 1
/// fail and the function leaves W̊ⁿ_p). Rejections carry the first
/// offending moment index.
pub fn test_function_from<T: Scalar>(
    h: &PiecewisePolynomial<T>,
    n: usize,
) -> Result<TestFunction<T>> {
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfDomain {
            name: "n",
            value: n as f64,
            domain: "1..=32",
        });
    }
    for j in 0..n {
        let weighted = h.map_pieces(|p| p.mul_xk(j));
        let moment = weighted.integral(&T::zero(), &T::one())?;
        if moment.to_f64().abs() > 1e-12 {
            return Err(Error::MomentViolation {
                index: j,
                value: moment.to_f64(),
            });
        }
    }
    let mut derivs = vec![h.clone()];
    for _ in 0..n {
        let last = derivs.last().unwrap();
        derivs.push(last.antiderivative());
    }
    derivs.reverse();
    Ok(TestFunction { derivs })
}

/// y⁽ᵏ⁾(a) from the one-sided Taylor identity on [0; a]:
/// `int_0^a h(t) (a-t)^(n-k-1) / (n-k-1)! dt` for h = y⁽ⁿ⁾.
pub fn kth_deriv_from_left<T: Scalar>(
    h: &PiecewisePolynomial<T>,
    n: usize,
    k: usize,
    a: &T,
) -> Result<T> {
    validate_orders(n, k)?;
    let d = n - k - 1;
    // (a - t)^d as a polynomial in t
    let poly = Polynomial::new(vec![a.clone(), -T::one()]).pow(d as u32);
    let weighted = h.map_pieces(|p| p * &poly);
    Ok(weighted.integral(&T::zero(), a)? * inv_factorial::<T>(d))
}

/// y⁽ᵏ⁾(a) from the mirrored identity on [a; 1]:
/// `(-1)^(n-k) int_a^1 h(t) (t-a)^(n-k-1) / (n-k-1)! dt`.
pub fn kth_deriv_from_right<T: Scalar>(
    h: &PiecewisePolynomial<T>,
    n: usize,
    k: usize,
    a: &T,
) -> Result<T> {
    validate_orders(n, k)?;
    let d = n - k - 1;
    let poly = Polynomial::x_minus(a).pow(d as u32);
    let weighted = h.map_pieces(|p| p * &poly);
    let val = weighted.integral(a, &T::one())? * inv_factorial::<T>(d);
    Ok(sign_scalar::<T>(n - k) * val)
}
