//! Dense univariate polynomials on [0;1] with exact-rational or float
//! coefficients.

use super::scalar::{scalar_from_bigint, Rational, Scalar};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Largest supported degree. Binomial coefficients in the kernel
/// constructions grow combinatorially with degree, and float coefficient
/// representations lose meaning well before this point.
pub const DEGREE_CAP: usize = 64;

/// A polynomial stored as coefficients in ascending degree order.
///
/// The zero polynomial is the empty coefficient vector; otherwise the
/// trailing coefficient is nonzero.
#[derive(Clone, PartialEq)]
pub struct Polynomial<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// `x - a`.
    pub fn x_minus(a: &T) -> Self {
        Polynomial {
            coeffs: vec![-a.clone(), T::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluation restricted to the domain [0;1].
    pub fn eval_checked(&self, x: &T) -> Result<T> {
        if *x < T::zero() || *x > T::one() {
            return Err(Error::OutOfDomain {
                name: "x",
                value: x.to_f64(),
                domain: "[0;1]",
            });
        }
        Ok(self.eval(x))
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_int(i as i64))
            .collect();
        Self::new(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_int(i as i64 + 1));
        }
        Self::new(coeffs)
    }

    /// Iterated calculus: positive order differentiates, negative order
    /// antidifferentiates with all integration constants zero, zero is the
    /// identity. `|order|` is capped at [`DEGREE_CAP`].
    pub fn calculus(&self, order: i32) -> Result<Self> {
        if order.unsigned_abs() as usize > DEGREE_CAP {
            return Err(Error::DegreeCap {
                got: order.unsigned_abs() as usize,
                cap: DEGREE_CAP,
            });
        }
        let mut p = self.clone();
        if order >= 0 {
            for _ in 0..order {
                p = p.derivative();
            }
        } else {
            for _ in 0..(-order) {
                p = p.antiderivative();
            }
            if p.degree().unwrap_or(0) > DEGREE_CAP {
                return Err(Error::DegreeCap {
                    got: p.degree().unwrap_or(0),
                    cap: DEGREE_CAP,
                });
            }
        }
        Ok(p)
    }

    /// Definite integral over [lo; hi] via the antiderivative. Exact on the
    /// rational backend.
    pub fn integral(&self, lo: &T, hi: &T) -> T {
        let f = self.antiderivative();
        f.eval(hi) - f.eval(lo)
    }

    /// `self(alpha * x + beta)`.
    pub fn compose_affine(&self, alpha: &T, beta: &T) -> Self {
        // Horner in the substituted variable.
        let sub = Polynomial::new(vec![beta.clone(), alpha.clone()]);
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &sub) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// `self * x^k`.
    pub fn mul_xk(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::constant(T::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Synthetic division by `(x - root)`, discarding the remainder.
    /// Used to deflate known (possibly approximate) roots.
    pub fn deflate(&self, root: &T) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![T::zero(); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for i in (0..n - 1).rev() {
            out[i] = carry.clone();
            carry = self.coeffs[i].clone() + carry * root.clone();
        }
        Self::new(out)
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl Polynomial<Rational> {
    /// Lossy conversion to the float backend.
    pub fn to_float(&self) -> Polynomial<f64> {
        self.map_coeffs(|c| c.to_f64())
    }

    /// Make the polynomial monic (caller guarantees nonzero).
    fn monic(&self) -> Self {
        let lc = self.leading_coeff().expect("nonzero polynomial").clone();
        self.scale(&(Rational::one() / lc))
    }

    /// Euclidean GCD, returned monic; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Remainder of Euclidean division.
    fn rem(&self, div: &Self) -> Self {
        let mut r = self.clone();
        let d = div.degree().expect("division by zero polynomial");
        let lc = div.leading_coeff().unwrap().clone();
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            let factor = r.leading_coeff().unwrap().clone() / lc.clone();
            let shifted = div.mul_xk(rd - d).scale(&factor);
            r = &r - &shifted;
        }
        r
    }

    /// Square-free part `self / gcd(self, self')`.
    pub fn square_free(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_exact(&g)
    }

    fn div_exact(&self, div: &Self) -> Self {
        let mut r = self.clone();
        let d = div.degree().expect("division by zero polynomial");
        let lc = div.leading_coeff().unwrap().clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            let factor = r.leading_coeff().unwrap().clone() / lc.clone();
            q[rd - d] = factor.clone();
            let shifted = div.mul_xk(rd - d).scale(&factor);
            r = &r - &shifted;
        }
        Polynomial::new(q)
    }
}

impl<T: Scalar> std::ops::Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Scalar> std::ops::Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Scalar> std::ops::Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Scalar> std::ops::Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Rationals print as `p/q`, floats in their shortest form.
impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*x", c)?,
                _ => write!(f, "{}*x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

/// Integer power of a scalar.
pub fn scalar_pow<T: Scalar>(base: &T, e: usize) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

/// `1 / n!` as a scalar.
pub fn inv_factorial<T: Scalar>(n: usize) -> T {
    T::from_big_ratio(BigInt::from(1), super::scalar::factorial(n))
}

/// `n!` as a scalar.
pub fn factorial_scalar<T: Scalar>(n: usize) -> T {
    scalar_from_bigint(super::scalar::factorial(n))
}
