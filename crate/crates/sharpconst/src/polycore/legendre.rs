//! Legendre polynomials shifted to [0;1] and their antiderivatives.
//!
//! The family is generated from the Rodrigues form
//! `P_m = ((x^2 - x)^m)^(m) / m!` with no renormalization, so
//! `int_0^1 P_i P_j = delta_ij / (2i + 1)` and the leading coefficient of
//! `P_m` is `C(2m, m)`.

use super::poly::{Polynomial, DEGREE_CAP};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Shifted Legendre polynomial `P_m` with exact coefficients converted to
/// the requested backend.
pub fn legendre<T: Scalar>(m: usize) -> Result<Polynomial<T>> {
    legendre_antiderivative(m, 0)
}

/// `j`-fold antiderivative of `P_m` within the Rodrigues family:
/// `((x^2 - x)^m)^(m - j) / m!`. For `1 <= j <= m` it vanishes at both
/// endpoints. Requires `j <= m`; the defining formula stops at order 0.
pub fn legendre_antiderivative<T: Scalar>(m: usize, j: usize) -> Result<Polynomial<T>> {
    if m > DEGREE_CAP {
        return Err(Error::DegreeCap {
            got: m,
            cap: DEGREE_CAP,
        });
    }
    if j > m {
        return Err(Error::OutOfDomain {
            name: "j",
            value: j as f64,
            domain: "0 <= j <= m",
        });
    }
    // (x^2 - x)^m, differentiated m - j times, over m!.
    let base = Polynomial::new(vec![T::zero(), -T::one(), T::one()]);
    let mut p = base.pow(m as u32);
    for _ in 0..(m - j) {
        p = p.derivative();
    }
    let inv = super::poly::inv_factorial::<T>(m);
    Ok(p.scale(&inv))
}

/// `P_m(x)` by the three-term recurrence; stable for large `m` where the
/// monomial coefficients are useless in floating point.
pub fn legendre_value(m: usize, x: f64) -> f64 {
    let t = 2.0 * x - 1.0;
    if m == 0 {
        return 1.0;
    }
    if m == 1 {
        return t;
    }
    let (mut prev, mut cur) = (1.0, t);
    for i in 1..m {
        let next = ((2 * i + 1) as f64 * t * cur - i as f64 * prev) / (i + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_m^(-j)(x)` in floating point for arbitrary `m`.
///
/// Expands the antiderivative in the Legendre basis by propagating
/// `int_0^x P_i = (P_{i+1} - P_{i-1}) / (2(2i+1))` (and
/// `int_0^x P_0 = (P_1 + P_0)/2`) `j` times, then sums with the value
/// recurrence. Avoids the huge monomial coefficients of the exact route.
pub fn legendre_antiderivative_value(m: usize, j: usize, x: f64) -> f64 {
    if j == 0 {
        return legendre_value(m, x);
    }
    // Sparse Legendre coefficients, index -> coefficient.
    let mut coeffs: Vec<(usize, f64)> = vec![(m, 1.0)];
    for _ in 0..j {
        let mut next: std::collections::BTreeMap<usize, f64> = Default::default();
        for &(i, c) in &coeffs {
            if i == 0 {
                *next.entry(1).or_insert(0.0) += c / 2.0;
                *next.entry(0).or_insert(0.0) += c / 2.0;
            } else {
                let w = c / (2.0 * (2 * i + 1) as f64);
                *next.entry(i + 1).or_insert(0.0) += w;
                *next.entry(i - 1).or_insert(0.0) -= w;
            }
        }
        coeffs = next.into_iter().collect();
    }
    coeffs
        .iter()
        .map(|&(i, c)| c * legendre_value(i, x))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::{binomial, ratio, scalar_from_bigint, Rational};
    use num_traits::Zero;

    #[test]
    fn first_members() {
        // m = 0 -> 1
        let p0: Polynomial<Rational> = legendre(0).unwrap();
        assert_eq!(p0.coeffs(), &[ratio(1, 1)]);
        // m = 1 -> 2x - 1 (differentiate x^2 - x once)
        let p1: Polynomial<Rational> = legendre(1).unwrap();
        assert_eq!(p1.coeffs(), &[ratio(-1, 1), ratio(2, 1)]);
        // m = 2 -> 6x^2 - 6x + 1 (expanded Rodrigues form)
        let p2: Polynomial<Rational> = legendre(2).unwrap();
        assert_eq!(p2.coeffs(), &[ratio(1, 1), ratio(-6, 1), ratio(6, 1)]);
    }

    #[test]
    fn leading_coefficient_is_central_binomial() {
        for m in 0..=12 {
            let p: Polynomial<Rational> = legendre(m).unwrap();
            let expected: Rational = scalar_from_bigint(binomial(2 * m, m));
            assert_eq!(p.leading_coeff().unwrap(), &expected);
        }
    }

    #[test]
    fn orthogonality_exact() {
        let polys: Vec<Polynomial<Rational>> = (0..=12).map(|m| legendre(m).unwrap()).collect();
        for i in 0..=12usize {
            for j in 0..=12usize {
                let prod = &polys[i] * &polys[j];
                let integral = prod.integral(&Rational::zero(), &ratio(1, 1));
                if i == j {
                    assert_eq!(integral, ratio(1, 2 * i as i64 + 1));
                } else {
                    assert!(integral.is_zero(), "i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn antiderivative_members() {
        // m = 1, j = 1 -> x^2 - x
        let p: Polynomial<Rational> = legendre_antiderivative(1, 1).unwrap();
        assert_eq!(p.coeffs(), &[ratio(0, 1), ratio(-1, 1), ratio(1, 1)]);
        // m = 2, j = 0 agrees with legendre(2)
        let p: Polynomial<Rational> = legendre_antiderivative(2, 0).unwrap();
        assert_eq!(p, legendre(2).unwrap());
        // m = 2, j = 1 vanishes at both endpoints
        let p: Polynomial<Rational> = legendre_antiderivative(2, 1).unwrap();
        assert!(p.eval(&Rational::zero()).is_zero());
        assert!(p.eval(&ratio(1, 1)).is_zero());
    }

    #[test]
    fn boundary_vanishing_all_orders() {
        for m in 1..=12usize {
            for j in 1..=m {
                let p: Polynomial<Rational> = legendre_antiderivative(m, j).unwrap();
                assert!(p.eval(&Rational::zero()).is_zero(), "m={m} j={j} at 0");
                assert!(p.eval(&ratio(1, 1)).is_zero(), "m={m} j={j} at 1");
            }
        }
    }

    #[test]
    fn moment_orthogonality() {
        // int_0^1 x^j P_m = 0 for j < m
        for m in 1..=12usize {
            let p: Polynomial<Rational> = legendre(m).unwrap();
            for j in 0..m {
                let moment = p
                    .mul_xk(j)
                    .integral(&Rational::zero(), &ratio(1, 1));
                assert!(moment.is_zero(), "m={m} j={j}");
            }
        }
    }

    #[test]
    fn j_above_m_rejected() {
        assert!(legendre_antiderivative::<f64>(2, 3).is_err());
    }

    #[test]
    fn value_recurrence_matches_coefficients() {
        for m in 0..=12usize {
            let p: Polynomial<f64> = legendre(m).unwrap();
            // Horner on the huge alternating monomial coefficients loses
            // precision relative to the O(1) value, so compare at the
            // coefficient scale.
            let scale: f64 = p.coeffs().iter().map(|c| c.abs()).sum();
            for &x in &[0.0, 0.17, 0.5, 0.83, 1.0] {
                assert!(
                    (p.eval(&x) - legendre_value(m, x)).abs() < 1e-14 * scale + 1e-13,
                    "m={m} x={x}"
                );
            }
        }
    }

    #[test]
    fn antiderivative_value_matches_exact() {
        for m in 0..=10usize {
            for j in 0..=m.min(4) {
                let p: Polynomial<Rational> = legendre_antiderivative(m, j).unwrap();
                for &x in &[0.1, 0.37, 0.5, 0.9] {
                    let exact = p.eval(&Rational::from_float(x).unwrap()).to_f64();
                    let fast = legendre_antiderivative_value(m, j, x);
                    assert!((exact - fast).abs() < 1e-12, "m={m} j={j} x={x}");
                }
            }
        }
    }
}
