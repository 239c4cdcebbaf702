//! Integration: adaptive Gauss–Legendre quadrature, L_q norms of piecewise
//! polynomials (exact for integer q on the rational backend), and the
//! singular-endpoint integrals needed by the L_p solvers.

use super::exponent::Exponent;
use super::piecewise::PiecewisePolynomial;
use super::poly::Polynomial;
use super::roots::{self, Parity, RootEvent};
use super::scalar::{scalar_from_f64, Rational, Scalar};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};
use std::sync::OnceLock;

/// Hard cap on adaptive subdivision.
pub const MAX_SEGMENTS: usize = 1 << 14;

/// Relative tolerance targeted by the adaptive integrator.
pub const QUAD_REL_TOL: f64 = 1e-12;

/// 32-point Gauss–Legendre nodes and weights on [-1; 1], generated once by
/// Newton iteration on the recurrence.
fn gauss_rule() -> &'static [(f64, f64); 32] {
    static RULE: OnceLock<[(f64, f64); 32]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = 32usize;
        let mut rule = [(0.0, 0.0); 32];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                // p_n(x) and p_n'(x) via the three-term recurrence
                let (mut p0, mut p1) = (1.0, x);
                for k in 1..n {
                    let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (mut p0, mut p1) = (1.0, x);
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            rule[i] = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

/// Single 32-node Gauss panel on [a; b].
pub fn gauss32(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in gauss_rule() {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Adaptive Gauss with recursive halving until the relative change between
/// a panel and its two halves drops below `rel_tol`; errors out at
/// [`MAX_SEGMENTS`].
pub fn adaptive_gauss(
    f: &mut impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64> {
    if a >= b {
        return Ok(0.0);
    }
    let mut total = 0.0;
    let mut segments = 0usize;
    let whole = gauss32(f, a, b);
    let mut stack = vec![(a, b, whole, 0u32)];
    while let Some((lo, hi, est, depth)) = stack.pop() {
        segments += 1;
        if segments > MAX_SEGMENTS {
            return Err(Error::QuadratureCap {
                tol: rel_tol,
                segments: MAX_SEGMENTS,
            });
        }
        let mid = 0.5 * (lo + hi);
        let left = gauss32(f, lo, mid);
        let right = gauss32(f, mid, hi);
        let refined = left + right;
        let err = (refined - est).abs();
        if err <= rel_tol * refined.abs().max(1e-300) || depth >= 52 {
            total += refined;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    Ok(total)
}

/// One sign-constant segment of a piecewise polynomial, with roots at the
/// endpoints divided out so powers of the function can be evaluated
/// accurately arbitrarily close to those roots.
#[derive(Debug, Clone)]
pub struct PowerSegment {
    pub a: f64,
    pub b: f64,
    /// Sign of the function inside the segment; 0 for an identically-zero
    /// piece.
    pub sign: f64,
    /// Endpoint root multiplicities (1 = crossing, 2 = touch point).
    pub mult_a: u32,
    pub mult_b: u32,
    core: Polynomial<f64>,
}

impl PowerSegment {
    /// |f(x)|^alpha via the deflated core; `dist_a`/`dist_b` are the
    /// distances to the segment endpoints, supplied separately so graded
    /// substitutions can compute them without cancellation.
    pub fn abs_power(&self, x: f64, dist_a: f64, dist_b: f64, alpha: f64) -> f64 {
        let core_val = self.core.eval(&x);
        let mut mag = core_val.abs().max(1e-300).powf(alpha);
        if self.mult_a > 0 {
            mag *= dist_a.max(0.0).powf(self.mult_a as f64 * alpha);
        }
        if self.mult_b > 0 {
            mag *= dist_b.max(0.0).powf(self.mult_b as f64 * alpha);
        }
        mag
    }
}

/// Substitution exponent flattening an endpoint factor `t^(m*alpha)` into
/// `u^(gamma*(m*alpha + 1) - 1)` with enough smoothness for Gauss panels.
fn grading(mult: u32, alpha: f64) -> Result<f64> {
    if mult == 0 {
        return Ok(1.0);
    }
    let power = mult as f64 * alpha + 1.0;
    if power <= 1e-3 {
        return Err(Error::Unsupported(
            "endpoint singularity",
            format!("exponent {alpha} with multiplicity {mult} is not integrable"),
        ));
    }
    Ok(((6.0 / power).ceil()).clamp(1.0, 12.0))
}

fn integrate_segment(
    seg: &PowerSegment,
    alpha: f64,
    weight: &dyn Fn(f64) -> f64,
    rel_tol: f64,
) -> Result<f64> {
    let (a, b) = (seg.a, seg.b);
    if b - a <= f64::EPSILON * 4.0 {
        return Ok(0.0);
    }
    let mid = 0.5 * (a + b);
    let ga = grading(seg.mult_a, alpha)?;
    let gb = grading(seg.mult_b, alpha)?;
    // left half: x = a + (mid - a) u^ga
    let la = mid - a;
    let mut fl = |u: f64| {
        let da = la * u.powf(ga);
        let x = a + da;
        seg.abs_power(x, da, b - x, alpha) * weight(x) * ga * la * u.powf(ga - 1.0)
    };
    let left = adaptive_gauss(&mut fl, 0.0, 1.0, rel_tol)?;
    // right half: x = b - (b - mid) u^gb
    let lb = b - mid;
    let mut fr = |u: f64| {
        let db = lb * u.powf(gb);
        let x = b - db;
        seg.abs_power(x, x - a, db, alpha) * weight(x) * gb * lb * u.powf(gb - 1.0)
    };
    let right = adaptive_gauss(&mut fr, 0.0, 1.0, rel_tol)?;
    Ok(left + right)
}

/// Sign-constant segmentation of `f` on [0;1]: split at knots and at every
/// isolated root.
pub fn power_segments(f: &PiecewisePolynomial<f64>) -> Vec<PowerSegment> {
    let events = roots::isolate_roots(f, &0.0, &1.0, &roots::DEFAULT_ROOT_EPS);
    let mult_at = |x: f64| -> u32 {
        for e in &events {
            if let RootEvent::Root { at, parity } = e {
                if (at - x).abs() <= 4.0 * roots::DEFAULT_ROOT_EPS {
                    return match parity {
                        Parity::Odd => 1,
                        Parity::Even => 2,
                    };
                }
            }
        }
        0
    };
    let mut cuts: Vec<f64> = f.knots().to_vec();
    for e in &events {
        if let RootEvent::Root { at, .. } = e {
            cuts.push(*at);
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 4.0 * roots::DEFAULT_ROOT_EPS);

    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= f64::EPSILON {
            continue;
        }
        let piece = f.pieces()[f.piece_index(&(0.5 * (a + b)))].clone();
        if piece.is_zero() {
            out.push(PowerSegment {
                a,
                b,
                sign: 0.0,
                mult_a: 0,
                mult_b: 0,
                core: piece,
            });
            continue;
        }
        let mid_val = piece.eval(&(0.5 * (a + b)));
        let (mult_a, mult_b) = (mult_at(a), mult_at(b));
        let mut core = piece;
        for _ in 0..mult_a {
            core = core.deflate(&a);
        }
        for _ in 0..mult_b {
            core = core.deflate(&b);
        }
        out.push(PowerSegment {
            a,
            b,
            sign: if mid_val >= 0.0 { 1.0 } else { -1.0 },
            mult_a,
            mult_b,
            core,
        });
    }
    out
}

/// Graded quadrature nodes `(x, weight, dist_a, dist_b)` covering a power
/// segment: each half is mapped by `u -> u^gamma` toward its endpoint so
/// that `|f|^alpha` becomes smooth, then tiled with Gauss panels.
pub fn graded_nodes(
    seg: &PowerSegment,
    alpha: f64,
    panels_per_half: usize,
) -> Result<Vec<(f64, f64, f64, f64)>> {
    let (a, b) = (seg.a, seg.b);
    let mut nodes = Vec::with_capacity(panels_per_half * 64);
    if b - a <= 4.0 * f64::EPSILON {
        return Ok(nodes);
    }
    let mid = 0.5 * (a + b);
    let ga = grading(seg.mult_a, alpha)?;
    let gb = grading(seg.mult_b, alpha)?;
    let rule = gauss_rule();
    let mut half = |gamma: f64, from_left: bool| {
        let span = mid - a; // both halves have the same width
        for panel in 0..panels_per_half {
            let u0 = panel as f64 / panels_per_half as f64;
            let u1 = (panel + 1) as f64 / panels_per_half as f64;
            let (um, uh) = (0.5 * (u0 + u1), 0.5 * (u1 - u0));
            for &(t, w) in rule {
                let u: f64 = um + uh * t;
                let dist = span * u.powf(gamma);
                let jac = gamma * span * u.powf(gamma - 1.0) * uh * w;
                let (x, da, db) = if from_left {
                    (a + dist, dist, b - (a + dist))
                } else {
                    (b - dist, b - dist - a, dist)
                };
                nodes.push((x, jac, da, db));
            }
        }
    };
    half(ga, true);
    half(gb, false);
    Ok(nodes)
}

/// `∫_0^1 |f|^alpha · sgn(f)^signed · weight dx` with sign-constant
/// segmentation, endpoint deflation and graded substitution. Works for any
/// `alpha > -1` against simple endpoint roots; the workhorse behind the
/// smooth-exponent solver, the orthogonality defects and fractional norms.
pub fn signed_power_integral(
    f: &PiecewisePolynomial<f64>,
    alpha: f64,
    signed: bool,
    weight: &dyn Fn(f64) -> f64,
    rel_tol: f64,
) -> Result<f64> {
    let mut total = 0.0;
    for seg in power_segments(f) {
        if seg.sign == 0.0 {
            continue; // identically-zero piece contributes nothing
        }
        let val = integrate_segment(&seg, alpha, weight, rel_tol)?;
        total += if signed { seg.sign * val } else { val };
    }
    Ok(total)
}

/// Sup norm of a piecewise polynomial over [0;1]: piece endpoints (both
/// one-sided limits at knots) plus interior critical points.
pub fn sup_norm(f: &PiecewisePolynomial<f64>) -> f64 {
    let mut best: f64 = 0.0;
    let knots = f.knots();
    for (i, piece) in f.pieces().iter().enumerate() {
        let (a, b) = (knots[i], knots[i + 1]);
        best = best.max(piece.eval(&a).abs()).max(piece.eval(&b).abs());
        let scale: f64 = piece.coeffs().iter().map(|c| c.abs()).sum::<f64>();
        let zero_tol = scale.max(1e-300) * 1e-12;
        for (x, _) in roots::polynomial_roots(
            &piece.derivative(),
            &a,
            &b,
            &roots::DEFAULT_ROOT_EPS,
            &zero_tol,
        ) {
            best = best.max(piece.eval(&x).abs());
        }
    }
    best
}

/// L_q norm on the float backend.
///
/// `q = ∞` takes the sup over pieces; finite `q` splits [0;1] into
/// sign-constant segments (knots plus isolated roots). Integer `q`
/// integrates the polynomial powers exactly; fractional `q` uses graded
/// adaptive Gauss panels per segment.
pub fn lq_norm(f: &PiecewisePolynomial<f64>, q: &Exponent) -> Result<f64> {
    match q {
        Exponent::Infinity => Ok(sup_norm(f)),
        Exponent::One => lq_norm_finite(f, 1.0),
        Exponent::Finite(v) => lq_norm_finite(f, *v),
    }
}

fn lq_norm_finite(f: &PiecewisePolynomial<f64>, q: f64) -> Result<f64> {
    if q < 1.0 {
        return Err(Error::OutOfDomain {
            name: "q",
            value: q,
            domain: "[1; inf]",
        });
    }
    let total = if q.fract() == 0.0 && q <= 64.0 {
        // exact polynomial integration of |p|^q per sign segment
        let qi = q as u32;
        let mut acc = 0.0;
        for seg in power_segments(f) {
            if seg.sign == 0.0 {
                continue;
            }
            let piece = &f.pieces()[f.piece_index(&(0.5 * (seg.a + seg.b)))];
            let power = piece.pow(qi);
            let val = power.integral(&seg.a, &seg.b);
            acc += val.abs();
        }
        acc
    } else {
        signed_power_integral(f, q, false, &|_| 1.0, QUAD_REL_TOL)?
    };
    Ok(total.max(0.0).powf(1.0 / q))
}

/// Try to recognize a float as a small-denominator rational, verified
/// exactly against `p`.
fn certified_rational_root(p: &Polynomial<Rational>, approx: f64) -> Option<Rational> {
    let mut x = approx;
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
    x -= x.floor();
    for _ in 0..40 {
        let cand = Rational::new(p1.into(), q1.into());
        if (cand.to_f64() - approx).abs() < 1e-11 && q1 > 0 {
            if p.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
        if x.abs() < 1e-13 || q1 > 1_000_000_000 {
            break;
        }
        x = 1.0 / x;
        let a = x.floor() as i128;
        x -= x.floor();
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    None
}

/// Exact sign-change points of a rational piece on `(a; b)`, falling back
/// to deep dyadic bisection (width 2^-80) for irrational roots. The
/// returned points are exact split locations whenever the root is a small
/// rational; otherwise they bracket it tightly enough that downstream
/// integrals are correct to far below f64 resolution.
fn exact_sign_splits(p: &Polynomial<Rational>, a: &Rational, b: &Rational) -> Vec<Rational> {
    let square_free = p.square_free();
    let float_piece = square_free.to_float();
    let scale: f64 = float_piece.coeffs().iter().map(|c| c.abs()).sum();
    let zero_tol = scale.max(1e-300) * 1e-12;
    let approx = roots::polynomial_roots(
        &float_piece,
        &a.to_f64(),
        &b.to_f64(),
        &roots::DEFAULT_ROOT_EPS,
        &zero_tol,
    );
    let mut out = Vec::new();
    for (x, parity) in approx {
        if parity != Parity::Odd {
            continue;
        }
        if let Some(r) = certified_rational_root(&square_free, x) {
            if r > *a && r < *b {
                out.push(r);
            }
            continue;
        }
        // dyadic refinement around the float bracket
        let mut lo = scalar_from_f64::<Rational>(x - 1e-9).max(a.clone());
        let mut hi = scalar_from_f64::<Rational>(x + 1e-9).min(b.clone());
        if square_free.eval(&lo).is_positive() == square_free.eval(&hi).is_positive() {
            // float root too blurry; bisect the whole piece interval instead
            lo = a.clone();
            hi = b.clone();
        }
        let flo = square_free.eval(&lo);
        let mut lo_pos = flo.is_positive();
        let eps = Rational::new(1.into(), num_bigint::BigInt::from(2u8).pow(80));
        while hi.clone() - lo.clone() > eps {
            let mid = (lo.clone() + hi.clone()).half();
            let fm = square_free.eval(&mid);
            if fm.is_zero() {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if fm.is_positive() == lo_pos {
                lo = mid;
                lo_pos = fm.is_positive();
            } else {
                hi = mid;
            }
        }
        out.push((lo + hi).half());
    }
    out.sort();
    out.dedup();
    out
}

/// L_q norm on the exact backend for integer `q`.
///
/// Even powers integrate exactly with no splitting. Odd powers split at
/// certified sign changes; if a sign change is irrational the split point
/// is a dyadic bracket midpoint of width 2^-80, so the rational result
/// deviates from the true norm by far less than any tolerance used here.
pub fn lq_norm_exact(f: &PiecewisePolynomial<Rational>, q: u32) -> Result<Rational> {
    if q == 0 {
        return Err(Error::OutOfDomain {
            name: "q",
            value: 0.0,
            domain: "[1; inf]",
        });
    }
    let mut total = Rational::zero();
    let knots = f.knots();
    for (i, piece) in f.pieces().iter().enumerate() {
        let (a, b) = (&knots[i], &knots[i + 1]);
        if piece.is_zero() {
            continue;
        }
        let power = piece.pow(q);
        if q % 2 == 0 {
            total = total + power.integral(a, b);
        } else {
            let mut cuts = vec![a.clone()];
            cuts.extend(exact_sign_splits(piece, a, b));
            cuts.push(b.clone());
            for w in cuts.windows(2) {
                let val = power.integral(&w[0], &w[1]);
                total = total + val.abs();
            }
        }
    }
    Ok(total)
}

/// `q`-th root of the exact integral, as a float (roots of rationals are
/// irrational in general).
pub fn lq_norm_exact_value(f: &PiecewisePolynomial<Rational>, q: u32) -> Result<f64> {
    Ok(lq_norm_exact(f, q)?
        .to_f64()
        .max(0.0)
        .powf(1.0 / q as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::piecewise::PiecewisePolynomial;
    use crate::polycore::scalar::ratio;

    fn linear() -> PiecewisePolynomial<f64> {
        PiecewisePolynomial::from_polynomial(Polynomial::new(vec![-1.0, 2.0]))
    }

    #[test]
    fn gauss_exactness() {
        // degree-63 polynomial integrated exactly by a single panel
        let mut f = |x: f64| x.powi(63) - 3.0 * x.powi(10) + 1.0;
        let got = gauss32(&mut f, 0.0, 1.0);
        let expect = 1.0 / 64.0 - 3.0 / 11.0 + 1.0;
        assert!((got - expect).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let mut f = |x: f64| 1.0 / ((x - 0.5).powi(2) + 1e-4);
        let got = adaptive_gauss(&mut f, 0.0, 1.0, 1e-12).unwrap();
        let expect = 2.0 * (0.5f64 / 1e-2).atan() / 1e-2;
        assert!((got - expect).abs() < 1e-8 * expect);
    }

    #[test]
    fn l1_and_l2_of_linear() {
        // two triangles of area 1/4 each
        let f = linear();
        assert!((lq_norm(&f, &Exponent::One).unwrap() - 0.5).abs() < 1e-14);
        // sqrt of int (2x-1)^2 = 1/sqrt(3)
        let l2 = lq_norm(&f, &Exponent::Finite(2.0)).unwrap();
        assert!((l2 - 1.0 / 3.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn sup_norm_of_step() {
        let f = PiecewisePolynomial::two_pieces(
            0.3,
            Polynomial::constant(0.7),
            Polynomial::constant(-0.3),
        )
        .unwrap();
        assert_eq!(lq_norm(&f, &Exponent::Infinity).unwrap(), 0.7);
    }

    #[test]
    fn fractional_q_matches_closed_form() {
        // ||2x - 1||_q = (q + 1)^(-1/q) for every q >= 1
        let f = linear();
        for &q in &[1.5, 2.5, 3.7, 7.3] {
            let got = lq_norm(&f, &Exponent::Finite(q)).unwrap();
            let expect = (q + 1.0).powf(-1.0 / q);
            assert!((got - expect).abs() < 1e-11, "q={q}: {got} vs {expect}");
        }
    }

    #[test]
    fn q_below_one_rejected() {
        assert!(lq_norm_finite(&linear(), 0.9).is_err());
    }

    #[test]
    fn exact_norms_of_legendre() {
        use crate::polycore::legendre::legendre;
        // ||P_m||_2^2 = 1/(2m+1)
        for m in 1..=4usize {
            let p: Polynomial<Rational> = legendre(m).unwrap();
            let f = PiecewisePolynomial::from_polynomial(p);
            let sq = lq_norm_exact(&f, 2).unwrap();
            assert_eq!(sq, ratio(1, 2 * m as i64 + 1));
        }
    }

    #[test]
    fn exact_odd_norm_with_rational_root() {
        // ||2x - 1||_1 = 1/2 exactly (root certified at 1/2)
        let p: Polynomial<Rational> = Polynomial::new(vec![ratio(-1, 1), ratio(2, 1)]);
        let f = PiecewisePolynomial::from_polynomial(p);
        assert_eq!(lq_norm_exact(&f, 1).unwrap(), ratio(1, 2));
    }

    #[test]
    fn exact_odd_norm_with_irrational_root() {
        // |x^2 - 1/2| on [0;1]: root at 1/sqrt(2); closed form
        // int = 2/3 * 2^(1/2)/2 ... compare against float route instead
        let p: Polynomial<Rational> =
            Polynomial::new(vec![ratio(-1, 2), ratio(0, 1), ratio(1, 1)]);
        let f = PiecewisePolynomial::from_polynomial(p);
        let exact = lq_norm_exact(&f, 1).unwrap().to_f64();
        let float = lq_norm(&f.to_float(), &Exponent::One).unwrap();
        assert!((exact - float).abs() < 1e-12, "{exact} vs {float}");
    }

    #[test]
    fn float_agrees_with_exact_for_integer_q() {
        // moderate coefficients, two pieces, sign changes inside both
        let left: Polynomial<Rational> = Polynomial::new(vec![
            ratio(3, 10),
            ratio(-12, 10),
            ratio(7, 10),
            ratio(2, 1),
        ]);
        let right: Polynomial<Rational> =
            Polynomial::new(vec![ratio(-1, 2), ratio(1, 1), ratio(-9, 10)]);
        let f = PiecewisePolynomial::two_pieces(ratio(2, 5), left, right).unwrap();
        for q in 1..=4u32 {
            let exact = lq_norm_exact_value(&f, q).unwrap();
            let float = lq_norm(&f.to_float(), &Exponent::new(q as f64).unwrap()).unwrap();
            assert!(
                (exact - float).abs() <= 1e-12 * exact.abs().max(1.0),
                "q={q}: {exact} vs {float}"
            );
        }
    }
}
