//! Real-root isolation for polynomial pieces on an interval.
//!
//! The recursion isolates critical points first (roots of the derivative),
//! then bisects each monotone segment, so clustered residual roots near an
//! optimum are still separated. On the exact backend comparisons are exact
//! and the bracket width is driven below any requested rational epsilon.

use super::piecewise::PiecewisePolynomial;
use super::poly::Polynomial;
use super::scalar::Scalar;

/// Default isolation width for the float backend.
pub const DEFAULT_ROOT_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Sign changes across the root.
    Odd,
    /// The function touches zero without changing sign.
    Even,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RootEvent<T> {
    /// Root of a piece strictly inside its subinterval.
    Root { at: T, parity: Parity },
    /// Interior knot where the one-sided limits have opposite signs.
    KnotSignChange { at: T },
    /// A piece that vanishes identically on part of the range.
    DegenerateSegment { lo: T, hi: T },
}

impl<T: Clone> RootEvent<T> {
    pub fn location(&self) -> T {
        match self {
            RootEvent::Root { at, .. } => at.clone(),
            RootEvent::KnotSignChange { at } => at.clone(),
            RootEvent::DegenerateSegment { lo, .. } => lo.clone(),
        }
    }
}

fn sign<T: Scalar>(v: &T, zero_tol: &T) -> i8 {
    if v.abs() <= *zero_tol {
        0
    } else if *v > T::zero() {
        1
    } else {
        -1
    }
}

/// Bisection on a monotone bracket with a guaranteed sign change.
fn bisect<T: Scalar>(p: &Polynomial<T>, mut lo: T, mut hi: T, eps: &T) -> T {
    let mut flo = p.eval(&lo);
    loop {
        let width = hi.clone() - lo.clone();
        if width <= *eps {
            break;
        }
        let mid = (lo.clone() + hi.clone()).half();
        let fmid = p.eval(&mid);
        if fmid.is_zero() {
            return mid;
        }
        if (flo > T::zero()) == (fmid > T::zero()) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    (lo + hi).half()
}

/// All roots of `p` strictly inside `(lo; hi)`, sorted, with sign-change
/// parity. `zero_tol` is the absolute threshold below which a value counts
/// as zero (pass exact zero on the rational backend).
pub fn polynomial_roots<T: Scalar>(
    p: &Polynomial<T>,
    lo: &T,
    hi: &T,
    eps: &T,
    zero_tol: &T,
) -> Vec<(T, Parity)> {
    let deg = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    if deg == 1 {
        let root = -p.coeff(0) / p.coeff(1);
        if root > *lo && root < *hi {
            return vec![(root, Parity::Odd)];
        }
        return Vec::new();
    }

    let deriv = p.derivative();
    let crits = polynomial_roots(&deriv, lo, hi, eps, zero_tol);

    let mut breakpoints = vec![lo.clone()];
    breakpoints.extend(crits.iter().map(|(x, _)| x.clone()));
    breakpoints.push(hi.clone());

    let mut out: Vec<(T, Parity)> = Vec::new();
    // roots sitting exactly on critical points
    for w in 0..crits.len() {
        let c = &crits[w].0;
        let val = p.eval(c);
        if sign(&val, zero_tol) == 0 {
            let left_mid = (breakpoints[w].clone() + c.clone()).half();
            let right_mid = (c.clone() + breakpoints[w + 2].clone()).half();
            let sl = sign(&p.eval(&left_mid), zero_tol);
            let sr = sign(&p.eval(&right_mid), zero_tol);
            let parity = if sl != 0 && sl == -sr {
                Parity::Odd
            } else {
                Parity::Even
            };
            out.push((c.clone(), parity));
        }
    }
    // simple roots inside monotone segments
    for w in breakpoints.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a >= b {
            continue;
        }
        let fa = p.eval(a);
        let fb = p.eval(b);
        let (sa, sb) = (sign(&fa, zero_tol), sign(&fb, zero_tol));
        if sa != 0 && sb != 0 && sa == -sb {
            let root = bisect(p, a.clone(), b.clone(), eps);
            if root > *lo && root < *hi {
                out.push((root, Parity::Odd));
            }
        }
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("ordered roots"));
    out.dedup_by(|x, y| x.0 == y.0);
    out
}

fn piece_zero_tol<T: Scalar>(p: &Polynomial<T>) -> T {
    if T::EXACT {
        return T::zero();
    }
    let scale: f64 = p.coeffs().iter().map(|c| c.to_f64().abs()).sum::<f64>();
    super::scalar::scalar_from_f64(scale.max(1e-300) * 1e-12)
}

/// Isolate every root and sign-change point of a piecewise polynomial in
/// `(lo; hi)`. Pieces that vanish identically are reported as degenerate
/// segments rather than errors.
pub fn isolate_roots<T: Scalar>(
    f: &PiecewisePolynomial<T>,
    lo: &T,
    hi: &T,
    eps: &T,
) -> Vec<RootEvent<T>> {
    let mut events: Vec<RootEvent<T>> = Vec::new();
    let knots = f.knots();
    for (i, piece) in f.pieces().iter().enumerate() {
        let a = if knots[i] > *lo { knots[i].clone() } else { lo.clone() };
        let b = if knots[i + 1] < *hi { knots[i + 1].clone() } else { hi.clone() };
        if a >= b {
            continue;
        }
        if piece.is_zero() {
            events.push(RootEvent::DegenerateSegment { lo: a, hi: b });
            continue;
        }
        let zero_tol = piece_zero_tol(piece);
        for (at, parity) in polynomial_roots(piece, &a, &b, eps, &zero_tol) {
            events.push(RootEvent::Root { at, parity });
        }
    }
    // sign flips across interior knots
    for k in f.interior_knots() {
        if k <= lo || k >= hi {
            continue;
        }
        let lim = f.limits_at(k);
        let tol = T::zero();
        let (sl, sr) = (sign(&lim.left, &tol), sign(&lim.right, &tol));
        if sl != 0 && sr != 0 && sl == -sr {
            events.push(RootEvent::KnotSignChange { at: k.clone() });
        }
    }
    events.sort_by(|x, y| {
        x.location()
            .partial_cmp(&y.location())
            .expect("ordered events")
    });
    events
}

/// Points in `(lo; hi)` where `f` changes sign: odd-parity roots plus
/// knot sign flips. The backbone of the sign-constant segmentation used
/// by the L_q machinery.
pub fn sign_change_points<T: Scalar>(
    f: &PiecewisePolynomial<T>,
    lo: &T,
    hi: &T,
    eps: &T,
) -> Vec<T> {
    isolate_roots(f, lo, hi, eps)
        .into_iter()
        .filter_map(|e| match e {
            RootEvent::Root {
                at,
                parity: Parity::Odd,
            } => Some(at),
            RootEvent::KnotSignChange { at } => Some(at),
            _ => None,
        })
        .collect()
}

/// All root locations (any parity), used to split integration segments.
pub fn root_points<T: Scalar>(
    f: &PiecewisePolynomial<T>,
    lo: &T,
    hi: &T,
    eps: &T,
) -> Vec<T> {
    isolate_roots(f, lo, hi, eps)
        .into_iter()
        .filter_map(|e| match e {
            RootEvent::Root { at, .. } => Some(at),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::{ratio, Rational};
    use num_traits::Zero;

    fn single(p: Polynomial<f64>) -> PiecewisePolynomial<f64> {
        PiecewisePolynomial::from_polynomial(p)
    }

    #[test]
    fn linear_root() {
        let f = single(Polynomial::new(vec![-1.0, 2.0]));
        let ev = isolate_roots(&f, &0.0, &1.0, &1e-14);
        assert_eq!(ev.len(), 1);
        match &ev[0] {
            RootEvent::Root { at, parity } => {
                assert!((at - 0.5).abs() < 1e-12);
                assert_eq!(*parity, Parity::Odd);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn double_root_flagged_even() {
        // (2x-1)^2: sign analysis confirms the square has a non-crossing root
        let p = Polynomial::new(vec![-1.0, 2.0]);
        let f = single(&p * &p);
        let ev = isolate_roots(&f, &0.0, &1.0, &1e-14);
        assert_eq!(ev.len(), 1);
        match &ev[0] {
            RootEvent::Root { at, parity } => {
                assert!((at - 0.5).abs() < 1e-9);
                assert_eq!(*parity, Parity::Even);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn constant_has_no_roots() {
        let f = single(Polynomial::constant(1.0));
        assert!(isolate_roots(&f, &0.0, &1.0, &1e-14).is_empty());
    }

    #[test]
    fn zero_piece_is_degenerate_not_error() {
        let f = PiecewisePolynomial::two_pieces(
            0.5,
            Polynomial::zero(),
            Polynomial::constant(1.0),
        )
        .unwrap();
        let ev = isolate_roots(&f, &0.0, &1.0, &1e-14);
        assert!(matches!(
            ev[0],
            RootEvent::DegenerateSegment { lo, hi } if lo == 0.0 && hi == 0.5
        ));
    }

    #[test]
    fn knot_sign_change_reported() {
        let f = PiecewisePolynomial::two_pieces(
            0.3,
            Polynomial::constant(0.7),
            Polynomial::constant(-0.3),
        )
        .unwrap();
        let ev = isolate_roots(&f, &0.0, &1.0, &1e-14);
        assert_eq!(ev.len(), 1);
        assert!(matches!(ev[0], RootEvent::KnotSignChange { at } if at == 0.3));
        assert_eq!(sign_change_points(&f, &0.0, &1.0, &1e-14), vec![0.3]);
    }

    #[test]
    fn cubic_with_three_roots() {
        // roots at 0.2, 0.5, 0.8
        let p = &(&Polynomial::x_minus(&0.2) * &Polynomial::x_minus(&0.5))
            * &Polynomial::x_minus(&0.8);
        let roots = polynomial_roots(&p, &0.0, &1.0, &1e-14, &1e-13);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([0.2, 0.5, 0.8]) {
            assert!((r.0 - e).abs() < 1e-10);
            assert_eq!(r.1, Parity::Odd);
        }
    }

    #[test]
    fn inflection_root_is_odd() {
        // x^3 shifted: (x - 0.4)^3 crosses with zero derivative
        let p = Polynomial::x_minus(&0.4).pow(3);
        let roots = polynomial_roots(&p, &0.0, &1.0, &1e-14, &1e-13);
        assert_eq!(roots.len(), 1);
        assert!((roots[0].0 - 0.4).abs() < 1e-9);
        assert_eq!(roots[0].1, Parity::Odd);
    }

    #[test]
    fn exact_backend_bisection() {
        // 2x - 1 root found exactly at 1/2 by the first bisection midpoint
        let p: Polynomial<Rational> =
            Polynomial::new(vec![ratio(-1, 1), ratio(2, 1)]);
        let roots = polynomial_roots(
            &p,
            &Rational::zero(),
            &ratio(1, 1),
            &ratio(1, 1_000_000_000_000i64),
            &Rational::zero(),
        );
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].0, ratio(1, 2));
    }

    #[test]
    fn roots_outside_range_ignored() {
        let p = Polynomial::x_minus(&1.5);
        assert!(polynomial_roots(&p, &0.0, &1.0, &1e-14, &1e-13).is_empty());
    }
}
