//! Piecewise polynomials on [0;1] with a shared ordered knot vector.
//!
//! Evaluation is right-continuous at interior knots; both one-sided limits
//! and the jump are available through [`PiecewisePolynomial::limits_at`].

use super::poly::Polynomial;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// One-sided limits at an interior knot.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotLimits<T> {
    pub left: T,
    pub right: T,
    /// `left - right`.
    pub jump: T,
}

/// Piecewise polynomial over strictly increasing knots spanning [0;1].
#[derive(Clone, PartialEq)]
pub struct PiecewisePolynomial<T: Scalar> {
    knots: Vec<T>,
    pieces: Vec<Polynomial<T>>,
}

impl<T: Scalar> PiecewisePolynomial<T> {
    /// Build from knots (strictly increasing, first 0, last 1) and one
    /// piece per subinterval.
    pub fn new(knots: Vec<T>, pieces: Vec<Polynomial<T>>) -> Result<Self> {
        if knots.len() < 2 || pieces.len() + 1 != knots.len() {
            return Err(Error::InvalidProblem(format!(
                "{} knots with {} pieces",
                knots.len(),
                pieces.len()
            )));
        }
        if !knots[0].is_zero() || knots[knots.len() - 1] != T::one() {
            return Err(Error::InvalidProblem(
                "knots must span [0;1]".to_string(),
            ));
        }
        for w in knots.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidProblem(
                    "knots must be strictly increasing".to_string(),
                ));
            }
        }
        Ok(PiecewisePolynomial { knots, pieces })
    }

    /// A single polynomial viewed as one piece on [0;1].
    pub fn from_polynomial(p: Polynomial<T>) -> Self {
        PiecewisePolynomial {
            knots: vec![T::zero(), T::one()],
            pieces: vec![p],
        }
    }

    /// Two pieces split at `a`.
    pub fn two_pieces(a: T, left: Polynomial<T>, right: Polynomial<T>) -> Result<Self> {
        Self::new(vec![T::zero(), a, T::one()], vec![left, right])
    }

    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    pub fn pieces(&self) -> &[Polynomial<T>] {
        &self.pieces
    }

    pub fn interior_knots(&self) -> &[T] {
        &self.knots[1..self.knots.len() - 1]
    }

    /// Index of the piece owning `x` (right-continuous; the last piece
    /// owns its right endpoint).
    pub fn piece_index(&self, x: &T) -> usize {
        let mut idx = self.pieces.len() - 1;
        for i in 0..self.pieces.len() {
            if *x < self.knots[i + 1] {
                idx = i;
                break;
            }
        }
        idx
    }

    /// Right-continuous evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.pieces[self.piece_index(x)].eval(x)
    }

    /// One-sided limits and jump at a point; at non-knot points all three
    /// collapse to the value (jump zero).
    pub fn limits_at(&self, x: &T) -> KnotLimits<T> {
        let right_idx = self.piece_index(x);
        let left_idx = match self.knots.iter().position(|k| k == x) {
            Some(i) if i > 0 && i < self.knots.len() - 1 => i - 1,
            Some(i) if i == self.knots.len() - 1 => self.pieces.len() - 1,
            _ => right_idx,
        };
        let left = self.pieces[left_idx].eval(x);
        let right = self.pieces[right_idx].eval(x);
        let jump = left.clone() - right.clone();
        KnotLimits { left, right, jump }
    }

    pub fn map_pieces(&self, f: impl Fn(&Polynomial<T>) -> Polynomial<T>) -> Self {
        PiecewisePolynomial {
            knots: self.knots.clone(),
            pieces: self.pieces.iter().map(f).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        self.map_pieces(|p| p.derivative())
    }

    pub fn neg(&self) -> Self {
        self.map_pieces(|p| -p)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map_pieces(|p| p.scale(c))
    }

    /// Add a global polynomial to every piece.
    pub fn add_polynomial(&self, q: &Polynomial<T>) -> Self {
        self.map_pieces(|p| p + q)
    }

    pub fn sub_polynomial(&self, q: &Polynomial<T>) -> Self {
        self.map_pieces(|p| p - q)
    }

    /// Union of the two knot vectors.
    fn merged_knots(&self, other: &Self) -> Vec<T> {
        let mut knots: Vec<T> = self.knots.clone();
        for k in &other.knots {
            if !knots.contains(k) {
                knots.push(k.clone());
            }
        }
        knots.sort_by(|a, b| a.partial_cmp(b).expect("comparable knots"));
        knots
    }

    fn refine_to(&self, knots: &[T]) -> Self {
        let mut pieces = Vec::with_capacity(knots.len() - 1);
        for w in knots.windows(2) {
            // sample point inside the subinterval picks the owning piece
            let mid = (w[0].clone() + w[1].clone()).half();
            pieces.push(self.pieces[self.piece_index(&mid)].clone());
        }
        PiecewisePolynomial {
            knots: knots.to_vec(),
            pieces,
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Polynomial<T>, &Polynomial<T>) -> Polynomial<T>) -> Self {
        let knots = self.merged_knots(other);
        let a = self.refine_to(&knots);
        let b = other.refine_to(&knots);
        PiecewisePolynomial {
            knots,
            pieces: a
                .pieces
                .iter()
                .zip(b.pieces.iter())
                .map(|(p, q)| f(p, q))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |p, q| p + q)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |p, q| p - q)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |p, q| p * q)
    }

    /// Definite integral over `[lo; hi] ⊆ [0;1]`, splitting at interior
    /// knots. Exact on the rational backend.
    pub fn integral(&self, lo: &T, hi: &T) -> Result<T> {
        if *lo < T::zero() || *hi > T::one() || lo > hi {
            return Err(Error::OutOfDomain {
                name: "integration bounds",
                value: lo.to_f64(),
                domain: "0 <= lo <= hi <= 1",
            });
        }
        let mut total = T::zero();
        for (i, piece) in self.pieces.iter().enumerate() {
            let a = if self.knots[i] > *lo { self.knots[i].clone() } else { lo.clone() };
            let b = if self.knots[i + 1] < *hi { self.knots[i + 1].clone() } else { hi.clone() };
            if a < b {
                total = total + piece.integral(&a, &b);
            }
        }
        Ok(total)
    }

    /// Continuous antiderivative vanishing at 0 (constants accumulate
    /// across knots).
    pub fn antiderivative(&self) -> Self {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut acc = T::zero();
        for (i, piece) in self.pieces.iter().enumerate() {
            let raw = piece.antiderivative();
            let left = self.knots[i].clone();
            let shift = acc.clone() - raw.eval(&left);
            let adjusted = &raw + &Polynomial::constant(shift);
            acc = adjusted.eval(&self.knots[i + 1]);
            pieces.push(adjusted);
        }
        PiecewisePolynomial {
            knots: self.knots.clone(),
            pieces,
        }
    }

    /// Largest absolute coefficient (crude scale estimate).
    pub fn coeff_scale(&self) -> f64 {
        let mut s: f64 = 0.0;
        for p in &self.pieces {
            for c in p.coeffs() {
                s = s.max(c.to_f64().abs());
            }
        }
        s
    }

    /// Insert an extra knot (no-op if already present or on the boundary).
    pub fn with_knot(&self, x: &T) -> Self {
        if self.knots.contains(x) || *x <= T::zero() || *x >= T::one() {
            return self.clone();
        }
        let mut knots = self.knots.clone();
        knots.push(x.clone());
        knots.sort_by(|a, b| a.partial_cmp(b).expect("comparable knots"));
        self.refine_to(&knots)
    }
}

impl PiecewisePolynomial<Rational> {
    pub fn to_float(&self) -> PiecewisePolynomial<f64> {
        PiecewisePolynomial {
            knots: self.knots.iter().map(|k| k.to_f64()).collect(),
            pieces: self.pieces.iter().map(|p| p.to_float()).collect(),
        }
    }
}

impl<T: Scalar> std::fmt::Debug for PiecewisePolynomial<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "piecewise[")?;
        for (i, p) in self.pieces.iter().enumerate() {
            writeln!(f, "  [{}, {}]: {}", self.knots[i], self.knots[i + 1], p)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::ratio;
    use num_traits::{One, Zero};

    fn step(a: f64, lo: f64, hi: f64) -> PiecewisePolynomial<f64> {
        PiecewisePolynomial::two_pieces(
            a,
            Polynomial::constant(lo),
            Polynomial::constant(hi),
        )
        .unwrap()
    }

    #[test]
    fn construction_validation() {
        assert!(PiecewisePolynomial::new(vec![0.0, 1.0], vec![]).is_err());
        assert!(PiecewisePolynomial::new(
            vec![0.0, 0.5, 0.4, 1.0],
            vec![Polynomial::zero(); 3]
        )
        .is_err());
        assert!(PiecewisePolynomial::new(
            vec![0.1, 1.0],
            vec![Polynomial::zero()]
        )
        .is_err());
    }

    #[test]
    fn limits_and_jump() {
        let f = step(0.3, 0.7, -0.3);
        let lim = f.limits_at(&0.3);
        assert_eq!(lim.left, 0.7);
        assert_eq!(lim.right, -0.3);
        assert_eq!(lim.jump, 1.0);
        // right-continuous evaluation at the knot
        assert_eq!(f.eval(&0.3), -0.3);
        // smooth point
        let lim = f.limits_at(&0.5);
        assert_eq!(lim.jump, 0.0);
    }

    #[test]
    fn restriction_matches_global_eval() {
        let f = PiecewisePolynomial::two_pieces(
            0.4,
            Polynomial::new(vec![1.0, 2.0]),
            Polynomial::new(vec![0.0, 0.0, 3.0]),
        )
        .unwrap();
        for &x in &[0.0, 0.2, 0.39, 0.4, 0.7, 1.0] {
            let idx = f.piece_index(&x);
            assert_eq!(f.eval(&x), f.pieces()[idx].eval(&x));
        }
    }

    #[test]
    fn arithmetic_merges_knots() {
        let f = step(0.3, 1.0, 0.0);
        let g = step(0.6, 0.0, 2.0);
        let s = f.add(&g);
        assert_eq!(s.knots(), &[0.0, 0.3, 0.6, 1.0]);
        assert_eq!(s.eval(&0.1), 1.0);
        assert_eq!(s.eval(&0.5), 0.0);
        assert_eq!(s.eval(&0.9), 2.0);
        let p = f.mul(&g);
        assert_eq!(p.eval(&0.9), 0.0);
    }

    #[test]
    fn integral_splits_at_knots() {
        let f = step(0.3, 1.0, -1.0);
        assert!((f.integral(&0.0, &1.0).unwrap() - (0.3 - 0.7)).abs() < 1e-15);
        assert!((f.integral(&0.2, &0.5).unwrap() - (0.1 - 0.2)).abs() < 1e-15);
        // exact backend
        let g: PiecewisePolynomial<Rational> = PiecewisePolynomial::two_pieces(
            ratio(1, 3),
            Polynomial::constant(ratio(1, 1)),
            Polynomial::constant(ratio(-1, 1)),
        )
        .unwrap();
        assert_eq!(
            g.integral(&Rational::zero(), &Rational::one()).unwrap(),
            ratio(-1, 3)
        );
    }

    #[test]
    fn antiderivative_is_continuous() {
        let f = step(0.3, 1.0, -1.0);
        let y = f.antiderivative();
        assert_eq!(y.eval(&0.0), 0.0);
        let lim = y.limits_at(&0.3);
        assert!((lim.jump).abs() < 1e-15);
        assert!((y.eval(&0.3) - 0.3).abs() < 1e-15);
        assert!((y.eval(&1.0) - (0.3 - 0.7)).abs() < 1e-15);
    }

    #[test]
    fn zero_function_integrates_to_zero() {
        let z = PiecewisePolynomial::from_polynomial(Polynomial::<f64>::zero());
        assert_eq!(z.integral(&0.2, &0.9).unwrap(), 0.0);
    }
}
