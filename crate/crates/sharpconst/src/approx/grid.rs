//! Discretization grids for the L₁ and Chebyshev linear programs.
//!
//! Points are kept per piece so one-sided limits at the knots are always
//! present as separate constraint points, and refinement can insert the
//! residual's own extrema or sign changes between rounds.

use crate::polycore::piecewise::PiecewisePolynomial;

#[derive(Debug, Clone)]
pub struct PieceGrid {
    pub lo: f64,
    pub hi: f64,
    /// Sorted sample locations, always containing both endpoints.
    pub xs: Vec<f64>,
}

/// One constraint point: location, function value there (through the
/// owning piece, so knot limits are honored) and the piece it came from.
#[derive(Debug, Clone, Copy)]
pub struct GridPoint {
    pub x: f64,
    pub fx: f64,
    pub piece: usize,
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub pieces: Vec<PieceGrid>,
}

impl Grid {
    /// Chebyshev-distributed points per piece (endpoints included), which
    /// cluster where endpoint and jump behavior drives these problems.
    pub fn chebyshev(f: &PiecewisePolynomial<f64>, per_piece: usize) -> Grid {
        let n = per_piece.max(4);
        let knots = f.knots();
        let pieces = f
            .pieces()
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let (lo, hi) = (knots[i], knots[i + 1]);
                let xs = (0..n)
                    .map(|j| {
                        let t = (std::f64::consts::PI * j as f64 / (n - 1) as f64).cos();
                        lo + (hi - lo) * 0.5 * (1.0 - t)
                    })
                    .collect();
                PieceGrid { lo, hi, xs }
            })
            .collect();
        Grid { pieces }
    }

    /// Insert `x` into the piece that owns it; interior knots go to both
    /// neighbors (as their respective one-sided limits). Near-duplicates
    /// are dropped.
    pub fn insert(&mut self, x: f64) {
        for pg in self.pieces.iter_mut() {
            if x < pg.lo || x > pg.hi {
                continue;
            }
            if pg.xs.iter().any(|&e| (e - x).abs() < 1e-13) {
                continue;
            }
            let pos = pg.xs.partition_point(|&e| e < x);
            pg.xs.insert(pos, x);
        }
    }

    pub fn len(&self) -> usize {
        self.pieces.iter().map(|p| p.xs.len()).sum()
    }

    /// Flatten into constraint points with values through the owning piece.
    pub fn points(&self, f: &PiecewisePolynomial<f64>) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(self.len());
        for (i, pg) in self.pieces.iter().enumerate() {
            for &x in &pg.xs {
                out.push(GridPoint {
                    x,
                    fx: f.pieces()[i].eval(&x),
                    piece: i,
                });
            }
        }
        out
    }

    /// Points with trapezoid quadrature weights (per piece, so the two
    /// one-sided knot entries each carry their own half-interval).
    pub fn weighted_points(&self, f: &PiecewisePolynomial<f64>) -> Vec<(GridPoint, f64)> {
        let mut out = Vec::with_capacity(self.len());
        for (i, pg) in self.pieces.iter().enumerate() {
            let m = pg.xs.len();
            for (j, &x) in pg.xs.iter().enumerate() {
                let left = if j == 0 { x } else { pg.xs[j - 1] };
                let right = if j + 1 == m { x } else { pg.xs[j + 1] };
                let w = 0.5 * (right - left);
                out.push((
                    GridPoint {
                        x,
                        fx: f.pieces()[i].eval(&x),
                        piece: i,
                    },
                    w,
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::poly::Polynomial;

    fn two_piece() -> PiecewisePolynomial<f64> {
        PiecewisePolynomial::two_pieces(
            0.3,
            Polynomial::constant(1.0),
            Polynomial::constant(-1.0),
        )
        .unwrap()
    }

    #[test]
    fn knot_limits_present_with_own_values() {
        let f = two_piece();
        let grid = Grid::chebyshev(&f, 9);
        let pts = grid.points(&f);
        let at_knot: Vec<_> = pts.iter().filter(|p| (p.x - 0.3).abs() < 1e-15).collect();
        assert_eq!(at_knot.len(), 2);
        let vals: Vec<f64> = at_knot.iter().map(|p| p.fx).collect();
        assert!(vals.contains(&1.0) && vals.contains(&-1.0));
    }

    #[test]
    fn weights_sum_to_one() {
        let f = two_piece();
        let grid = Grid::chebyshev(&f, 33);
        let total: f64 = grid.weighted_points(&f).iter().map(|(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn insertion_is_deduplicated_and_sorted() {
        let f = two_piece();
        let mut grid = Grid::chebyshev(&f, 5);
        let before = grid.len();
        grid.insert(0.812345);
        grid.insert(0.812345);
        assert_eq!(grid.len(), before + 1);
        for pg in &grid.pieces {
            assert!(pg.xs.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
