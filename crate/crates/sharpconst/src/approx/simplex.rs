//! Self-contained dense simplex for the discretized L₁ and Chebyshev
//! problems.
//!
//! Standard form with upper bounds: min cᵀx subject to Ax = b and
//! 0 ≤ x ≤ u (u may be infinite). Two phases with explicit artificial
//! columns; Bland's rule keeps the pivoting deterministic and cycle-free.
//! Problem shapes here are a handful of rows against a few thousand
//! columns, so a full tableau is the simplest thing that works.

use super::linalg;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Simplex {
    /// Row-major constraint matrix (m x n).
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    /// Upper bounds per column; `f64::INFINITY` when absent.
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Column index of the basic variable in each row.
    pub basis: Vec<usize>,
    /// Multipliers of the equality rows (in the caller's sign convention).
    pub multipliers: Vec<f64>,
}

#[derive(Clone, Copy, PartialEq)]
enum Status {
    Basic,
    AtLower,
    AtUpper,
}

struct Tableau {
    rows: usize,
    cols: usize,
    t: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    status: Vec<Status>,
    upper: Vec<f64>,
    /// objective row (reduced costs)
    d: Vec<f64>,
    banned: Vec<bool>,
    tol: f64,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * self.cols + c]
    }

    fn value_of(&self, j: usize) -> f64 {
        match self.status[j] {
            Status::AtLower => 0.0,
            Status::AtUpper => self.upper[j],
            Status::Basic => {
                let row = self.basis.iter().position(|&b| b == j).unwrap();
                self.rhs[row]
            }
        }
    }

    /// Recompute the objective row `d = c - c_B^T T` from scratch.
    fn reset_objective(&mut self, c: &[f64]) {
        let mut d = c.to_vec();
        for (row, &bj) in self.basis.iter().enumerate() {
            let cb = c[bj];
            if cb == 0.0 {
                continue;
            }
            for col in 0..self.cols {
                d[col] -= cb * self.at(row, col);
            }
        }
        self.d = d;
    }

    fn entering(&self) -> Option<usize> {
        // Bland: smallest improving index
        for j in 0..self.cols {
            if self.banned[j] || self.status[j] == Status::Basic {
                continue;
            }
            match self.status[j] {
                Status::AtLower if self.d[j] < -self.tol => return Some(j),
                Status::AtUpper if self.d[j] > self.tol => return Some(j),
                _ => {}
            }
        }
        None
    }

    /// One pivot (or bound flip) on entering column `j`. Returns false on
    /// an unbounded ray.
    fn step(&mut self, j: usize) -> bool {
        let dir = if self.status[j] == Status::AtLower {
            1.0
        } else {
            -1.0
        };
        // ratio test
        let mut theta = self.upper[j]; // bound-to-bound flip distance
        let mut leave: Option<(usize, Status)> = None;
        for row in 0..self.rows {
            let coef = dir * self.at(row, j);
            if coef > self.tol {
                let limit = self.rhs[row] / coef;
                if limit < theta - 1e-15 {
                    theta = limit.max(0.0);
                    leave = Some((row, Status::AtLower));
                }
            } else if coef < -self.tol {
                let ub = self.upper[self.basis[row]];
                if ub.is_finite() {
                    let limit = (ub - self.rhs[row]) / (-coef);
                    if limit < theta - 1e-15 {
                        theta = limit.max(0.0);
                        leave = Some((row, Status::AtUpper));
                    }
                }
            }
        }
        if theta.is_infinite() {
            return false;
        }
        match leave {
            None => {
                // entering variable runs to its other bound
                for row in 0..self.rows {
                    let coef = dir * self.at(row, j);
                    self.rhs[row] -= coef * theta;
                }
                self.status[j] = if dir > 0.0 {
                    Status::AtUpper
                } else {
                    Status::AtLower
                };
            }
            Some((r, leave_status)) => {
                let entering_value = match self.status[j] {
                    Status::AtLower => theta,
                    Status::AtUpper => self.upper[j] - theta,
                    Status::Basic => unreachable!(),
                };
                for row in 0..self.rows {
                    if row != r {
                        let coef = dir * self.at(row, j);
                        self.rhs[row] -= coef * theta;
                    }
                }
                let old_basic = self.basis[r];
                self.status[old_basic] = leave_status;
                self.status[j] = Status::Basic;
                self.basis[r] = j;
                self.rhs[r] = entering_value;
                // eliminate column j from other rows and the objective row
                let pivot = self.at(r, j);
                for col in 0..self.cols {
                    self.t[r * self.cols + col] /= pivot;
                }
                for row in 0..self.rows {
                    if row == r {
                        continue;
                    }
                    let factor = self.at(row, j);
                    if factor == 0.0 {
                        continue;
                    }
                    for col in 0..self.cols {
                        let v = self.at(r, col);
                        self.t[row * self.cols + col] -= factor * v;
                    }
                }
                let factor = self.d[j];
                if factor != 0.0 {
                    for col in 0..self.cols {
                        self.d[col] -= factor * self.at(r, col);
                    }
                }
            }
        }
        true
    }
}

/// Solve the bounded LP. Infeasibility and unboundedness are reported as
/// errors; the iteration cap guards degenerate stalls.
pub fn solve(problem: &Simplex) -> Result<SimplexResult> {
    let m = problem.b.len();
    let n = problem.c.len();
    debug_assert_eq!(problem.a.len(), m);
    debug_assert_eq!(problem.upper.len(), n);

    // flip rows to make b nonnegative
    let mut a = problem.a.clone();
    let mut b = problem.b.clone();
    let mut flipped = vec![false; m];
    for i in 0..m {
        if b[i] < 0.0 {
            flipped[i] = true;
            b[i] = -b[i];
            for v in a[i].iter_mut() {
                *v = -*v;
            }
        }
    }

    let scale = problem
        .c
        .iter()
        .map(|v| v.abs())
        .fold(1.0f64, f64::max);
    let cols = n + m;
    let mut t = vec![0.0; m * cols];
    for i in 0..m {
        for j in 0..n {
            t[i * cols + j] = a[i][j];
        }
        t[i * cols + n + i] = 1.0; // artificial
    }
    let mut upper = problem.upper.clone();
    upper.extend(std::iter::repeat(f64::INFINITY).take(m));
    let mut status = vec![Status::AtLower; cols];
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        basis.push(n + i);
        status[n + i] = Status::Basic;
    }

    let mut tab = Tableau {
        rows: m,
        cols,
        t,
        rhs: b.clone(),
        basis,
        status,
        upper,
        d: vec![0.0; cols],
        banned: vec![false; cols],
        tol: 1e-10 * scale.max(1.0),
    };

    // phase 1: drive the artificials to zero
    let mut phase1_cost = vec![0.0; cols];
    for j in n..cols {
        phase1_cost[j] = 1.0;
    }
    tab.reset_objective(&phase1_cost);
    let cap = 200 * (m + n).max(50);
    let mut iterations = 0usize;
    while let Some(j) = tab.entering() {
        iterations += 1;
        if iterations > cap {
            return Err(Error::NonConvergence {
                what: "simplex phase 1",
                iterations,
                best: tab.rhs.iter().sum(),
            });
        }
        if !tab.step(j) {
            return Err(Error::Unbounded);
        }
    }
    let infeasibility: f64 = (0..m)
        .filter(|&i| tab.basis[i] >= n)
        .map(|i| tab.rhs[i])
        .sum();
    if infeasibility > 1e-7 * scale.max(1.0) {
        return Err(Error::Infeasible(format!(
            "phase-1 residual {infeasibility:e}"
        )));
    }
    // ban artificials from re-entering; basic ones stay pinned at ~0
    for j in n..cols {
        if tab.status[j] != Status::Basic {
            tab.banned[j] = true;
        } else {
            tab.upper[j] = 0.0;
        }
    }

    // phase 2
    let mut phase2_cost = problem.c.clone();
    phase2_cost.extend(std::iter::repeat(0.0).take(m));
    tab.reset_objective(&phase2_cost);
    iterations = 0;
    while let Some(j) = tab.entering() {
        iterations += 1;
        if iterations > cap {
            return Err(Error::NonConvergence {
                what: "simplex phase 2",
                iterations,
                best: f64::NAN,
            });
        }
        if !tab.step(j) {
            return Err(Error::Unbounded);
        }
    }

    let mut x = vec![0.0; n];
    for j in 0..n {
        x[j] = tab.value_of(j);
    }
    let objective = problem
        .c
        .iter()
        .zip(x.iter())
        .map(|(ci, xi)| ci * xi)
        .sum();

    // multipliers from B^T pi = c_B on the original columns
    let mut bt = vec![vec![0.0; m]; m];
    let mut cb = vec![0.0; m];
    for (row, &bj) in tab.basis.iter().enumerate() {
        for i in 0..m {
            // artificial columns are unit vectors in the flipped system
            let v = if bj < n { a[i][bj] } else { if i == bj - n { 1.0 } else { 0.0 } };
            bt[i][row] = v;
        }
        cb[row] = if bj < n { problem.c[bj] } else { 0.0 };
    }
    // transpose into B^T rows
    let mut btt = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            btt[i][j] = bt[j][i];
        }
    }
    let mut multipliers = linalg::solve(btt, cb).unwrap_or_else(|| vec![f64::NAN; m]);
    for i in 0..m {
        if flipped[i] {
            multipliers[i] = -multipliers[i];
        }
    }

    Ok(SimplexResult {
        x,
        objective,
        basis: tab.basis,
        multipliers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(a: Vec<Vec<f64>>, b: Vec<f64>, c: Vec<f64>, upper: Vec<f64>) -> Simplex {
        Simplex { a, b, c, upper }
    }

    #[test]
    fn basic_equality_lp() {
        // min -x - 2y s.t. x + y = 1, x,y >= 0 -> y = 1
        let p = lp(
            vec![vec![1.0, 1.0]],
            vec![1.0],
            vec![-1.0, -2.0],
            vec![f64::INFINITY; 2],
        );
        let sol = solve(&p).unwrap();
        assert!((sol.objective + 2.0).abs() < 1e-10);
        assert!((sol.x[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn upper_bounds_respected() {
        // min -x - y s.t. x + y + s = 1.5, x,y in [0,1]
        let p = lp(
            vec![vec![1.0, 1.0, 1.0]],
            vec![1.5],
            vec![-1.0, -1.0, 0.0],
            vec![1.0, 1.0, f64::INFINITY],
        );
        let sol = solve(&p).unwrap();
        assert!((sol.objective + 1.5).abs() < 1e-10);
        assert!(sol.x[0] <= 1.0 + 1e-12 && sol.x[1] <= 1.0 + 1e-12);
    }

    #[test]
    fn negative_rhs_handled() {
        // x - y = -2, x,y >= 0, min x + y -> x = 0, y = 2
        let p = lp(
            vec![vec![1.0, -1.0]],
            vec![-2.0],
            vec![1.0, 1.0],
            vec![f64::INFINITY; 2],
        );
        let sol = solve(&p).unwrap();
        assert!((sol.x[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn infeasible_detected() {
        // x + y = -1 with x,y >= 0 is infeasible (after flip: -x - y = 1)
        let p = lp(
            vec![vec![1.0, 1.0]],
            vec![-1.0],
            vec![1.0, 1.0],
            vec![f64::INFINITY; 2],
        );
        assert!(matches!(solve(&p), Err(Error::Infeasible(_))));
    }

    #[test]
    fn unbounded_detected() {
        // min -x s.t. x - y = 0: ray x = y -> unbounded
        let p = lp(
            vec![vec![1.0, -1.0]],
            vec![0.0],
            vec![-1.0, 0.0],
            vec![f64::INFINITY; 2],
        );
        assert!(matches!(solve(&p), Err(Error::Unbounded)));
    }

    #[test]
    fn multipliers_match_duality() {
        // min -3x - 5y s.t. x + 2y = 4, 3x + 2y = 6 -> x = 1, y = 1.5
        let p = lp(
            vec![vec![1.0, 2.0], vec![3.0, 2.0]],
            vec![4.0, 6.0],
            vec![-3.0, -5.0],
            vec![f64::INFINITY; 2],
        );
        let sol = solve(&p).unwrap();
        assert!((sol.x[0] - 1.0).abs() < 1e-10);
        assert!((sol.x[1] - 1.5).abs() < 1e-10);
        // strong duality: b^T pi = objective
        let dual_obj = 4.0 * sol.multipliers[0] + 6.0 * sol.multipliers[1];
        assert!((dual_obj - sol.objective).abs() < 1e-9);
        // reduced costs nonnegative: c_j - pi^T a_j >= 0
        for j in 0..2 {
            let rc = p.c[j] - (sol.multipliers[0] * p.a[0][j] + sol.multipliers[1] * p.a[1][j]);
            assert!(rc > -1e-9);
        }
    }

    #[test]
    fn degenerate_lp_terminates() {
        // redundant constraints force degenerate pivots
        let p = lp(
            vec![vec![1.0, 1.0], vec![2.0, 2.0]],
            vec![1.0, 2.0],
            vec![-1.0, -1.0],
            vec![f64::INFINITY; 2],
        );
        let sol = solve(&p).unwrap();
        assert!((sol.objective + 1.0).abs() < 1e-10);
    }
}
