//! Small dense solves for the approximation machinery (systems stay at
//! degree-plus-two unknowns, so partial-pivot LU is plenty).

/// Solve `A x = b` in place; returns `None` when the pivot collapses.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let (pivot_row, pivot_val) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if pivot_val < 1e-300 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Solve a symmetric positive-definite system, falling back to LU with a
/// diagonal shift when the factorization stalls (the smooth solver's
/// Hessian can be near-singular close to a flat optimum).
pub fn solve_spd(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    if let Some(x) = solve(a.to_vec(), b.to_vec()) {
        if x.iter().all(|v| v.is_finite()) {
            return Some(x);
        }
    }
    let n = b.len();
    let trace: f64 = (0..n).map(|i| a[i][i].abs()).sum::<f64>().max(1e-300);
    let mut shifted = a.to_vec();
    for i in 0..n {
        shifted[i][i] += 1e-12 * trace;
    }
    solve(shifted, b.to_vec())
}
