//! Small dense linear algebra: nullspace extraction for eigenvectors.
//!
//! Shooting needs one real eigenvector of a 4x4 Jacobian whose eigenvalue
//! is known in closed form, i.e. a nonzero solution of `(J - lambda I) v = 0`
//! for an exactly singular matrix.  Gauss-Jordan elimination with partial
//! pivoting and a relative pivot threshold finds a free column and
//! back-substitutes; no external solver is warranted for a fixed 4x4 task
//! with a known-singular matrix.

/// Pivots smaller than this times the largest matrix entry count as zero.
const PIVOT_THRESHOLD: f64 = 1e-9;

/// A unit-norm solution of `m v = 0`, or `None` when `m` is numerically
/// nonsingular.
///
/// When the nullspace has dimension greater than one (repeated
/// eigenvalues), the vector associated with the first free column is
/// returned, which makes the choice deterministic.  The sign convention
/// makes the entry of largest magnitude positive.
pub(crate) fn nullspace_vector(mut m: [[f64; 4]; 4]) -> Option<[f64; 4]> {
    let scale = m
        .iter()
        .flatten()
        .fold(0.0f64, |acc, &e| acc.max(e.abs()))
        .max(f64::MIN_POSITIVE);
    let tol = PIVOT_THRESHOLD * scale;

    let mut pivot_cols: Vec<usize> = Vec::with_capacity(4);
    let mut row = 0;
    for col in 0..4 {
        let (best_row, best_val) = (row..4)
            .map(|i| (i, m[i][col].abs()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite entries"))
            .expect("nonempty row range");
        if best_val <= tol {
            continue; // free column
        }
        m.swap(row, best_row);
        let pivot = m[row][col];
        for entry in &mut m[row] {
            *entry /= pivot;
        }
        for i in 0..4 {
            if i != row {
                let factor = m[i][col];
                let pivot_row = m[row];
                for (entry, &basis) in m[i].iter_mut().zip(&pivot_row) {
                    *entry -= factor * basis;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == 4 {
            break;
        }
    }

    if pivot_cols.len() == 4 {
        return None;
    }
    let free = (0..4).find(|c| !pivot_cols.contains(c)).expect("free column exists");

    // After full elimination, pivot row k reads v[pivot_cols[k]] plus
    // m[k][free] * v[free] = 0; setting the free variable to one solves it.
    let mut v = [0.0f64; 4];
    v[free] = 1.0;
    for (k, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = -m[k][free];
    }

    let norm = v.iter().map(|e| e * e).sum::<f64>().sqrt();
    let (dominant, _) = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("finite entries"))
        .expect("four entries");
    let sign = if v[dominant] < 0.0 { -1.0 } else { 1.0 };
    for e in v.iter_mut() {
        *e *= sign / norm;
    }
    Some(v)
}
