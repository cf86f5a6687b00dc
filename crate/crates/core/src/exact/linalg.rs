//! Row reduction for rectangular systems over a field (every nonzero element
//! invertible). Rows are plain `Vec<R>`.

use super::Ring;

/// Reduced row echelon form; returns the pivot columns.
pub fn row_reduce<R: Ring>(rows: &mut [Vec<R>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col]
            .try_inverse()
            .expect("row_reduce requires field coefficients");
        for x in rows[next].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank<R: Ring>(rows: &[Vec<R>]) -> usize {
    let mut work = rows.to_vec();
    row_reduce(&mut work).len()
}

/// Basis of `{v : A v = 0}` for `A` given by rows with `ncols` columns.
pub fn nullspace<R: Ring>(rows: &[Vec<R>], ncols: usize) -> Vec<Vec<R>> {
    let mut work = rows.to_vec();
    let pivots = row_reduce(&mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![R::zero(); ncols];
            v[f] = R::one();
            for (row, &p) in work.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Determinant of a square system by elimination over a field.
pub fn determinant<R: Ring>(rows: &[Vec<R>]) -> R {
    let n = rows.len();
    let mut work = rows.to_vec();
    let mut det = R::one();
    for col in 0..n {
        let Some(found) = (col..n).find(|&r| !work[r][col].is_zero()) else {
            return R::zero();
        };
        if found != col {
            work.swap(col, found);
            det = -det;
        }
        let pivot = work[col][col].clone();
        det = det * pivot.clone();
        let inv = pivot
            .try_inverse()
            .expect("determinant requires field coefficients");
        let pivot_row = work[col].clone();
        for row in work.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone() * inv.clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
    }
    det
}
