//! Small dense exact linear algebra.

use crate::scalar::Scalar;

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref<S: Scalar>(rows: &mut [Vec<S>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = S::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}` where `A` has `cols` columns.
pub fn null_space<S: Scalar>(rows: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves the square system `A x = b`, `None` when singular.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(
        aug.into_iter()
            .map(|mut r| r.pop().expect("augmented"))
            .collect(),
    )
}
