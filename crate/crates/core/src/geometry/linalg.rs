//! Exact Gaussian elimination helpers.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduces `m` (rows of equal length `cols`) to reduced row echelon form in
/// place and returns the pivot column of each nonzero row.
pub(crate) fn rref(m: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// A nonzero `x` with `m·x = 0`, or `None` when the columns of `m` are
/// independent. The first free column is set to one and the remaining free
/// columns to zero.
pub(crate) fn null_vector(mut m: Vec<Vec<Rational>>, cols: usize) -> Option<Vec<Rational>> {
    let pivots = rref(&mut m, cols);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rational::zero(); cols];
    x[free] = Rational::one();
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = -&row[free];
    }
    Some(x)
}

/// Unique solution of the square system `a·x = b`, if `a` is nonsingular.
pub(crate) fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

pub(crate) fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}
