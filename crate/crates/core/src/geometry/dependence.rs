use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::{self, Rational};

use super::linalg;

pub(crate) fn common_dim(points: &[Point]) -> Result<usize> {
    let first = points.first().ok_or(Error::Empty("point list"))?;
    let dim = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
    }
    Ok(dim)
}

/// Coefficients `μ`, not all zero, with `Σ μ_i·x_i = 0` (and `Σ μ_i = 0` in
/// affine mode). `None` when the points are linearly (affinely) independent.
///
/// The returned vector is the canonical null vector of the elimination: the
/// first free point gets coefficient one.
pub fn linear_dependence(points: &[Point], affine: bool) -> Result<Option<Vec<Rational>>> {
    let dim = common_dim(points)?;
    let mut rows: Vec<Vec<Rational>> = (0..dim).map(|k| points.iter().map(|p| p[k].clone()).collect()).collect();
    if affine {
        rows.push(vec![rational::int(1); points.len()]);
    }
    Ok(linalg::null_vector(rows, points.len()))
}
