use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::{self, Rational};

use super::dependence::{common_dim, linear_dependence};

/// A split of a point set into two parts whose convex hulls share `witness`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadonPartition {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
    pub witness: Point,
    #[serde(with = "rational::serde_vec")]
    pub weights1: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub weights2: Vec<Rational>,
}

impl RadonPartition {
    /// Checks every structural invariant against the original points.
    pub fn is_valid_for(&self, points: &[Point]) -> bool {
        let n = points.len();
        let mut seen = vec![false; n];
        for &i in self.part1.iter().chain(&self.part2) {
            if i >= n || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        let dim = self.witness.dim();
        let side_ok = |part: &[usize], weights: &[Rational]| {
            !part.is_empty()
                && part.len() == weights.len()
                && rational::is_probability_vector(weights)
                && Point::combination(dim, part.iter().map(|&i| &points[i]), weights) == self.witness
        };
        seen.iter().all(|&s| s) && side_ok(&self.part1, &self.weights1) && side_ok(&self.part2, &self.weights2)
    }
}

/// Splits `points` (at least `d + 2` distinct points in `ℝ^d`) by the sign of
/// an affine dependence: positive coefficients on one side, the rest on the
/// other.
pub fn radon_partition(points: &[Point]) -> Result<RadonPartition> {
    let dim = common_dim(points)?;
    if points.len() < dim + 2 {
        return Err(Error::TooFewPoints { needed: dim + 2, got: points.len() });
    }
    for i in 0..points.len() {
        if let Some(j) = (i + 1..points.len()).find(|&j| points[i] == points[j]) {
            return Err(Error::DuplicatePoint(i, j));
        }
    }
    let mu = linear_dependence(points, true)?
        .ok_or_else(|| Error::Internal("d + 2 points must be affinely dependent".into()))?;
    let (part1, part2): (Vec<usize>, Vec<usize>) = (0..points.len()).partition(|&i| mu[i].is_positive());
    let total: Rational = part1.iter().fold(Rational::zero(), |acc, &i| acc + &mu[i]);
    let weights1: Vec<Rational> = part1.iter().map(|&i| &mu[i] / &total).collect();
    let weights2: Vec<Rational> = part2.iter().map(|&i| -&mu[i] / &total).collect();
    let witness = Point::combination(dim, part1.iter().map(|&i| &points[i]), &weights1);
    Ok(RadonPartition { part1, part2, witness, weights1, weights2 })
}
