use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::{self, Rational};

use super::dependence::linear_dependence;

/// A sparse combination: `weights[k]` applies to the input point `indices[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub indices: Vec<usize>,
    pub weights: Vec<Rational>,
}

impl Reduction {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn evaluate(&self, points: &[Point]) -> Point {
        let dim = points.first().map_or(0, Point::dim);
        Point::combination(dim, self.indices.iter().map(|&i| &points[i]), &self.weights)
    }
}

fn check_inputs(x: &Point, points: &[Point], weights: &[Rational]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Empty("point list"));
    }
    if weights.len() != points.len() {
        return Err(Error::InvalidWeights(format!("{} weights for {} points", weights.len(), points.len())));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != x.dim()) {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: p.dim() });
    }
    if weights.iter().any(Signed::is_negative) {
        return Err(Error::InvalidWeights("negative weight".into()));
    }
    if Point::combination(x.dim(), points, weights) != *x {
        return Err(Error::ReconstructionMismatch);
    }
    Ok(())
}

/// Repeatedly removes one point from the support along a dependence `μ`
/// oriented to have a positive entry, until at most `limit` points remain.
fn eliminate(
    points: &[Point],
    weights: &[Rational],
    limit: usize,
    affine: bool,
    orient: impl Fn(&mut Vec<Rational>),
) -> Result<Reduction> {
    let mut support: Vec<usize> = (0..points.len()).filter(|&i| weights[i].is_positive()).collect();
    let mut lambda: Vec<Rational> = support.iter().map(|&i| weights[i].clone()).collect();
    while support.len() > limit {
        let active: Vec<Point> = support.iter().map(|&i| points[i].clone()).collect();
        let mut mu = linear_dependence(&active, affine)?
            .ok_or_else(|| Error::Internal("expected a dependence above the support bound".into()))?;
        orient(&mut mu);
        if !mu.iter().any(Signed::is_positive) {
            mu.iter_mut().for_each(|m| *m = -&*m);
        }
        let mut best: Option<(usize, Rational)> = None;
        for (k, m) in mu.iter().enumerate() {
            if m.is_positive() {
                let ratio = &lambda[k] / m;
                if best.as_ref().is_none_or(|(_, b)| ratio < *b) {
                    best = Some((k, ratio));
                }
            }
        }
        let (drop, alpha) = best.expect("oriented dependence has a positive entry");
        for (l, m) in lambda.iter_mut().zip(&mu) {
            *l -= &alpha * m;
        }
        debug_assert!(lambda[drop].is_zero());
        support.remove(drop);
        lambda.remove(drop);
    }
    Ok(Reduction { indices: support, weights: lambda })
}

/// Rewrites a convex combination of `points` equal to `x` using at most
/// `d + 1` of them.
pub fn caratheodory_convex(x: &Point, points: &[Point], weights: &[Rational]) -> Result<Reduction> {
    check_inputs(x, points, weights)?;
    if !rational::sum(weights).is_one() {
        return Err(Error::InvalidWeights("weights must sum to 1".into()));
    }
    let out = eliminate(points, weights, x.dim() + 1, true, |_| {})?;
    debug_assert_eq!(out.evaluate(points), *x);
    Ok(out)
}

/// Rewrites a nonnegative combination of `vectors` with weight sum at most
/// one, equal to the nonzero `x`, using at most `d` vectors. The weight sum
/// never increases.
pub fn caratheodory_conical_bounded(x: &Point, vectors: &[Point], weights: &[Rational]) -> Result<Reduction> {
    if x.is_zero() {
        return Err(Error::ZeroTarget);
    }
    check_inputs(x, vectors, weights)?;
    if rational::sum(weights) > Rational::one() {
        return Err(Error::InvalidWeights("weight sum exceeds 1".into()));
    }
    let out = eliminate(vectors, weights, x.dim(), false, |mu| {
        if rational::sum(mu.iter()).is_negative() {
            mu.iter_mut().for_each(|m| *m = -&*m);
        }
    })?;
    debug_assert_eq!(out.evaluate(vectors), *x);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|c| Point::from_ints(c)).collect()
    }

    #[test]
    fn square_center() {
        let points = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let x = Point::new(vec![rat(1, 2), rat(1, 2)]);
        let w = vec![rat(1, 4); 4];
        let r = caratheodory_convex(&x, &points, &w).unwrap();
        assert!(r.len() <= 3);
        assert_eq!(r.evaluate(&points), x);
        assert!(rational::is_probability_vector(&r.weights));
        // μ = (1,-1,-1,1); both positive entries attain α = 1/4, index 0 is dropped
        assert_eq!(r.indices, vec![1, 2, 3]);
        assert_eq!(r.weights, vec![rat(1, 2), rat(1, 2), int(0)]);
    }

    #[test]
    fn identity_case() {
        let points = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let w = vec![int(0), int(0), int(1), int(0)];
        let r = caratheodory_convex(&points[2], &points, &w).unwrap();
        assert_eq!(r, Reduction { indices: vec![2], weights: vec![int(1)] });
    }

    #[test]
    fn line_segment() {
        let points = vec![Point::new(vec![int(0)]), Point::new(vec![rat(1, 4)]), Point::new(vec![int(1)])];
        let x = Point::new(vec![rat(1, 2)]);
        // (1/6, 1/3, 1/2) reconstructs 7/12, not 1/2
        let w = vec![rat(1, 6), rat(1, 3), rat(1, 2)];
        assert_eq!(caratheodory_convex(&x, &points, &w), Err(Error::ReconstructionMismatch));

        let w = vec![rat(1, 4), rat(1, 3), rat(5, 12)];
        let r = caratheodory_convex(&x, &points, &w).unwrap();
        assert!(r.len() <= 2);
        assert_eq!(r.evaluate(&points), x);
        assert!(rational::is_probability_vector(&r.weights));
    }

    #[test]
    fn conical_examples() {
        let v = pts(&[&[1, 5], &[5, 1], &[2, 2]]);
        let r = caratheodory_conical_bounded(&Point::from_ints(&[3, 3]), &v, &[rat(1, 2), rat(1, 2), int(0)]).unwrap();
        assert_eq!(r, Reduction { indices: vec![0, 1], weights: vec![rat(1, 2), rat(1, 2)] });

        let v = pts(&[&[2, 0], &[0, 2], &[1, 1]]);
        let r = caratheodory_conical_bounded(&Point::from_ints(&[1, 1]), &v, &[rat(1, 4), rat(1, 4), rat(1, 2)]).unwrap();
        assert_eq!(r, Reduction { indices: vec![0, 1], weights: vec![rat(1, 2), rat(1, 2)] });

        let v = pts(&[&[1, 5], &[5, 1]]);
        let r = caratheodory_conical_bounded(&Point::from_ints(&[2, 2]), &v, &[rat(1, 3), rat(1, 3)]).unwrap();
        assert_eq!(r, Reduction { indices: vec![0, 1], weights: vec![rat(1, 3), rat(1, 3)] });
    }

    #[test]
    fn conical_errors() {
        let v = pts(&[&[1, 0], &[-1, 0]]);
        assert_eq!(
            caratheodory_conical_bounded(&Point::zeros(2), &v, &[rat(1, 2), rat(1, 2)]),
            Err(Error::ZeroTarget)
        );
        assert_eq!(
            caratheodory_conical_bounded(&Point::from_ints(&[1, 0]), &v, &[rat(1, 2), int(0)]),
            Err(Error::ReconstructionMismatch)
        );
    }
}
