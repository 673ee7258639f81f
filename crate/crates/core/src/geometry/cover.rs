//! Coverings of polytopes by open half-spaces.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{self, Constraint};
use crate::point::Point;
use crate::rational::{self, Rational};

use super::polytope::Polytope;

/// The open half-space `{x : normal · x < offset}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpenHalfSpace {
    normal: Point,
    #[serde(with = "rational::serde_str")]
    offset: Rational,
}

impl OpenHalfSpace {
    pub fn new(normal: Point, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(OpenHalfSpace { normal, offset })
    }

    /// `{x : normal · x < 0}`.
    pub fn homogeneous(normal: Point) -> Result<Self> {
        Self::new(normal, Rational::zero())
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.offset.is_zero()
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.normal.dot(x) < self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coverage {
    Covered,
    /// A point of the polytope outside every half-space.
    Uncovered(Point),
}

impl Coverage {
    pub fn is_covered(&self) -> bool {
        matches!(self, Coverage::Covered)
    }
}

fn check_dim(h: &OpenHalfSpace, p: &Polytope) -> Result<()> {
    if h.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: h.dim() });
    }
    Ok(())
}

/// True iff every point of `p` lies strictly inside `h`; decided on the
/// vertices of `p`.
pub fn halfspace_covers(h: &OpenHalfSpace, p: &Polytope) -> Result<bool> {
    check_dim(h, p)?;
    Ok(p.vertices().iter().all(|v| h.contains(v)))
}

/// Decides whether the union of `halfspaces` covers `p`, by LP feasibility
/// of `p` intersected with every closed complement.
pub fn union_covers(halfspaces: &[OpenHalfSpace], p: &Polytope) -> Result<Coverage> {
    for h in halfspaces {
        check_dim(h, p)?;
    }
    let mut constraints = p.lp_constraints();
    constraints.extend(halfspaces.iter().map(|h| Constraint::ge(h.normal.clone(), h.offset.clone())));
    Ok(match lp::lp_feasible_point(p.dim(), &constraints, &[])? {
        Some(x) => Coverage::Uncovered(x),
        None => Coverage::Covered,
    })
}

/// Greedily drops redundant half-spaces from a cover of `p`. The result is
/// a minimal cover (no retained member can be dropped) and has at most
/// `intrinsic_dim(p) + 1` members.
pub fn minimal_subcover(halfspaces: &[OpenHalfSpace], p: &Polytope) -> Result<Vec<usize>> {
    if !union_covers(halfspaces, p)?.is_covered() {
        return Err(Error::NotCovered);
    }
    let mut keep: Vec<usize> = (0..halfspaces.len()).collect();
    let mut pos = 0;
    while pos < keep.len() {
        let trial: Vec<OpenHalfSpace> =
            keep.iter().enumerate().filter(|&(k, _)| k != pos).map(|(_, &i)| halfspaces[i].clone()).collect();
        if union_covers(&trial, p)?.is_covered() {
            keep.remove(pos);
        } else {
            pos += 1;
        }
    }
    let bound = p.intrinsic_dim() + 1;
    if keep.len() > bound {
        return Err(Error::Internal(format!("minimal cover of size {} exceeds {bound}", keep.len())));
    }
    Ok(keep)
}

/// Replaces two homogeneous half-spaces that jointly cover `s` by a single
/// half-space `(λa + (1-λ)b) · x < 0` covering `s` alone.
///
/// `λ = 1` when `a` covers alone, `λ = 0` when `b` does; otherwise `λ` is the
/// midpoint of the open interval cut out by the vertex conditions
/// `λ(a·v) + (1-λ)(b·v) < 0`.
pub fn rotation_merge(a: &OpenHalfSpace, b: &OpenHalfSpace, s: &Polytope) -> Result<(Rational, OpenHalfSpace)> {
    if !a.is_homogeneous() || !b.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !union_covers(&[a.clone(), b.clone()], s)?.is_covered() {
        return Err(Error::NotCovered);
    }
    if halfspace_covers(a, s)? {
        return Ok((Rational::one(), a.clone()));
    }
    if halfspace_covers(b, s)? {
        return Ok((Rational::zero(), b.clone()));
    }
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    for v in s.vertices() {
        let av = a.normal.dot(&v);
        let bv = b.normal.dot(&v);
        let slope = &av - &bv;
        if slope.is_zero() {
            if !bv.is_negative() {
                return Err(Error::Internal("vertex uncovered for every λ".into()));
            }
            continue;
        }
        let root = -&bv / &slope;
        if slope.is_positive() {
            hi = hi.min(root);
        } else {
            lo = lo.max(root);
        }
    }
    if lo >= hi {
        return Err(Error::Internal("empty rotation interval".into()));
    }
    let lambda = (&lo + &hi) / rational::int(2);
    let normal = a.normal.scaled(&lambda).add(&b.normal.scaled(&(Rational::one() - &lambda)));
    let merged = OpenHalfSpace::homogeneous(normal)?;
    if !halfspace_covers(&merged, s)? {
        return Err(Error::Internal("merged half-space does not cover".into()));
    }
    Ok((lambda, merged))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polytope::Inequality;
    use crate::rational::{int, rat};

    fn h(n: &[i64]) -> OpenHalfSpace {
        OpenHalfSpace::homogeneous(Point::from_ints(n)).unwrap()
    }

    fn unit_interval() -> Polytope {
        Polytope::new(
            1,
            vec![Inequality::new(Point::from_ints(&[1]), int(1)), Inequality::new(Point::from_ints(&[-1]), int(0))],
        )
        .unwrap()
    }

    #[test]
    fn single_halfspace_cover() {
        let s = Polytope::simplex(2);
        assert!(halfspace_covers(&h(&[-1, -1]), &s).unwrap());
        assert!(!halfspace_covers(&h(&[1, -1]), &s).unwrap());
        assert!(!halfspace_covers(&h(&[-3, 3]), &s).unwrap());
    }

    #[test]
    fn union_cover_and_witness() {
        let s = Polytope::simplex(2);
        assert!(union_covers(&[h(&[-1, -1])], &s).unwrap().is_covered());
        let Coverage::Uncovered(w) = union_covers(&[h(&[1, -1])], &s).unwrap() else { panic!() };
        assert!(s.contains(&w));
        assert!(!h(&[1, -1]).contains(&w));
        assert!(union_covers(&[h(&[-3, 3]), h(&[1, -2])], &s).unwrap().is_covered());
    }

    #[test]
    fn zero_normal_rejected() {
        assert_eq!(OpenHalfSpace::homogeneous(Point::zeros(2)), Err(Error::ZeroNormal));
    }

    #[test]
    fn interval_subcover() {
        let hs = vec![
            OpenHalfSpace::new(Point::from_ints(&[1]), rat(3, 5)).unwrap(),
            OpenHalfSpace::new(Point::from_ints(&[-1]), rat(-2, 5)).unwrap(),
            OpenHalfSpace::new(Point::from_ints(&[-1]), rat(-9, 10)).unwrap(),
        ];
        assert_eq!(minimal_subcover(&hs, &unit_interval()).unwrap(), vec![0, 1]);
    }

    #[test]
    fn singleton_subcover() {
        let s = Polytope::simplex(2);
        let hs = vec![h(&[1, -1]), h(&[-1, 1]), h(&[-1, -1]), h(&[2, -1]), h(&[1, 1])];
        assert_eq!(minimal_subcover(&hs, &s).unwrap(), vec![2]);
    }

    #[test]
    fn fig1_subcover_keeps_both() {
        let s = Polytope::simplex(2);
        assert_eq!(minimal_subcover(&[h(&[-3, 3]), h(&[1, -2])], &s).unwrap(), vec![0, 1]);
        assert_eq!(minimal_subcover(&[h(&[1, -2])], &s), Err(Error::NotCovered));
    }

    #[test]
    fn rotation_merge_fig1() {
        let s = Polytope::simplex(2);
        let (lambda, merged) = rotation_merge(&h(&[-3, 3]), &h(&[1, -2]), &s).unwrap();
        assert_eq!(lambda, rat(13, 40));
        assert_eq!(merged.normal(), &Point::new(vec![rat(-12, 40), rat(-15, 40)]));
        assert!(halfspace_covers(&merged, &s).unwrap());
    }

    #[test]
    fn rotation_merge_pure_cases() {
        let s = Polytope::simplex(2);
        let a = h(&[-1, -1]);
        let (lambda, merged) = rotation_merge(&a, &h(&[1, 1]), &s).unwrap();
        assert_eq!(lambda, int(1));
        assert_eq!(merged, a);
        let (lambda, _) = rotation_merge(&h(&[1, 1]), &a, &s).unwrap();
        assert_eq!(lambda, int(0));
    }

    #[test]
    fn rotation_merge_preconditions() {
        let s = Polytope::simplex(2);
        assert_eq!(rotation_merge(&h(&[1, -1]), &h(&[1, -2]), &s), Err(Error::NotCovered));
        let shifted = OpenHalfSpace::new(Point::from_ints(&[-1, -1]), int(1)).unwrap();
        assert_eq!(rotation_merge(&shifted, &h(&[1, -2]), &s), Err(Error::NotHomogeneous));
    }
}
