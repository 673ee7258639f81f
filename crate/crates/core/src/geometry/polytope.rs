use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{self, Constraint, LinearProgram, LpOutcome};
use crate::point::Point;
use crate::rational::{self, Rational};

use super::linalg;

/// One closed inequality `normal · x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub normal: Point,
    #[serde(with = "rational::serde_str")]
    pub offset: Rational,
}

impl Inequality {
    pub fn new(normal: Point, offset: Rational) -> Self {
        Inequality { normal, offset }
    }

    pub fn holds(&self, x: &Point) -> bool {
        self.normal.dot(x) <= self.offset
    }
}

/// A nonempty bounded polyhedron `{x : normal_i · x <= offset_i}`.
///
/// Lower-dimensional polytopes (for example the probability simplex, which
/// carries the pair `Σx <= 1`, `-Σx <= -1`) are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polytope {
    constraints: Vec<Inequality>,
    dim: usize,
}

impl Polytope {
    /// Validates dimensions, then checks feasibility and boundedness by LP.
    pub fn new(dim: usize, constraints: Vec<Inequality>) -> Result<Self> {
        let p = Self::feasible(dim, constraints)?;
        for j in 0..dim {
            for sign in [1, -1] {
                let mut objective = Point::zeros(dim).into_coords();
                objective[j] = rational::int(sign);
                let lp = LinearProgram { objective: objective.into(), constraints: p.lp_constraints(), nonneg: vec![] };
                if let LpOutcome::Unbounded { .. } = lp::lp_maximize(&lp)? {
                    return Err(Error::UnboundedPolytope);
                }
            }
        }
        Ok(p)
    }

    /// `simplex ∩ constraints` over `dim` probability coordinates; bounded by
    /// construction, so only feasibility is checked.
    pub fn simplex_with(dim: usize, extra: Vec<Inequality>) -> Result<Self> {
        let mut constraints = Self::simplex_inequalities(dim);
        constraints.extend(extra);
        Self::feasible(dim, constraints)
    }

    /// The probability simplex `{x >= 0, Σx = 1}` in `ℝ^dim`.
    pub fn simplex(dim: usize) -> Self {
        Polytope { constraints: Self::simplex_inequalities(dim), dim }
    }

    fn simplex_inequalities(dim: usize) -> Vec<Inequality> {
        let mut constraints: Vec<Inequality> =
            (0..dim).map(|k| Inequality::new(Point::unit(dim, k).neg(), Rational::zero())).collect();
        let ones = Point::new(vec![Rational::one(); dim]);
        constraints.push(Inequality::new(ones.clone(), Rational::one()));
        constraints.push(Inequality::new(ones.neg(), -Rational::one()));
        constraints
    }

    fn feasible(dim: usize, constraints: Vec<Inequality>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty("polytope dimension"));
        }
        if let Some(c) = constraints.iter().find(|c| c.normal.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: c.normal.dim() });
        }
        let p = Polytope { constraints, dim };
        if lp::lp_feasible_point(dim, &p.lp_constraints(), &[])?.is_none() {
            return Err(Error::InfeasiblePolytope);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Inequality] {
        &self.constraints
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.dim() == self.dim && self.constraints.iter().all(|c| c.holds(x))
    }

    pub(crate) fn lp_constraints(&self) -> Vec<Constraint> {
        self.constraints.iter().map(|c| Constraint::le(c.normal.clone(), c.offset.clone())).collect()
    }

    /// Exact vertex set, sorted lexicographically.
    ///
    /// Every vertex of a bounded polyhedron is the unique solution of `dim`
    /// linearly independent tight constraints, so all `dim`-subsets are
    /// solved and the feasible solutions kept.
    pub fn vertices(&self) -> Vec<Point> {
        let k = self.constraints.len();
        let d = self.dim;
        let mut found: Vec<Point> = Vec::new();
        if k < d {
            return found;
        }
        let mut pick: Vec<usize> = (0..d).collect();
        loop {
            let a: Vec<Vec<Rational>> = pick.iter().map(|&i| self.constraints[i].normal.to_vec()).collect();
            let b: Vec<Rational> = pick.iter().map(|&i| self.constraints[i].offset.clone()).collect();
            if let Some(x) = linalg::solve_square(&a, &b) {
                let x = Point::new(x);
                if self.contains(&x) && !found.contains(&x) {
                    found.push(x);
                }
            }
            // next combination in lexicographic order
            let Some(pos) = (0..d).rev().find(|&i| pick[i] < k - d + i) else { break };
            pick[pos] += 1;
            for i in pos + 1..d {
                pick[i] = pick[i - 1] + 1;
            }
        }
        found.sort_by(|a, b| a.coords().cmp(b.coords()));
        found
    }

    /// Dimension of the affine hull.
    pub fn intrinsic_dim(&self) -> usize {
        let vs = self.vertices();
        let Some(first) = vs.first() else { return 0 };
        let rows: Vec<Vec<Rational>> = vs[1..].iter().map(|v| v.sub(first).into_coords()).collect();
        linalg::rank(&rows, self.dim)
    }
}

/// Vertex set of `p`.
pub fn polytope_vertices(p: &Polytope) -> Vec<Point> {
    p.vertices()
}
