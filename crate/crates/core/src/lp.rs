//! Exact linear programming over rationals.
//!
//! A dense two-phase primal simplex with Bland's pivoting rule. Equality
//! rows are kept as equalities and get an artificial variable in phase one.
//! Variables not listed in `nonneg` are free and are split into a positive
//! and a negative part internally.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub normal: Point,
    pub relation: Relation,
    pub offset: Rational,
}

impl Constraint {
    pub fn new(normal: Point, relation: Relation, offset: Rational) -> Self {
        Constraint { normal, relation, offset }
    }

    pub fn le(normal: Point, offset: Rational) -> Self {
        Self::new(normal, Relation::Le, offset)
    }

    pub fn eq(normal: Point, offset: Rational) -> Self {
        Self::new(normal, Relation::Eq, offset)
    }

    pub fn ge(normal: Point, offset: Rational) -> Self {
        Self::new(normal, Relation::Ge, offset)
    }

    pub fn is_satisfied(&self, x: &Point) -> bool {
        let lhs = self.normal.dot(x);
        match self.relation {
            Relation::Le => lhs <= self.offset,
            Relation::Eq => lhs == self.offset,
            Relation::Ge => lhs >= self.offset,
        }
    }
}

/// Maximize `objective · x` subject to `constraints`, with `x[j] >= 0`
/// for every `j` in `nonneg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Point,
    pub constraints: Vec<Constraint>,
    pub nonneg: Vec<usize>,
}

impl LinearProgram {
    pub fn dim(&self) -> usize {
        self.objective.dim()
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for c in &self.constraints {
            if c.normal.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.normal.dim() });
            }
        }
        if let Some(&j) = self.nonneg.iter().find(|&&j| j >= dim) {
            return Err(Error::IndexOutOfRange { index: j, len: dim });
        }
        Ok(())
    }

    /// True when `x` satisfies every constraint and sign restriction exactly.
    pub fn is_feasible(&self, x: &Point) -> bool {
        x.dim() == self.dim()
            && self.nonneg.iter().all(|&j| !x[j].is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { solution: Point, value: Rational },
    Infeasible,
    /// `ray` is a recession direction of the feasible set along which the
    /// objective strictly increases.
    Unbounded { ray: Point },
}

impl LpOutcome {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Infeasible => LpStatus::Infeasible,
            LpOutcome::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn solution(&self) -> Option<&Point> {
        match self {
            LpOutcome::Optimal { solution, .. } => Some(solution),
            LpOutcome::Unbounded { ray } => Some(ray),
            LpOutcome::Infeasible => None,
        }
    }
}

pub fn lp_maximize(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let mut tab = Tableau::build(lp);
    if !tab.phase_one() {
        return Ok(LpOutcome::Infeasible);
    }
    let outcome = match tab.phase_two(lp) {
        Some(entering) => LpOutcome::Unbounded { ray: tab.ray(entering) },
        None => {
            let solution = tab.solution();
            let value = lp.objective.dot(&solution);
            LpOutcome::Optimal { solution, value }
        }
    };
    Ok(outcome)
}

/// Finds an exact point satisfying `constraints` (and `x[j] >= 0` for `j`
/// in `nonneg`), or `None` when the system is infeasible.
pub fn lp_feasible_point(dim: usize, constraints: &[Constraint], nonneg: &[usize]) -> Result<Option<Point>> {
    let lp = LinearProgram {
        objective: Point::zeros(dim),
        constraints: constraints.to_vec(),
        nonneg: nonneg.to_vec(),
    };
    match lp_maximize(&lp)? {
        LpOutcome::Optimal { solution, .. } => Ok(Some(solution)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded { .. } => Err(Error::Internal("zero objective reported unbounded".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    /// Original variable `j` with sign `+1` or `-1`.
    Structural(usize, bool),
    Slack,
    Artificial,
}

struct Tableau {
    /// Each row holds the column coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    /// Reduced costs followed by minus the current objective value.
    cost: Vec<Rational>,
    dim: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let dim = lp.dim();
        let mut nonneg = vec![false; dim];
        for &j in &lp.nonneg {
            nonneg[j] = true;
        }
        let mut kinds = Vec::new();
        for (j, &nn) in nonneg.iter().enumerate() {
            kinds.push(ColumnKind::Structural(j, true));
            if !nn {
                kinds.push(ColumnKind::Structural(j, false));
            }
        }
        let structural = kinds.len();

        // Normalize every row to a nonnegative right-hand side.
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = Vec::with_capacity(structural);
                for kind in &kinds {
                    if let ColumnKind::Structural(j, positive) = *kind {
                        coeffs.push(if positive { c.normal[j].clone() } else { -&c.normal[j] });
                    }
                }
                if c.offset.is_negative() {
                    (coeffs.into_iter().map(|x| -x).collect(), c.relation.flipped(), -&c.offset)
                } else {
                    (coeffs, c.relation, c.offset.clone())
                }
            })
            .collect();

        let mut extra = Vec::new();
        for (_, rel, _) in &normalized {
            match rel {
                Relation::Le => extra.push(vec![ColumnKind::Slack]),
                Relation::Ge => extra.push(vec![ColumnKind::Slack, ColumnKind::Artificial]),
                Relation::Eq => extra.push(vec![ColumnKind::Artificial]),
            }
        }
        let total = structural + extra.iter().map(Vec::len).sum::<usize>();
        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let mut next = structural;
        for ((coeffs, rel, rhs), cols) in normalized.into_iter().zip(&extra) {
            let mut row = coeffs;
            row.resize(total + 1, Rational::zero());
            match rel {
                Relation::Le => {
                    row[next] = Rational::one();
                    basis.push(next);
                }
                Relation::Ge => {
                    row[next] = -Rational::one();
                    row[next + 1] = Rational::one();
                    basis.push(next + 1);
                }
                Relation::Eq => {
                    row[next] = Rational::one();
                    basis.push(next);
                }
            }
            kinds.extend(cols.iter().copied());
            next += cols.len();
            row[total] = rhs;
            rows.push(row);
        }
        Tableau { rows, basis, kinds, cost: vec![Rational::zero(); total + 1], dim }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        let width = self.width();
        let mut cost: Vec<Rational> = costs.to_vec();
        cost.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for k in 0..=width {
                cost[k] -= cb * &row[k];
            }
        }
        self.cost = cost;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
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
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's-rule simplex on the columns admitted by `allowed`.
    /// Returns the entering column of an unbounded direction, if any.
    fn optimize(&mut self, allowed: impl Fn(ColumnKind) -> bool) -> Option<usize> {
        let width = self.width();
        loop {
            let entering = (0..width).find(|&j| allowed(self.kinds[j]) && self.cost[j].is_positive());
            let c = entering?;
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[width] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Some(c),
            }
        }
    }

    fn phase_one(&mut self) -> bool {
        let width = self.width();
        if !self.kinds.contains(&ColumnKind::Artificial) {
            return true;
        }
        let costs: Vec<Rational> = self
            .kinds
            .iter()
            .map(|&k| if k == ColumnKind::Artificial { -Rational::one() } else { Rational::zero() })
            .collect();
        self.set_costs(&costs);
        // Phase one is bounded above by zero.
        let _ = self.optimize(|_| true);
        if !self.cost[width].is_zero() {
            return false;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < self.rows.len() {
            if self.kinds[self.basis[r]] == ColumnKind::Artificial {
                let replacement =
                    (0..width).find(|&j| self.kinds[j] != ColumnKind::Artificial && !self.rows[r][j].is_zero());
                match replacement {
                    Some(c) => self.pivot(r, c),
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        true
    }

    fn phase_two(&mut self, lp: &LinearProgram) -> Option<usize> {
        let costs: Vec<Rational> = self
            .kinds
            .iter()
            .map(|&k| match k {
                ColumnKind::Structural(j, true) => lp.objective[j].clone(),
                ColumnKind::Structural(j, false) => -&lp.objective[j],
                _ => Rational::zero(),
            })
            .collect();
        self.set_costs(&costs);
        self.optimize(|k| k != ColumnKind::Artificial)
    }

    fn project(&self, values: &[Rational]) -> Point {
        let mut x = vec![Rational::zero(); self.dim];
        for (k, v) in self.kinds.iter().zip(values) {
            if let ColumnKind::Structural(j, positive) = *k {
                if positive {
                    x[j] += v;
                } else {
                    x[j] -= v;
                }
            }
        }
        Point::new(x)
    }

    fn solution(&self) -> Point {
        let width = self.width();
        let mut values = vec![Rational::zero(); width];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            values[b] = row[width].clone();
        }
        self.project(&values)
    }

    fn ray(&self, entering: usize) -> Point {
        let mut values = vec![Rational::zero(); self.width()];
        values[entering] = Rational::one();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            values[b] = -&row[entering];
        }
        self.project(&values)
    }
}

/// Convenience: the constraints `x >= 0, Σx = 1` over `dim` coordinates are
/// expressed through `nonneg` plus this single equality row.
pub fn simplex_equality(dim: usize) -> Constraint {
    Constraint::eq(Point::new(vec![Rational::one(); dim]), rational::int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn pt(v: &[i64]) -> Point {
        Point::from_ints(v)
    }

    #[test]
    fn maximize_on_simplex() {
        let lp = LinearProgram {
            objective: pt(&[1, 0]),
            constraints: vec![Constraint::eq(pt(&[1, 1]), int(1))],
            nonneg: vec![0, 1],
        };
        let out = lp_maximize(&lp).unwrap();
        assert_eq!(out, LpOutcome::Optimal { solution: pt(&[1, 0]), value: int(1) });
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let lp = LinearProgram {
            objective: pt(&[1]),
            constraints: vec![Constraint::ge(pt(&[1]), int(2)), Constraint::le(pt(&[1]), int(1))],
            nonneg: vec![],
        };
        assert_eq!(lp_maximize(&lp).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn epsilon_program_for_fig1() {
        // variables (p, eps); 6p + 2(1-p) >= 3 + eps, 5(1-p) >= 3 + eps, 0 <= p <= 1
        let lp = LinearProgram {
            objective: pt(&[0, 1]),
            constraints: vec![
                Constraint::ge(pt(&[4, -1]), int(1)),
                Constraint::ge(pt(&[-5, -1]), int(-2)),
                Constraint::le(pt(&[1, 0]), int(1)),
            ],
            nonneg: vec![0],
        };
        let out = lp_maximize(&lp).unwrap();
        assert_eq!(out.value(), Some(&rat(1, 3)));
        assert_eq!(out.solution().unwrap(), &Point::new(vec![rat(1, 3), rat(1, 3)]));
        // one-dimensional sweep oracle: eps(p) = min(4p - 1, 2 - 5p) on a fine grid never beats 1/3
        for k in 0..=300 {
            let p = rat(k, 300);
            let e1 = int(4) * &p - int(1);
            let e2 = int(2) - int(5) * &p;
            assert!(e1.min(e2) <= rat(1, 3));
        }
    }

    #[test]
    fn unbounded_has_improving_ray() {
        let lp = LinearProgram {
            objective: pt(&[1, 1]),
            constraints: vec![Constraint::ge(pt(&[1, -1]), int(0))],
            nonneg: vec![0, 1],
        };
        let out = lp_maximize(&lp).unwrap();
        let LpOutcome::Unbounded { ray } = out else { panic!("expected unbounded") };
        assert!(lp.objective.dot(&ray).is_positive());
        assert!(ray.iter().all(|r| !r.is_negative()));
        assert!(!(ray[0].clone() - &ray[1]).is_negative());
    }

    #[test]
    fn free_variables_go_negative() {
        let lp = LinearProgram {
            objective: pt(&[-1]),
            constraints: vec![Constraint::ge(pt(&[1]), int(-5))],
            nonneg: vec![],
        };
        assert_eq!(lp_maximize(&lp).unwrap().value(), Some(&int(5)));
    }

    #[test]
    fn feasibility_examples() {
        let simplex = vec![simplex_equality(2)];
        let mut blocked = simplex.clone();
        blocked.push(Constraint::ge(pt(&[-3, 3]), int(0)));
        blocked.push(Constraint::ge(pt(&[1, -2]), int(0)));
        assert_eq!(lp_feasible_point(2, &blocked, &[0, 1]).unwrap(), None);

        let p = lp_feasible_point(2, &simplex, &[0, 1]).unwrap().unwrap();
        assert!(p.iter().all(|c| !c.is_negative()));
        assert_eq!(p[0].clone() + &p[1], int(1));

        let mut quarter = simplex.clone();
        quarter.push(Constraint::ge(pt(&[1, 0]), rat(1, 4)));
        let p = lp_feasible_point(2, &quarter, &[0, 1]).unwrap().unwrap();
        assert!(p[0] >= rat(1, 4));
        assert_eq!(p[0].clone() + &p[1], int(1));
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let lp = LinearProgram {
            objective: pt(&[1, 2]),
            constraints: vec![
                Constraint::eq(pt(&[1, 1]), int(1)),
                Constraint::eq(pt(&[2, 2]), int(2)),
            ],
            nonneg: vec![0, 1],
        };
        let out = lp_maximize(&lp).unwrap();
        assert_eq!(out, LpOutcome::Optimal { solution: pt(&[0, 1]), value: int(2) });
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let lp = LinearProgram {
            objective: pt(&[1, 1]),
            constraints: vec![Constraint::le(pt(&[1]), int(1))],
            nonneg: vec![],
        };
        assert!(matches!(lp_maximize(&lp), Err(Error::DimensionMismatch { .. })));
    }
}
