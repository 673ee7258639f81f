//! Brute-force cross-checks: exhaustive minimal-support search, belief-grid
//! scans and vertex-plus-grid dominance checks. These evaluate payoffs
//! directly and share no reduction logic with the main pipeline.

use num_traits::Zero;

use crate::dominance::{find_dominating_mixture, DominanceCertificate};
use crate::error::{Error, Result};
use crate::game::{Belief, Game, Player};
use crate::rational::{self, Rational};
use crate::rationalizability::best_response_belief;

/// Default cap on the number of actions searched by
/// [`enumerate_min_support`].
pub const DEFAULT_SUBSET_CAP: usize = 12;

/// Beliefs whose probabilities are multiples of `1 / resolution`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    resolution: u32,
}

impl GridSpec {
    pub fn new(resolution: u32) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::Generator("grid resolution must be positive".into()));
        }
        Ok(GridSpec { resolution })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    /// Every grid belief over `dim` coordinates.
    pub fn beliefs(&self, dim: usize) -> Vec<Belief> {
        let k = self.resolution as i64;
        let mut out = Vec::new();
        let mut parts = vec![0i64; dim];
        compositions(k, 0, &mut parts, &mut |p| {
            out.push(Belief::new(p.iter().map(|&x| rational::rat(x, k)).collect()).expect("grid point is a belief"));
        });
        out
    }
}

fn compositions(left: i64, at: usize, parts: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    if at + 1 == parts.len() {
        parts[at] = left;
        emit(parts);
        return;
    }
    for x in 0..=left {
        parts[at] = x;
        compositions(left - x, at + 1, parts, emit);
    }
}

fn for_each_subset(items: &[usize], size: usize, f: &mut impl FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    fn go(
        items: &[usize],
        size: usize,
        start: usize,
        acc: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if acc.len() == size {
            return f(acc);
        }
        for k in start..items.len() {
            acc.push(items[k]);
            if go(items, size, k + 1, acc, f)? {
                return Ok(true);
            }
            acc.pop();
        }
        Ok(false)
    }
    go(items, size, 0, &mut Vec::new(), f)
}

/// Exact size of the smallest support of any strictly dominating mixture
/// for `i`, searched over all subsets of the other actions in increasing
/// size; `None` if `i` is not dominated. Refuses games where `player` has
/// more than `cap` actions.
pub fn enumerate_min_support(g: &Game, player: Player, i: usize, cap: usize) -> Result<Option<usize>> {
    g.check_action(player, i)?;
    let n = g.num_actions(player);
    if n > cap {
        return Err(Error::TooLarge(format!("{n} actions exceeds the subset cap {cap}")));
    }
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    for size in 1..=others.len() {
        let found = for_each_subset(&others, size, &mut |subset| {
            Ok(find_dominating_mixture(g, player, i, subset)?.is_some())
        })?;
        if found {
            return Ok(Some(size));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridVerdict {
    Consistent,
    /// A grid belief at which the supposed never-best-response is a best
    /// response.
    Counterexample(Belief),
}

/// One-sided check of a "never best response" verdict: if the pipeline
/// claims `i` is never a best response, no grid belief may make it one.
/// Passing is necessary, not sufficient.
pub fn grid_check_nbr(g: &Game, player: Player, i: usize, grid: GridSpec) -> Result<GridVerdict> {
    if !best_response_belief(g, player, i)?.is_never() {
        return Ok(GridVerdict::Consistent);
    }
    let counterexample =
        grid.beliefs(g.num_actions(player.other())).into_iter().find(|q| is_best_response_at(g, player, i, q));
    Ok(counterexample.map_or(GridVerdict::Consistent, GridVerdict::Counterexample))
}

/// True iff `i` is a weak best response at `belief`.
pub fn is_best_response_at(g: &Game, player: Player, i: usize, belief: &Belief) -> bool {
    let vectors = g.payoff_vectors(player);
    let own = vectors[i].dot(belief.probs());
    vectors.iter().all(|v| v.dot(belief.probs()) <= own)
}

/// Checks the strict expected-payoff inequality of the certificate's
/// mixture over its dominated action at every simplex vertex (which is
/// complete) and at every grid belief.
pub fn verify_dominance_exhaustive(g: &Game, player: Player, cert: &DominanceCertificate, grid: GridSpec) -> bool {
    let n = g.num_actions(player);
    let m = g.num_actions(player.other());
    if cert.dominated >= n || cert.mixture.weights().iter().any(|(j, _)| *j >= n || *j == cert.dominated) {
        return false;
    }
    let total = rational::sum(cert.mixture.weights().iter().map(|(_, w)| w));
    if total != rational::int(1) || cert.mixture.weights().iter().any(|(_, w)| *w <= Rational::zero()) {
        return false;
    }
    let payoff = |row: usize, col: usize| -> Rational {
        match player {
            Player::Row => g.row_payoffs()[row][col].clone(),
            Player::Col => g.col_payoffs()[col][row].clone(),
        }
    };
    let beats = |q: &[Rational]| -> bool {
        let mut mix = Rational::zero();
        let mut own = Rational::zero();
        for (k, qk) in q.iter().enumerate() {
            if qk.is_zero() {
                continue;
            }
            own += qk * payoff(cert.dominated, k);
            for (j, w) in cert.mixture.weights() {
                mix += qk * w * payoff(*j, k);
            }
        }
        mix > own
    };
    let vertices_ok = (0..m).all(|k| beats(Belief::point_mass(m, k).probs()));
    vertices_ok && grid.beliefs(m).iter().all(|q| beats(q.probs()))
}
