//! Strict dominance: decisions, certificates, support reduction and
//! iterated elimination.
//!
//! Player 2 is always handled by running the player 1 code on the
//! transposed game.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{normalize_positive, Game, MixedStrategy, Player};
use crate::geometry::caratheodory_conical_bounded;
use crate::lp::{self, Constraint, LinearProgram, LpOutcome};
use crate::point::Point;
use crate::rational::{self, Rational};
use crate::subgame::Subgame;

/// `mixture` strictly dominates action `dominated` by at least `margin` in
/// every coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceCertificate {
    pub dominated: usize,
    pub mixture: MixedStrategy,
    pub margin: Rational,
}

impl DominanceCertificate {
    pub fn support_size(&self) -> usize {
        self.mixture.support_size()
    }
}

/// Smallest coordinate of `Σ p_j v_j - v_i`.
pub fn dominance_gap(g: &Game, player: Player, mixture: &MixedStrategy, i: usize) -> Result<Rational> {
    g.check_action(player, i)?;
    mixture.check_for(g, player)?;
    let vectors = g.payoff_vectors(player);
    let u = mixture.payoff_vector(&vectors);
    let gap = u.sub(&vectors[i]);
    Ok(gap.iter().min().cloned().expect("opponent has at least one action"))
}

/// Does action `j` strictly dominate action `i`?
pub fn pure_dominates(g: &Game, player: Player, i: usize, j: usize) -> Result<bool> {
    g.check_action(player, i)?;
    g.check_action(player, j)?;
    if i == j {
        return Err(Error::SameAction(i));
    }
    let vectors = g.payoff_vectors(player);
    Ok(vectors[j].iter().zip(vectors[i].iter()).all(|(a, b)| a > b))
}

/// Does `mixture` strictly dominate action `i`? Weight on `i` itself is
/// folded out first.
pub fn mixed_dominates(g: &Game, player: Player, mixture: &MixedStrategy, i: usize) -> Result<bool> {
    g.check_action(player, i)?;
    mixture.check_for(g, player)?;
    match mixture.fold_out(i) {
        Some(m) => Ok(dominance_gap(g, player, &m, i)?.is_positive()),
        None => Ok(false),
    }
}

/// Checks every certificate invariant exactly.
pub fn verify_certificate(g: &Game, player: Player, cert: &DominanceCertificate) -> Result<()> {
    let fail = |m: String| Err(Error::InvalidCertificate(m));
    g.check_action(player, cert.dominated)?;
    cert.mixture.check_for(g, player)?;
    if !cert.margin.is_positive() {
        return fail("margin must be positive".into());
    }
    if cert.mixture.support().contains(&cert.dominated) {
        return fail("support contains the dominated action".into());
    }
    let gap = dominance_gap(g, player, &cert.mixture, cert.dominated)?;
    if gap < cert.margin {
        return fail(format!("gap {gap} is below the stated margin {}", cert.margin));
    }
    Ok(())
}

/// Solves `max ε` subject to `Σ_j p_j u(j,k) >= u(i,k) + ε` for every
/// opponent action `k`, with `p` a probability vector over `allowed`.
/// Returns a certificate iff the optimum is positive.
pub fn find_dominating_mixture(
    g: &Game,
    player: Player,
    i: usize,
    allowed: &[usize],
) -> Result<Option<DominanceCertificate>> {
    g.check_action(player, i)?;
    if allowed.is_empty() {
        return Err(Error::Empty("allowed action set"));
    }
    for &j in allowed {
        g.check_action(player, j)?;
        if j == i {
            return Err(Error::SameAction(i));
        }
    }
    let vectors = g.payoff_vectors(player);
    let s = allowed.len();
    let m = vectors[i].dim();
    // variables: p_1 .. p_s, eps
    let mut constraints = Vec::with_capacity(m + 1);
    for (k, target) in vectors[i].iter().enumerate() {
        let mut row: Vec<Rational> = allowed.iter().map(|&j| vectors[j][k].clone()).collect();
        row.push(-Rational::one());
        constraints.push(Constraint::ge(row.into(), target.clone()));
    }
    let mut ones = vec![Rational::one(); s];
    ones.push(Rational::zero());
    constraints.push(Constraint::eq(ones.into(), Rational::one()));
    let mut objective = vec![Rational::zero(); s];
    objective.push(Rational::one());
    let lp = LinearProgram { objective: objective.into(), constraints, nonneg: (0..s).collect() };
    let LpOutcome::Optimal { solution, value } = lp::lp_maximize(&lp)? else {
        return Err(Error::Internal("dominance program must have an optimum".into()));
    };
    if !value.is_positive() {
        return Ok(None);
    }
    let mixture = MixedStrategy::new(
        allowed.iter().zip(solution.iter()).filter(|(_, p)| p.is_positive()).map(|(&j, p)| (j, p.clone())).collect(),
    )?;
    Ok(Some(DominanceCertificate { dominated: i, mixture, margin: value }))
}

/// All other actions of `player`.
pub fn others(g: &Game, player: Player, i: usize) -> Vec<usize> {
    (0..g.num_actions(player)).filter(|&j| j != i).collect()
}

/// Is action `i` strictly dominated by some mixture of the other actions?
pub fn dominating_mixture(g: &Game, player: Player, i: usize) -> Result<Option<DominanceCertificate>> {
    let allowed = others(g, player, i);
    if allowed.is_empty() {
        g.check_action(player, i)?;
        return Ok(None);
    }
    find_dominating_mixture(g, player, i, &allowed)
}

/// Shrinks a certificate's support to at most `min(n - 1, m)` actions, where
/// `n` is `player`'s action count and `m` the opponent's.
///
/// The payoffs are shifted to be strictly positive, the mixture's payoff
/// vector is rewritten as a conical combination of at most `m` payoff
/// vectors with weight sum `s <= 1`, and the weights are scaled up by `1/s`,
/// which only raises a positive payoff vector. The result is re-verified
/// against the original game.
pub fn reduce_support(g: &Game, player: Player, cert: &DominanceCertificate) -> Result<DominanceCertificate> {
    verify_certificate(g, player, cert)?;
    let (shifted, _) = normalize_positive(g, player);
    let vectors = shifted.payoff_vectors(player);
    let support = cert.mixture.support();
    let weights: Vec<Rational> = cert.mixture.weights().iter().map(|(_, w)| w.clone()).collect();
    let chosen: Vec<Point> = support.iter().map(|&j| vectors[j].clone()).collect();
    let u = cert.mixture.payoff_vector(&vectors);
    let reduced = caratheodory_conical_bounded(&u, &chosen, &weights)?;
    let total = rational::sum(&reduced.weights);
    let scaled: Vec<(usize, Rational)> = reduced
        .indices
        .iter()
        .zip(&reduced.weights)
        .filter(|(_, w)| w.is_positive())
        .map(|(&k, w)| (support[k], w / &total))
        .collect();
    let mixture = MixedStrategy::new(scaled)?
        .fold_out(cert.dominated)
        .ok_or_else(|| Error::Internal("reduced mixture collapsed onto the dominated action".into()))?;
    let margin = dominance_gap(g, player, &mixture, cert.dominated)?;
    let out = DominanceCertificate { dominated: cert.dominated, mixture, margin };
    verify_certificate(g, player, &out).map_err(|e| Error::Internal(format!("reduced certificate failed: {e}")))?;
    let bound = (g.num_actions(player) - 1).min(g.num_actions(player.other()));
    if out.support_size() > bound {
        return Err(Error::Internal(format!("reduced support {} exceeds bound {bound}", out.support_size())));
    }
    Ok(out)
}

/// One scan of a single player: the actions removed, each with a reduced
/// certificate. `context` lists the survivors the certificates refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationRound {
    pub player: Player,
    pub context: Subgame,
    pub removed: Vec<usize>,
    pub certificates: Vec<DominanceCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationTrace {
    pub rounds: Vec<EliminationRound>,
    pub survivors: Subgame,
}

/// Scans player 1 then player 2 alternately, removing every strictly
/// dominated action of the scanned player at once, until two consecutive
/// scans remove nothing. Certificates use original action indices.
pub fn iesds(g: &Game) -> Result<EliminationTrace> {
    iterate_scans(g, |sub, player, i| {
        Ok(match dominating_mixture(sub, player, i)? {
            Some(cert) => Some(reduce_support(sub, player, &cert)?),
            None => None,
        })
    })
    .map(|(rounds, survivors)| EliminationTrace {
        rounds: rounds
            .into_iter()
            .map(|(player, context, found)| {
                let (removed, certificates) = found
                    .into_iter()
                    .map(|(i, cert)| (i, context.globalize_certificate(player, &cert)))
                    .unzip();
                EliminationRound { player, context, removed, certificates }
            })
            .collect(),
        survivors,
    })
}

type Scan<T> = (Player, Subgame, Vec<(usize, T)>);

/// Shared alternating schedule: `test` is asked about every action of the
/// scanned player in the current subgame (local indices) and returns the
/// evidence for removal, if any. Returned indices are original ones.
pub(crate) fn iterate_scans<T>(
    g: &Game,
    mut test: impl FnMut(&Game, Player, usize) -> Result<Option<T>>,
) -> Result<(Vec<Scan<T>>, Subgame)> {
    let mut current = Subgame::full(g);
    let mut rounds = Vec::new();
    let mut player = Player::Row;
    let mut idle = 0;
    while idle < 2 {
        let sub = current.game(g);
        let mut found = Vec::new();
        for local in 0..sub.num_actions(player) {
            if let Some(evidence) = test(&sub, player, local)? {
                found.push((local, evidence));
            }
        }
        if found.is_empty() {
            idle += 1;
        } else {
            idle = 0;
            let context = current.clone();
            let removed: Vec<usize> = found.iter().map(|(l, _)| current.global(player, *l)).collect();
            if removed.len() == current.actions(player).len() {
                return Err(Error::Internal("every action of a player was eliminated".into()));
            }
            let found = found.into_iter().map(|(l, e)| (current.global(player, l), e)).collect();
            current.remove(player, &removed);
            rounds.push((player, context, found));
        }
        player = player.other();
    }
    Ok((rounds, current))
}
