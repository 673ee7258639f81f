//! Best responses over the belief simplex, never-best-response
//! certificates, iterated rationalizability, and the pairwise
//! rotation-merge construction turning a never-best-response certificate
//! into a dominating mixture.

use num_traits::{One, Signed, Zero};

use crate::dominance::{self, DominanceCertificate, EliminationTrace};
use crate::error::{Error, Result};
use crate::game::{Belief, Game, MixedStrategy, Player};
use crate::geometry::{halfspace_covers, rotation_merge, union_covers, Inequality, OpenHalfSpace, Polytope};
use crate::lp::{self, Constraint};
use crate::point::Point;
use crate::rational::Rational;
use crate::subgame::Subgame;

/// `action` is a best response to `belief`; `slack[j]` is its exact payoff
/// advantage over action `j` (zero for itself).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponseWitness {
    pub action: usize,
    pub belief: Belief,
    pub slack: Vec<Rational>,
}

/// The beliefs where action `j` strictly beats `action`, one half-space
/// `{q : (v_action - v_j) · q < 0}` per listed `j`, jointly cover the
/// belief simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbrCertificate {
    pub action: usize,
    pub covering: Vec<(usize, OpenHalfSpace)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BestResponse {
    Witness(BestResponseWitness),
    Never(NbrCertificate),
}

impl BestResponse {
    pub fn is_never(&self) -> bool {
        matches!(self, BestResponse::Never(_))
    }
}

fn belief_constraints(m: usize) -> (Vec<Constraint>, Vec<usize>) {
    (vec![lp::simplex_equality(m)], (0..m).collect())
}

/// Searches the belief simplex for a belief against which `i` is a (weak)
/// best response; otherwise certifies that it never is one.
pub fn best_response_belief(g: &Game, player: Player, i: usize) -> Result<BestResponse> {
    g.check_action(player, i)?;
    let vectors = g.payoff_vectors(player);
    let m = g.num_actions(player.other());
    let (mut constraints, nonneg) = belief_constraints(m);
    let diffs: Vec<(usize, Point)> =
        (0..vectors.len()).filter(|&j| j != i).map(|j| (j, vectors[i].sub(&vectors[j]))).collect();
    constraints.extend(diffs.iter().map(|(_, d)| Constraint::ge(d.clone(), Rational::zero())));
    match lp::lp_feasible_point(m, &constraints, &nonneg)? {
        Some(q) => {
            let slack = vectors.iter().map(|v| vectors[i].sub(v).dot(&q)).collect();
            Ok(BestResponse::Witness(BestResponseWitness { action: i, belief: Belief::new(q.into_coords())?, slack }))
        }
        None => {
            // identical payoff vectors never beat `i`; their half-spaces are empty
            let covering = diffs
                .into_iter()
                .filter(|(_, d)| !d.is_zero())
                .map(|(j, d)| OpenHalfSpace::homogeneous(d).map(|h| (j, h)))
                .collect::<Result<_>>()?;
            Ok(BestResponse::Never(NbrCertificate { action: i, covering }))
        }
    }
}

pub fn verify_witness(g: &Game, player: Player, w: &BestResponseWitness) -> Result<()> {
    g.check_action(player, w.action)?;
    let vectors = g.payoff_vectors(player);
    if w.belief.probs().dim() != g.num_actions(player.other()) || w.slack.len() != vectors.len() {
        return Err(Error::InvalidCertificate("witness dimensions".into()));
    }
    for (j, v) in vectors.iter().enumerate() {
        let s = vectors[w.action].sub(v).dot(w.belief.probs());
        if s != w.slack[j] || s.is_negative() {
            return Err(Error::InvalidCertificate(format!("slack against action {j}")));
        }
    }
    Ok(())
}

/// Checks that every half-space is the one induced by its action and that
/// their union covers the belief simplex.
pub fn verify_nbr(g: &Game, player: Player, cert: &NbrCertificate) -> Result<()> {
    g.check_action(player, cert.action)?;
    let vectors = g.payoff_vectors(player);
    for (j, h) in &cert.covering {
        g.check_action(player, *j)?;
        if *j == cert.action || !h.is_homogeneous() || *h.normal() != vectors[cert.action].sub(&vectors[*j]) {
            return Err(Error::InvalidCertificate(format!("half-space for action {j} does not match payoffs")));
        }
    }
    let m = g.num_actions(player.other());
    let hs: Vec<OpenHalfSpace> = cert.covering.iter().map(|(_, h)| h.clone()).collect();
    if !union_covers(&hs, &Polytope::simplex(m))?.is_covered() {
        return Err(Error::InvalidCertificate("half-spaces do not cover the belief simplex".into()));
    }
    Ok(())
}

/// A working entry of the merge loop: a homogeneous half-space and the
/// convex weights over the original actions whose payoff difference it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeEntry {
    pub halfspace: OpenHalfSpace,
    pub weights: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeStep {
    /// The remaining half-spaces already covered the simplex.
    Discarded,
    Merged { lambda: Rational },
}

/// Each merge step with the working list after it.
pub type MergeLog = Vec<(MergeStep, Vec<MergeEntry>)>;

/// Runs the merge loop and returns the resulting certificate together with
/// the working list after every step.
pub fn constructive_mixture_with_log(g: &Game, player: Player, cert: &NbrCertificate) -> Result<(DominanceCertificate, MergeLog)> {
    verify_nbr(g, player, cert)?;
    let n = g.num_actions(player);
    let m = g.num_actions(player.other());
    let simplex = Polytope::simplex(m);
    let mut work: Vec<MergeEntry> = cert
        .covering
        .iter()
        .map(|(j, h)| {
            let mut weights = vec![Rational::zero(); n];
            weights[*j] = Rational::one();
            MergeEntry { halfspace: h.clone(), weights }
        })
        .collect();
    let mut log = Vec::new();
    while work.len() > 1 {
        // beliefs not covered by the rest; closed complements of open half-spaces
        let uncovered: Vec<Inequality> =
            work[2..].iter().map(|e| Inequality::new(e.halfspace.normal().neg(), Rational::zero())).collect();
        let step = match Polytope::simplex_with(m, uncovered) {
            Err(Error::InfeasiblePolytope) => {
                work.drain(..2);
                MergeStep::Discarded
            }
            Err(e) => return Err(e),
            Ok(region) => {
                let (lambda, merged) = rotation_merge(&work[0].halfspace, &work[1].halfspace, &region)?;
                let rest = Rational::one() - &lambda;
                let weights = work[0].weights.iter().zip(&work[1].weights).map(|(a, b)| &lambda * a + &rest * b).collect();
                work.splice(..2, [MergeEntry { halfspace: merged, weights }]);
                MergeStep::Merged { lambda }
            }
        };
        log.push((step, work.clone()));
    }
    let last = work.pop().ok_or_else(|| Error::Internal("merge loop emptied the cover".into()))?;
    if !halfspace_covers(&last.halfspace, &simplex)? {
        return Err(Error::Internal("final half-space does not cover the simplex".into()));
    }
    let mixture = MixedStrategy::from_dense(&last.weights)?;
    let margin = dominance::dominance_gap(g, player, &mixture, cert.action)?;
    let out = DominanceCertificate { dominated: cert.action, mixture, margin };
    dominance::verify_certificate(g, player, &out)
        .map_err(|e| Error::Internal(format!("constructed mixture does not dominate: {e}")))?;
    Ok((out, log))
}

/// Turns a never-best-response certificate into a strictly dominating
/// mixture by repeatedly merging the first two half-spaces of the cover.
pub fn constructive_mixture_from_nbr(g: &Game, player: Player, cert: &NbrCertificate) -> Result<DominanceCertificate> {
    constructive_mixture_with_log(g, player, cert).map(|(c, _)| c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalizabilityRound {
    pub player: Player,
    pub context: Subgame,
    pub removed: Vec<usize>,
    /// Certificates in original action numbering (half-space coordinates
    /// follow the opponent's surviving actions in `context`).
    pub certificates: Vec<NbrCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalizabilityTrace {
    pub rounds: Vec<RationalizabilityRound>,
    pub survivors: Subgame,
}

fn globalize_nbr(ctx: &Subgame, player: Player, c: &NbrCertificate) -> NbrCertificate {
    NbrCertificate {
        action: ctx.global(player, c.action),
        covering: c.covering.iter().map(|(j, h)| (ctx.global(player, *j), h.clone())).collect(),
    }
}

pub fn localize_nbr(ctx: &Subgame, player: Player, c: &NbrCertificate) -> Option<NbrCertificate> {
    let covering: Option<Vec<_>> =
        c.covering.iter().map(|(j, h)| ctx.local(player, *j).map(|l| (l, h.clone()))).collect();
    Some(NbrCertificate { action: ctx.local(player, c.action)?, covering: covering? })
}

/// Alternating removal of never-best-responses, player 1 first.
pub fn iterated_rationalizability(g: &Game) -> Result<RationalizabilityTrace> {
    let (rounds, survivors) = dominance::iterate_scans(g, |sub, player, i| {
        Ok(match best_response_belief(sub, player, i)? {
            BestResponse::Never(cert) => Some(cert),
            BestResponse::Witness(_) => None,
        })
    })?;
    let rounds = rounds
        .into_iter()
        .map(|(player, context, found)| {
            let (removed, certificates) =
                found.into_iter().map(|(i, c)| (i, globalize_nbr(&context, player, &c))).unzip();
            RationalizabilityRound { player, context, removed, certificates }
        })
        .collect();
    Ok(RationalizabilityTrace { rounds, survivors })
}

/// An action removed by iterated rationalizability, with both kinds of
/// evidence (original numbering, valid in the subgame `context`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminatedAction {
    pub player: Player,
    pub context: Subgame,
    pub nbr: NbrCertificate,
    pub constructed: DominanceCertificate,
    pub reduced: DominanceCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub iesds: EliminationTrace,
    pub rationalizability: RationalizabilityTrace,
    pub eliminated: Vec<EliminatedAction>,
}

/// Runs both elimination processes, requires identical survivors, and
/// attaches to every removed action a verified never-best-response
/// certificate and a verified dominating mixture built from it.
pub fn equivalence_report(g: &Game) -> Result<EquivalenceReport> {
    let iesds = dominance::iesds(g)?;
    let rationalizability = iterated_rationalizability(g)?;
    if iesds.survivors != rationalizability.survivors {
        return Err(Error::Internal(format!(
            "survivors differ: dominance {:?} vs rationalizability {:?}",
            iesds.survivors, rationalizability.survivors
        )));
    }
    let mut eliminated = Vec::new();
    for round in &rationalizability.rounds {
        let sub = round.context.game(g);
        for cert in &round.certificates {
            let local = localize_nbr(&round.context, round.player, cert)
                .ok_or_else(|| Error::Internal("certificate outside its context".into()))?;
            verify_nbr(&sub, round.player, &local)?;
            let constructed = constructive_mixture_from_nbr(&sub, round.player, &local)?;
            let reduced = dominance::reduce_support(&sub, round.player, &constructed)?;
            eliminated.push(EliminatedAction {
                player: round.player,
                context: round.context.clone(),
                nbr: cert.clone(),
                constructed: round.context.globalize_certificate(round.player, &constructed),
                reduced: round.context.globalize_certificate(round.player, &reduced),
            });
        }
    }
    Ok(EquivalenceReport { iesds, rationalizability, eliminated })
}
