//! JSON encoding of analyses and the certificate re-verification used by
//! `stratdom verify`.
//!
//! Actions are referred to by name. Every certificate object carries a
//! `kind`, the `player` (1 or 2) and a `context` naming the surviving rows
//! and columns of the subgame it is valid in; rationals are `"p/q"`
//! strings.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::dominance::{self, pure_dominates, DominanceCertificate, EliminationTrace};
use crate::error::{Error, Result};
use crate::game::{Belief, Game, MixedStrategy, Player};
use crate::geometry::OpenHalfSpace;
use crate::oracle::{self, GridSpec};
use crate::point::Point;
use crate::rational::{self, Rational};
use crate::rationalizability::{self, BestResponse, BestResponseWitness, EquivalenceReport, NbrCertificate, RationalizabilityTrace};
use crate::subgame::Subgame;

pub const DOMINANCE_KIND: &str = "dominance_certificate";
pub const NBR_KIND: &str = "nbr_certificate";
pub const WITNESS_KIND: &str = "best_response_witness";

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

pub fn envelope(command: &str, input: &[u8], status: &str, results: Value) -> Value {
    json!({
        "command": command,
        "input_digest": digest(input),
        "status": status,
        "results": results,
    })
}

fn rat(r: &Rational) -> Value {
    Value::String(rational::to_string(r))
}

fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn names(g: &Game, player: Player, idx: &[usize]) -> Value {
    Value::Array(idx.iter().map(|&i| Value::String(g.actions(player)[i].clone())).collect())
}

fn name(g: &Game, player: Player, i: usize) -> Value {
    Value::String(g.actions(player)[i].clone())
}

pub fn context(g: &Game, ctx: &Subgame) -> Value {
    json!({ "rows": names(g, Player::Row, ctx.rows()), "cols": names(g, Player::Col, ctx.cols()) })
}

fn mixture(g: &Game, player: Player, m: &MixedStrategy) -> Value {
    Value::Array(m.weights().iter().map(|(i, w)| json!({ "action": name(g, player, *i), "weight": rat(w) })).collect())
}

/// Certificate in original numbering, valid in `ctx`.
pub fn dominance_certificate(g: &Game, player: Player, ctx: &Subgame, c: &DominanceCertificate) -> Value {
    json!({
        "kind": DOMINANCE_KIND,
        "player": player.number(),
        "context": context(g, ctx),
        "dominated": name(g, player, c.dominated),
        "mixture": mixture(g, player, &c.mixture),
        "support_size": c.support_size(),
        "margin": rat(&c.margin),
    })
}

pub fn nbr_certificate(g: &Game, player: Player, ctx: &Subgame, c: &NbrCertificate) -> Value {
    let covering: Vec<Value> = c
        .covering
        .iter()
        .map(|(j, h)| json!({ "against": name(g, player, *j), "normal": rats(h.normal()), "offset": rat(h.offset()) }))
        .collect();
    json!({
        "kind": NBR_KIND,
        "player": player.number(),
        "context": context(g, ctx),
        "action": name(g, player, c.action),
        "covering": covering,
    })
}

/// Witness in original numbering: `slack` follows the player's actions in
/// `ctx`, `belief` the opponent's.
pub fn witness(g: &Game, player: Player, ctx: &Subgame, w: &BestResponseWitness) -> Value {
    json!({
        "kind": WITNESS_KIND,
        "player": player.number(),
        "context": context(g, ctx),
        "action": name(g, player, w.action),
        "belief": rats(w.belief.probs()),
        "slack": rats(&w.slack),
    })
}

pub fn survivors(g: &Game, s: &Subgame) -> Value {
    context(g, s)
}

pub fn elimination_trace(g: &Game, t: &EliminationTrace) -> Value {
    let rounds: Vec<Value> = t
        .rounds
        .iter()
        .map(|r| {
            json!({
                "player": r.player.number(),
                "removed": names(g, r.player, &r.removed),
                "certificates": r.certificates.iter().map(|c| dominance_certificate(g, r.player, &r.context, c)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "rounds": rounds, "survivors": survivors(g, &t.survivors) })
}

pub fn rationalizability_trace(g: &Game, t: &RationalizabilityTrace) -> Value {
    let rounds: Vec<Value> = t
        .rounds
        .iter()
        .map(|r| {
            json!({
                "player": r.player.number(),
                "removed": names(g, r.player, &r.removed),
                "certificates": r.certificates.iter().map(|c| nbr_certificate(g, r.player, &r.context, c)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "rounds": rounds, "survivors": survivors(g, &t.survivors) })
}

pub fn equivalence(g: &Game, r: &EquivalenceReport) -> Value {
    let eliminated: Vec<Value> = r
        .eliminated
        .iter()
        .map(|e| {
            json!({
                "player": e.player.number(),
                "action": name(g, e.player, e.nbr.action),
                "nbr": nbr_certificate(g, e.player, &e.context, &e.nbr),
                "constructed": dominance_certificate(g, e.player, &e.context, &e.constructed),
                "reduced": dominance_certificate(g, e.player, &e.context, &e.reduced),
            })
        })
        .collect();
    json!({
        "survivors_equal": r.iesds.survivors == r.rationalizability.survivors,
        "eliminated": eliminated,
    })
}

/// Grid used when re-verifying certificates: finer for few opponent actions.
pub fn verification_grid(opponent_actions: usize) -> GridSpec {
    let k = match opponent_actions {
        0..=4 => 12,
        5..=6 => 6,
        _ => 2,
    };
    GridSpec::new(k).expect("positive resolution")
}

/// Outcome of re-verifying one embedded certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub path: String,
    pub kind: String,
    pub result: std::result::Result<(), String>,
}

/// Finds every certificate object in `report` and re-verifies it against
/// `g`.
pub fn verify_report(report: &Value, g: &Game) -> Vec<Check> {
    let mut checks = Vec::new();
    walk(report, "$".to_string(), &mut |path, obj| {
        let Some(kind) = obj.get("kind").and_then(Value::as_str) else { return };
        if ![DOMINANCE_KIND, NBR_KIND, WITNESS_KIND].contains(&kind) {
            return;
        }
        let result = check_object(kind, obj, g).map_err(|e| e.to_string());
        checks.push(Check { path: path.to_string(), kind: kind.to_string(), result });
    });
    checks
}

fn walk(v: &Value, path: String, f: &mut impl FnMut(&str, &Map<String, Value>)) {
    match v {
        Value::Object(obj) => {
            f(&path, obj);
            for (k, child) in obj {
                walk(child, format!("{path}.{k}"), f);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                walk(child, format!("{path}[{i}]"), f);
            }
        }
        _ => {}
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn rat_value(v: &Value) -> Result<Rational> {
    v.as_str().ok_or_else(|| bad("rational must be a string")).and_then(rational::parse)
}

fn rat_array(v: &Value) -> Result<Vec<Rational>> {
    v.as_array().ok_or_else(|| bad("expected an array")).and_then(|a| a.iter().map(rat_value).collect())
}

fn action(g: &Game, player: Player, v: &Value) -> Result<usize> {
    let n = v.as_str().ok_or_else(|| bad("action must be a name"))?;
    g.action_index(player, n).ok_or_else(|| bad(format!("unknown action {n:?}")))
}

fn parse_context(g: &Game, obj: &Map<String, Value>) -> Result<Subgame> {
    let ctx = field(obj, "context")?;
    let list = |key: &str, player: Player| -> Result<Vec<usize>> {
        ctx.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("context needs {key:?}")))?
            .iter()
            .map(|v| action(g, player, v))
            .collect()
    };
    let sub = Subgame::new(list("rows", Player::Row)?, list("cols", Player::Col)?);
    if !sub.fits(g) {
        return Err(bad("empty context"));
    }
    Ok(sub)
}

fn parse_player(obj: &Map<String, Value>) -> Result<Player> {
    let n = field(obj, "player")?.as_u64().ok_or_else(|| bad("player must be 1 or 2"))?;
    Player::from_number(u8::try_from(n).map_err(|_| bad("player must be 1 or 2"))?)
}

/// Rebuilds a dominance certificate (original numbering) from its JSON.
pub fn parse_dominance(g: &Game, obj: &Map<String, Value>) -> Result<(Player, Subgame, DominanceCertificate)> {
    let player = parse_player(obj)?;
    let ctx = parse_context(g, obj)?;
    let dominated = action(g, player, field(obj, "dominated")?)?;
    let weights = field(obj, "mixture")?
        .as_array()
        .ok_or_else(|| bad("mixture must be an array"))?
        .iter()
        .map(|e| Ok((action(g, player, field_of(e, "action")?)?, rat_value(field_of(e, "weight")?)?)))
        .collect::<Result<Vec<_>>>()?;
    let mixture = MixedStrategy::new(weights)?;
    let margin = rat_value(field(obj, "margin")?)?;
    Ok((player, ctx, DominanceCertificate { dominated, mixture, margin }))
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn check_object(kind: &str, obj: &Map<String, Value>, g: &Game) -> Result<()> {
    match kind {
        DOMINANCE_KIND => {
            let (player, ctx, cert) = parse_dominance(g, obj)?;
            let sub = ctx.game(g);
            let local = ctx.localize_certificate(player, &cert).ok_or_else(|| bad("certificate outside its context"))?;
            crate::dominance::verify_certificate(&sub, player, &local)?;
            let grid = verification_grid(sub.num_actions(player.other()));
            if !oracle::verify_dominance_exhaustive(&sub, player, &local, grid) {
                return Err(bad("exhaustive vertex/grid check failed"));
            }
            Ok(())
        }
        NBR_KIND => {
            let player = parse_player(obj)?;
            let ctx = parse_context(g, obj)?;
            let act = action(g, player, field(obj, "action")?)?;
            let covering = field(obj, "covering")?
                .as_array()
                .ok_or_else(|| bad("covering must be an array"))?
                .iter()
                .map(|e| {
                    let j = action(g, player, field_of(e, "against")?)?;
                    let h = OpenHalfSpace::new(Point::new(rat_array(field_of(e, "normal")?)?), rat_value(field_of(e, "offset")?)?)?;
                    Ok((j, h))
                })
                .collect::<Result<Vec<_>>>()?;
            let cert = NbrCertificate { action: act, covering };
            let local = rationalizability::localize_nbr(&ctx, player, &cert).ok_or_else(|| bad("certificate outside its context"))?;
            rationalizability::verify_nbr(&ctx.game(g), player, &local)
        }
        WITNESS_KIND => {
            let player = parse_player(obj)?;
            let ctx = parse_context(g, obj)?;
            let act = action(g, player, field(obj, "action")?)?;
            let w = BestResponseWitness {
                action: ctx.local(player, act).ok_or_else(|| bad("witness outside its context"))?,
                belief: Belief::new(rat_array(field(obj, "belief")?)?)?,
                slack: rat_array(field(obj, "slack")?)?,
            };
            rationalizability::verify_witness(&ctx.game(g), player, &w)
        }
        other => Err(bad(format!("unknown kind {other:?}"))),
    }
}

fn bound(g: &Game, player: Player) -> usize {
    (g.num_actions(player) - 1).min(g.num_actions(player.other()))
}

/// Per-action dominance and best-response evidence for both players, plus
/// both elimination traces and their equivalence.
pub fn analyze(g: &Game) -> Result<Value> {
    let full = Subgame::full(g);
    let mut players = Vec::new();
    for player in Player::BOTH {
        let mut actions = Vec::new();
        for i in 0..g.num_actions(player) {
            let pure_by: Vec<Value> = (0..g.num_actions(player))
                .filter(|&j| j != i)
                .filter_map(|j| match pure_dominates(g, player, i, j) {
                    Ok(true) => Some(Ok(Value::String(g.actions(player)[j].clone()))),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<_>>()?;
            let mut entry = json!({ "action": g.actions(player)[i], "pure_dominated_by": pure_by });
            let fields = entry.as_object_mut().expect("object");
            match dominance::dominating_mixture(g, player, i)? {
                Some(cert) => {
                    let reduced = dominance::reduce_support(g, player, &cert)?;
                    fields.insert("dominated".into(), Value::Bool(true));
                    fields.insert("certificate".into(), dominance_certificate(g, player, &full, &cert));
                    fields.insert("reduced".into(), dominance_certificate(g, player, &full, &reduced));
                }
                None => {
                    fields.insert("dominated".into(), Value::Bool(false));
                }
            }
            match rationalizability::best_response_belief(g, player, i)? {
                BestResponse::Witness(w) => {
                    fields.insert("best_response".into(), witness(g, player, &full, &w));
                }
                BestResponse::Never(c) => {
                    fields.insert("never_best_response".into(), nbr_certificate(g, player, &full, &c));
                }
            }
            actions.push(entry);
        }
        players.push(json!({ "player": player.number(), "support_bound": bound(g, player), "actions": actions }));
    }
    let eq = rationalizability::equivalence_report(g)?;
    Ok(json!({
        "players": players,
        "iesds": elimination_trace(g, &eq.iesds),
        "rationalizability": rationalizability_trace(g, &eq.rationalizability),
        "equivalence": equivalence(g, &eq),
    }))
}

/// Best-response witness or never-best-response certificate (with the
/// dominating mixture built from it) for every action.
pub fn rationalize(g: &Game) -> Result<Value> {
    let full = Subgame::full(g);
    let mut actions = Vec::new();
    for player in Player::BOTH {
        for i in 0..g.num_actions(player) {
            let entry = match rationalizability::best_response_belief(g, player, i)? {
                BestResponse::Witness(w) => json!({
                    "player": player.number(),
                    "action": g.actions(player)[i],
                    "status": "best_response",
                    "witness": witness(g, player, &full, &w),
                }),
                BestResponse::Never(c) => {
                    let d = rationalizability::constructive_mixture_from_nbr(g, player, &c)?;
                    json!({
                        "player": player.number(),
                        "action": g.actions(player)[i],
                        "status": "never_best_response",
                        "nbr": nbr_certificate(g, player, &full, &c),
                        "dominance": dominance_certificate(g, player, &full, &d),
                    })
                }
            };
            actions.push(entry);
        }
    }
    let trace = rationalizability::iterated_rationalizability(g)?;
    Ok(json!({ "actions": actions, "iterated": rationalizability_trace(g, &trace) }))
}

/// Dominance verdict for one action; `status` is `dominated` or
/// `not_dominated`.
pub fn dominate(g: &Game, player: Player, i: usize) -> Result<(&'static str, Value)> {
    g.check_action(player, i)?;
    let full = Subgame::full(g);
    let mut results = json!({
        "player": player.number(),
        "action": g.actions(player)[i],
        "support_bound": bound(g, player),
    });
    let fields = results.as_object_mut().expect("object");
    match dominance::dominating_mixture(g, player, i)? {
        Some(cert) => {
            let reduced = dominance::reduce_support(g, player, &cert)?;
            fields.insert("certificate".into(), dominance_certificate(g, player, &full, &cert));
            fields.insert("reduced".into(), dominance_certificate(g, player, &full, &reduced));
            Ok(("dominated", results))
        }
        None => {
            if let BestResponse::Witness(w) = rationalizability::best_response_belief(g, player, i)? {
                fields.insert("best_response".into(), witness(g, player, &full, &w));
            }
            Ok(("not_dominated", results))
        }
    }
}
