#![allow(dead_code)]

use stratdom::dominance::{self, iesds};
use stratdom::instances::{random_game, Lcg};
use stratdom::subgame::Subgame;
use stratdom::{Game, Player};

/// The `k`-th game of the seeded random ensemble: up to 8 row actions, up to
/// 4 column actions, integer payoffs in [-9, 9].
pub fn ensemble_game(k: u64) -> Game {
    let mut rng = Lcg::new(0x5eed_0000 + k);
    let n = 1 + rng.below(8);
    let m = 1 + rng.below(4);
    random_game(n, m, k, -9, 9).expect("valid generator arguments")
}

/// Eliminates one dominated action at a time, chosen uniformly among the
/// currently dominated actions of both players, and returns the survivors.
pub fn random_order_survivors(g: &Game, rng: &mut Lcg) -> Subgame {
    let mut rows: Vec<usize> = (0..g.num_actions(Player::Row)).collect();
    let mut cols: Vec<usize> = (0..g.num_actions(Player::Col)).collect();
    loop {
        let sub = Subgame::new(rows.clone(), cols.clone());
        let local = sub.game(g);
        let mut candidates: Vec<(Player, usize)> = Player::BOTH
            .iter()
            .flat_map(|&p| (0..local.num_actions(p)).map(move |i| (p, i)))
            .collect();
        rng.shuffle(&mut candidates);
        let hit = candidates.into_iter().find(|&(p, i)| {
            dominance::dominating_mixture(&local, p, i).expect("valid action").is_some()
        });
        match hit {
            None => return sub,
            Some((Player::Row, i)) => {
                rows.remove(i);
            }
            Some((Player::Col, i)) => {
                cols.remove(i);
            }
        }
    }
}

pub fn iesds_survivors(g: &Game) -> Subgame {
    iesds(g).expect("iesds runs").survivors
}

pub fn dominated_set(g: &Game, player: Player) -> Vec<usize> {
    (0..g.num_actions(player))
        .filter(|&i| dominance::dominating_mixture(g, player, i).expect("valid action").is_some())
        .collect()
}
