use crate::dominance::DominanceCertificate;
use crate::game::{Game, MixedStrategy, Player};

/// Surviving row and column indices of a game (original numbering, sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgame {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Subgame {
    pub fn full(g: &Game) -> Self {
        Subgame { rows: (0..g.num_actions(Player::Row)).collect(), cols: (0..g.num_actions(Player::Col)).collect() }
    }

    /// Indices are sorted and deduplicated.
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Self {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        Subgame { rows, cols }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn actions(&self, player: Player) -> &[usize] {
        match player {
            Player::Row => &self.rows,
            Player::Col => &self.cols,
        }
    }

    pub fn fits(&self, g: &Game) -> bool {
        !self.rows.is_empty()
            && !self.cols.is_empty()
            && self.rows.iter().all(|&i| i < g.num_actions(Player::Row))
            && self.cols.iter().all(|&j| j < g.num_actions(Player::Col))
    }

    pub fn game(&self, g: &Game) -> Game {
        g.restrict(&self.rows, &self.cols)
    }

    pub fn global(&self, player: Player, local: usize) -> usize {
        self.actions(player)[local]
    }

    pub fn local(&self, player: Player, global: usize) -> Option<usize> {
        self.actions(player).iter().position(|&a| a == global)
    }

    pub(crate) fn remove(&mut self, player: Player, removed: &[usize]) {
        let list = match player {
            Player::Row => &mut self.rows,
            Player::Col => &mut self.cols,
        };
        list.retain(|a| !removed.contains(a));
    }

    pub fn globalize_mixture(&self, player: Player, m: &MixedStrategy) -> MixedStrategy {
        MixedStrategy::new(m.weights().iter().map(|(i, w)| (self.global(player, *i), w.clone())).collect())
            .expect("relabelling preserves validity")
    }

    pub fn localize_mixture(&self, player: Player, m: &MixedStrategy) -> Option<MixedStrategy> {
        let weights: Option<Vec<_>> =
            m.weights().iter().map(|(i, w)| self.local(player, *i).map(|l| (l, w.clone()))).collect();
        MixedStrategy::new(weights?).ok()
    }

    pub fn globalize_certificate(&self, player: Player, c: &DominanceCertificate) -> DominanceCertificate {
        DominanceCertificate {
            dominated: self.global(player, c.dominated),
            mixture: self.globalize_mixture(player, &c.mixture),
            margin: c.margin.clone(),
        }
    }

    pub fn localize_certificate(&self, player: Player, c: &DominanceCertificate) -> Option<DominanceCertificate> {
        Some(DominanceCertificate {
            dominated: self.local(player, c.dominated)?,
            mixture: self.localize_mixture(player, &c.mixture)?,
            margin: c.margin.clone(),
        })
    }
}
