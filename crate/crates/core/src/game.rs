//! Finite two-player games with exact payoffs.

use std::borrow::Cow;
use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::{self, Rational};

/// Player 1 chooses rows, player 2 chooses columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Player {
    Row,
    Col,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::Row, Player::Col];

    pub fn number(self) -> u8 {
        match self {
            Player::Row => 1,
            Player::Col => 2,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Player::Row),
            2 => Ok(Player::Col),
            _ => Err(Error::Game(format!("player must be 1 or 2, got {n}"))),
        }
    }

    pub fn other(self) -> Self {
        match self {
            Player::Row => Player::Col,
            Player::Col => Player::Row,
        }
    }
}

impl TryFrom<u8> for Player {
    type Error = Error;
    fn try_from(n: u8) -> Result<Self> {
        Player::from_number(n)
    }
}

impl From<Player> for u8 {
    fn from(p: Player) -> u8 {
        p.number()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    title: Option<String>,
    row_actions: Vec<String>,
    col_actions: Vec<String>,
    row_payoffs: Vec<Vec<Rational>>,
    col_payoffs: Vec<Vec<Rational>>,
}

fn check_names(names: &[String], who: &str) -> Result<()> {
    if names.is_empty() {
        return Err(Error::Game(format!("{who} needs at least one action")));
    }
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::Game(format!("duplicate {who} action {n:?}")));
        }
    }
    Ok(())
}

fn check_shape(m: &[Vec<Rational>], rows: usize, cols: usize, which: &str) -> Result<()> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Game(format!("{which} must be {rows}x{cols}")));
    }
    Ok(())
}

impl Game {
    pub fn new(
        title: Option<String>,
        row_actions: Vec<String>,
        col_actions: Vec<String>,
        row_payoffs: Vec<Vec<Rational>>,
        col_payoffs: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        check_names(&row_actions, "row")?;
        check_names(&col_actions, "column")?;
        let (n, m) = (row_actions.len(), col_actions.len());
        check_shape(&row_payoffs, n, m, "row_payoffs")?;
        check_shape(&col_payoffs, n, m, "col_payoffs")?;
        Ok(Game { title, row_actions, col_actions, row_payoffs, col_payoffs })
    }

    /// Game from integer matrices with generated names `r1..`, `c1..`.
    pub fn from_ints(row_payoffs: &[&[i64]], col_payoffs: &[&[i64]]) -> Result<Self> {
        let conv = |m: &[&[i64]]| -> Vec<Vec<Rational>> {
            m.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect()
        };
        let n = row_payoffs.len();
        let m = row_payoffs.first().map_or(0, |r| r.len());
        Game::new(
            None,
            (1..=n).map(|i| format!("r{i}")).collect(),
            (1..=m).map(|j| format!("c{j}")).collect(),
            conv(row_payoffs),
            conv(col_payoffs),
        )
    }

    pub fn title(&self) -> Option<&str> {
        self.title.as_deref()
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn row_actions(&self) -> &[String] {
        &self.row_actions
    }

    pub fn col_actions(&self) -> &[String] {
        &self.col_actions
    }

    pub fn row_payoffs(&self) -> &[Vec<Rational>] {
        &self.row_payoffs
    }

    pub fn col_payoffs(&self) -> &[Vec<Rational>] {
        &self.col_payoffs
    }

    pub fn actions(&self, player: Player) -> &[String] {
        match player {
            Player::Row => &self.row_actions,
            Player::Col => &self.col_actions,
        }
    }

    pub fn num_actions(&self, player: Player) -> usize {
        self.actions(player).len()
    }

    pub fn action_index(&self, player: Player, name: &str) -> Option<usize> {
        self.actions(player).iter().position(|a| a == name)
    }

    pub(crate) fn check_action(&self, player: Player, index: usize) -> Result<()> {
        let len = self.num_actions(player);
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
        Ok(())
    }

    /// Player 1 and player 2 swap roles.
    pub fn transpose(&self) -> Game {
        Game {
            title: self.title.clone(),
            row_actions: self.col_actions.clone(),
            col_actions: self.row_actions.clone(),
            row_payoffs: transpose_matrix(&self.col_payoffs),
            col_payoffs: transpose_matrix(&self.row_payoffs),
        }
    }

    /// This game seen from `player`, who becomes the row player.
    pub fn oriented(&self, player: Player) -> Cow<'_, Game> {
        match player {
            Player::Row => Cow::Borrowed(self),
            Player::Col => Cow::Owned(self.transpose()),
        }
    }

    /// The subgame on the given (original) row and column indices.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Game {
        let pick = |m: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
            rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect()
        };
        Game {
            title: self.title.clone(),
            row_actions: rows.iter().map(|&i| self.row_actions[i].clone()).collect(),
            col_actions: cols.iter().map(|&j| self.col_actions[j].clone()).collect(),
            row_payoffs: pick(&self.row_payoffs),
            col_payoffs: pick(&self.col_payoffs),
        }
    }

    /// Payoff vectors of every action of `player`, indexed by the opponent's
    /// actions.
    pub fn payoff_vectors(&self, player: Player) -> Vec<Point> {
        match player {
            Player::Row => self.row_payoffs.iter().map(|r| Point::new(r.clone())).collect(),
            Player::Col => transpose_matrix(&self.col_payoffs).into_iter().map(Point::new).collect(),
        }
    }
}

fn transpose_matrix(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn transpose(g: &Game) -> Game {
    g.transpose()
}

/// A probability vector over the opponent's actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Belief(Point);

impl Belief {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() || !rational::is_probability_vector(&probs) {
            return Err(Error::InvalidWeights("belief must be a probability vector".into()));
        }
        Ok(Belief(Point::new(probs)))
    }

    pub fn point_mass(dim: usize, k: usize) -> Self {
        Belief(Point::unit(dim, k))
    }

    pub fn probs(&self) -> &Point {
        &self.0
    }
}

/// Probability weights over a support of one player's actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy {
    weights: Vec<(usize, Rational)>,
}

impl MixedStrategy {
    /// Weights must be positive, sum to one, and have distinct indices.
    /// Entries are stored sorted by action index.
    pub fn new(mut weights: Vec<(usize, Rational)>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidMixture(m.into()));
        if weights.is_empty() {
            return bad("empty support");
        }
        if weights.iter().any(|(_, w)| !w.is_positive()) {
            return bad("weights must be positive");
        }
        if !rational::sum(weights.iter().map(|(_, w)| w)).is_one() {
            return bad("weights must sum to 1");
        }
        weights.sort_by_key(|(i, _)| *i);
        if weights.windows(2).any(|w| w[0].0 == w[1].0) {
            return bad("repeated action");
        }
        Ok(MixedStrategy { weights })
    }

    /// Builds a mixture from a dense weight vector, dropping zero entries.
    pub fn from_dense(dense: &[Rational]) -> Result<Self> {
        Self::new(dense.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(i, w)| (i, w.clone())).collect())
    }

    pub fn pure(action: usize) -> Self {
        MixedStrategy { weights: vec![(action, Rational::one())] }
    }

    pub fn weights(&self) -> &[(usize, Rational)] {
        &self.weights
    }

    pub fn support(&self) -> Vec<usize> {
        self.weights.iter().map(|(i, _)| *i).collect()
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_of(&self, action: usize) -> Rational {
        self.weights.iter().find(|(i, _)| *i == action).map_or_else(Rational::zero, |(_, w)| w.clone())
    }

    pub fn check_for(&self, g: &Game, player: Player) -> Result<()> {
        for (i, _) in &self.weights {
            g.check_action(player, *i)?;
        }
        Ok(())
    }

    /// Removes `action` from the support and renormalizes the rest; `None`
    /// if the mixture is the pure strategy `action`.
    pub fn fold_out(&self, action: usize) -> Option<MixedStrategy> {
        let w = self.weight_of(action);
        if w.is_zero() {
            return Some(self.clone());
        }
        let rest = Rational::one() - w;
        if rest.is_zero() {
            return None;
        }
        let weights = self.weights.iter().filter(|(i, _)| *i != action).map(|(i, x)| (*i, x / &rest)).collect();
        Some(MixedStrategy { weights })
    }

    /// Payoff vector `Σ p_j v_j` against each opponent action.
    pub fn payoff_vector(&self, vectors: &[Point]) -> Point {
        let dim = vectors.first().map_or(0, Point::dim);
        Point::combination(dim, self.weights.iter().map(|(i, _)| &vectors[*i]), self.weights.iter().map(|(_, w)| w))
    }
}

pub type PayoffVector = Point;

/// Row of player 1's matrix, or column of player 2's.
pub fn payoff_vector(g: &Game, player: Player, action: usize) -> Result<PayoffVector> {
    g.check_action(player, action)?;
    Ok(match player {
        Player::Row => Point::new(g.row_payoffs[action].clone()),
        Player::Col => Point::new(g.col_payoffs.iter().map(|r| r[action].clone()).collect()),
    })
}

pub fn expected_payoff(g: &Game, player: Player, action: usize, belief: &Belief) -> Result<Rational> {
    let v = payoff_vector(g, player, action)?;
    let m = g.num_actions(player.other());
    if belief.probs().dim() != m {
        return Err(Error::DimensionMismatch { expected: m, found: belief.probs().dim() });
    }
    Ok(v.dot(belief.probs()))
}

/// Shifts every payoff of `player` by `c = 1 + max(0, -min entry)`.
pub fn normalize_positive(g: &Game, player: Player) -> (Game, Rational) {
    let matrix = match player {
        Player::Row => &g.row_payoffs,
        Player::Col => &g.col_payoffs,
    };
    let min = matrix.iter().flatten().min().cloned().unwrap_or_else(Rational::zero);
    let c = Rational::one() + if min.is_negative() { -min } else { Rational::zero() };
    let shifted: Vec<Vec<Rational>> = matrix.iter().map(|r| r.iter().map(|x| x + &c).collect()).collect();
    let mut out = g.clone();
    match player {
        Player::Row => out.row_payoffs = shifted,
        Player::Col => out.col_payoffs = shifted,
    }
    (out, c)
}

#[derive(Serialize)]
struct GameJson<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    title: Option<&'a str>,
    row_actions: &'a [String],
    col_actions: &'a [String],
    row_payoffs: Vec<Vec<String>>,
    col_payoffs: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameInput {
    #[serde(default)]
    title: Option<String>,
    row_actions: Vec<String>,
    col_actions: Vec<String>,
    row_payoffs: Vec<Vec<Value>>,
    col_payoffs: Vec<Vec<Value>>,
}

fn numeral_matrix(m: &[Vec<Value>]) -> Result<Vec<Vec<Rational>>> {
    m.iter().map(|r| r.iter().map(rational::from_json).collect()).collect()
}

/// Parses the game JSON format. Numerals may be JSON numbers, decimal
/// strings or `"p/q"` strings; all are converted exactly.
pub fn parse_game(text: &[u8]) -> Result<Game> {
    let input: GameInput = serde_json::from_slice(text)?;
    Game::new(
        input.title,
        input.row_actions,
        input.col_actions,
        numeral_matrix(&input.row_payoffs)?,
        numeral_matrix(&input.col_payoffs)?,
    )
}

/// Canonical JSON with every payoff written as a `"p/q"` string.
pub fn serialize_game(g: &Game) -> String {
    let strings =
        |m: &[Vec<Rational>]| -> Vec<Vec<String>> { m.iter().map(|r| r.iter().map(rational::to_string).collect()).collect() };
    let json = GameJson {
        title: g.title.as_deref(),
        row_actions: &g.row_actions,
        col_actions: &g.col_actions,
        row_payoffs: strings(&g.row_payoffs),
        col_payoffs: strings(&g.col_payoffs),
    };
    let mut out = serde_json::to_string_pretty(&json).expect("game serializes");
    out.push('\n');
    out
}
