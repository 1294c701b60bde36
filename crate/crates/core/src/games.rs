//! Impartial games under normal play (the player who makes the last move wins).
//!
//! Multi-heap Nim is solved by the nim-sum, single-pile subtraction games by
//! the mex recursion over Grundy values. "First" always names the player
//! about to move from the analysed position.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Winner under perfect play; `First` is the player to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    First,
    Second,
}

impl Outcome {
    pub fn from_grundy(grundy: u64) -> Self {
        if grundy == 0 {
            Outcome::Second
        } else {
            Outcome::First
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::First => f.write_str("First"),
            Outcome::Second => f.write_str("Second"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameAnalysis<M> {
    pub outcome: Outcome,
    pub grundy: u64,
    /// Every move reaching a zero-Grundy position, in tie-break order.
    pub optimal_moves: Vec<M>,
}

/// Nim position. Heaps are addressed by index and emptied heaps stay in place.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Heaps(pub Vec<u64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NimMove {
    pub heap: usize,
    pub take: u64,
}

impl Heaps {
    pub fn new(counts: impl Into<Vec<u64>>) -> Self {
        Heaps(counts.into())
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_terminal(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn nim_sum(&self) -> u64 {
        nim_sum(self)
    }

    /// All legal moves, ordered by heap index then by amount taken.
    pub fn legal_moves(&self) -> impl Iterator<Item = NimMove> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(heap, &count)| (1..=count).map(move |take| NimMove { heap, take }))
    }
}

pub fn nim_sum(heaps: &Heaps) -> u64 {
    heaps.0.iter().fold(0, |acc, &c| acc ^ c)
}

pub fn analyze_nim(heaps: &Heaps) -> GameAnalysis<NimMove> {
    let sum = nim_sum(heaps);
    // Reducing heap c to c ^ sum zeroes the nim-sum; this is a legal move
    // exactly when c ^ sum < c.
    let optimal_moves = if sum == 0 {
        Vec::new()
    } else {
        heaps
            .0
            .iter()
            .enumerate()
            .filter_map(|(heap, &c)| {
                let target = c ^ sum;
                (target < c).then(|| NimMove { heap, take: c - target })
            })
            .collect()
    };
    GameAnalysis {
        outcome: Outcome::from_grundy(sum),
        grundy: sum,
        optimal_moves,
    }
}

pub fn apply_move(heaps: &Heaps, mv: NimMove) -> Result<Heaps> {
    let count = *heaps.0.get(mv.heap).ok_or_else(|| {
        Error::IllegalMove(format!(
            "heap {} does not exist ({} heaps)",
            mv.heap,
            heaps.0.len()
        ))
    })?;
    if mv.take == 0 {
        return Err(Error::IllegalMove("must take at least one object".into()));
    }
    if mv.take > count {
        return Err(Error::IllegalMove(format!(
            "cannot take {} from heap {} holding {}",
            mv.take, mv.heap, count
        )));
    }
    let mut next = heaps.clone();
    next.0[mv.heap] -= mv.take;
    Ok(next)
}

/// The engine's deterministic choice: the first optimal move when winning,
/// otherwise one object from the lowest-index non-empty heap.
pub fn engine_nim_move(heaps: &Heaps) -> Option<NimMove> {
    analyze_nim(heaps)
        .optimal_moves
        .into_iter()
        .next()
        .or_else(|| heaps.legal_moves().next())
}

/// Single-pile subtraction game: players alternately remove (equivalently,
/// add toward the target) some `s` from `moves`; the last mover wins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtractionGame {
    target: u64,
    moves: BTreeSet<u64>,
}

impl SubtractionGame {
    pub fn new(target: u64, moves: impl IntoIterator<Item = u64>) -> Result<Self> {
        let moves: BTreeSet<u64> = moves.into_iter().collect();
        if moves.is_empty() {
            return Err(Error::invalid("move set must not be empty"));
        }
        if moves.contains(&0) {
            return Err(Error::invalid("moves must be positive"));
        }
        Ok(SubtractionGame { target, moves })
    }

    /// "Make N" with one or two objects per turn.
    pub fn make(target: u64) -> Self {
        SubtractionGame::new(target, [1, 2]).expect("static move set")
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn moves(&self) -> &BTreeSet<u64> {
        &self.moves
    }

    /// Grundy values for pile sizes `0..=n`.
    pub fn grundy_table(&self, n: u64) -> Vec<u64> {
        let mut table: Vec<u64> = Vec::with_capacity(n as usize + 1);
        let mut seen = Vec::with_capacity(self.moves.len() + 1);
        for pile in 0..=n {
            seen.clear();
            seen.extend(
                self.moves
                    .iter()
                    .take_while(|&&s| s <= pile)
                    .map(|&s| table[(pile - s) as usize]),
            );
            table.push(mex(&seen));
        }
        table
    }

    pub fn grundy(&self, pile: u64) -> u64 {
        grundy_subtraction(self, pile)
    }

    /// Analysis with `remaining` objects still to be placed.
    pub fn analyze_remaining(&self, remaining: u64) -> GameAnalysis<u64> {
        let table = self.grundy_table(remaining);
        let grundy = table[remaining as usize];
        let optimal_moves = self
            .moves
            .iter()
            .copied()
            .filter(|&s| s <= remaining && table[(remaining - s) as usize] == 0)
            .collect();
        GameAnalysis {
            outcome: Outcome::from_grundy(grundy),
            grundy,
            optimal_moves,
        }
    }

    pub fn legal_moves(&self, remaining: u64) -> impl Iterator<Item = u64> + '_ {
        self.moves.iter().copied().take_while(move |&s| s <= remaining)
    }

    /// Smallest optimal amount when winning, otherwise the smallest legal amount.
    pub fn engine_move(&self, remaining: u64) -> Option<u64> {
        self.analyze_remaining(remaining)
            .optimal_moves
            .first()
            .copied()
            .or_else(|| self.legal_moves(remaining).next())
    }
}

fn mex(values: &[u64]) -> u64 {
    (0..).find(|v| !values.contains(v)).expect("finite set")
}

pub fn grundy_subtraction(game: &SubtractionGame, pile: u64) -> u64 {
    game.grundy_table(pile)[pile as usize]
}

pub fn analyze_subtraction(game: &SubtractionGame) -> GameAnalysis<u64> {
    game.analyze_remaining(game.target)
}
