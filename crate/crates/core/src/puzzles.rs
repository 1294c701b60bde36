//! Counting puzzles, domino tilings, 4×4 Sudoku, ants on a stick, and
//! reachability on the dwarf lattice.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned `k×k` squares on an `n×n` board, all sizes: `Σ k²`.
pub fn count_subsquares(n: u64) -> u64 {
    n * (n + 1) * (2 * n + 1) / 6
}

/// Non-attacking placements of `n` rooks on an `n×n` board: `n!`.
pub fn count_rook_placements(n: u32) -> Result<u128> {
    (1..=u128::from(n)).try_fold(1u128, |acc, k| acc.checked_mul(k).ok_or(Error::Overflow("n! exceeds 128 bits")))
}

/// Triangles of every size and both orientations in an equilateral triangle
/// cut into `n` rows of unit triangles.
pub fn count_triangles(n: u64) -> u64 {
    n * (n + 2) * (2 * n + 1) / 8
}

/// Rectangular board with some cells cut out; cells are `(col, row)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Board {
    width: usize,
    height: usize,
    removed: BTreeSet<(usize, usize)>,
}

impl Board {
    pub fn new(width: usize, height: usize, removed: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid("board sides must be positive"));
        }
        let mut set = BTreeSet::new();
        for (c, r) in removed {
            if c >= width || r >= height {
                return Err(Error::invalid(format!("removed cell ({c}, {r}) is off the board")));
            }
            if !set.insert((c, r)) {
                return Err(Error::invalid(format!("cell ({c}, {r}) removed twice")));
            }
        }
        Ok(Board { width, height, removed: set })
    }

    /// `n×n` board without two diagonally opposite corners.
    pub fn mutilated(n: usize) -> Result<Self> {
        Board::new(n, n, [(0, 0), (n - 1, n - 1)])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_open(&self, col: usize, row: usize) -> bool {
        col < self.width && row < self.height && !self.removed.contains(&(col, row))
    }

    pub fn open_cells(&self) -> usize {
        self.width * self.height - self.removed.len()
    }
}

/// `width height` followed by `col row` pairs of removed cells; whitespace
/// separated with `#` comments.
impl FromStr for Board {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let nums = parse_integers(text)?;
        match nums.as_slice() {
            [w, h, rest @ ..] if rest.len() % 2 == 0 => {
                Board::new(*w, *h, rest.chunks(2).map(|p| (p[0], p[1])))
            }
            _ => Err(Error::invalid("board file: expected width, height, then col/row pairs")),
        }
    }
}

fn parse_integers(text: &str) -> Result<Vec<usize>> {
    text.lines()
        .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
        .map(|t| t.parse().map_err(|_| Error::invalid(format!("not a non-negative integer: {t:?}"))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domino {
    pub col: usize,
    pub row: usize,
    /// Covers `(col, row)` and `(col + 1, row)` when horizontal, else `(col, row + 1)`.
    pub horizontal: bool,
}

impl Domino {
    pub fn cells(&self) -> [(usize, usize); 2] {
        let other = if self.horizontal {
            (self.col + 1, self.row)
        } else {
            (self.col, self.row + 1)
        };
        [(self.col, self.row), other]
    }
}

/// A tiling of every open cell, or `None` when none exists. The search
/// fills the first empty cell in row-major order, horizontal first.
pub fn domino_tiling(board: &Board) -> Option<Vec<Domino>> {
    if board.open_cells() % 2 == 1 {
        return None;
    }
    let (w, h) = (board.width, board.height);
    let mut covered: Vec<bool> = (0..w * h).map(|i| !board.is_open(i % w, i / w)).collect();
    let mut placed = Vec::with_capacity(board.open_cells() / 2);

    fn search(covered: &mut [bool], w: usize, h: usize, placed: &mut Vec<Domino>) -> bool {
        let Some(i) = covered.iter().position(|&c| !c) else {
            return true;
        };
        let (col, row) = (i % w, i / w);
        for horizontal in [true, false] {
            let j = if horizontal {
                if col + 1 >= w {
                    continue;
                }
                i + 1
            } else {
                if row + 1 >= h {
                    continue;
                }
                i + w
            };
            if covered[j] {
                continue;
            }
            covered[i] = true;
            covered[j] = true;
            placed.push(Domino { col, row, horizontal });
            if search(covered, w, h, placed) {
                return true;
            }
            placed.pop();
            covered[i] = false;
            covered[j] = false;
        }
        false
    }

    search(&mut covered, w, h, &mut placed).then_some(placed)
}

pub fn domino_tileable(board: &Board) -> (bool, Option<Vec<Domino>>) {
    let tiling = domino_tiling(board);
    (tiling.is_some(), tiling)
}

/// 4×4 Sudoku; 0 marks an empty cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SudokuGrid4(pub [[u8; 4]; 4]);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SudokuSolutions {
    pub solutions: Vec<SudokuGrid4>,
    /// True when the search stopped at the cap with more solutions left.
    pub truncated: bool,
}

impl SudokuGrid4 {
    pub fn new(rows: [[u8; 4]; 4]) -> Result<Self> {
        if rows.iter().flatten().any(|&v| v > 4) {
            return Err(Error::invalid("sudoku cells hold 0 (empty) or 1..=4"));
        }
        Ok(SudokuGrid4(rows))
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.0[row][col]
    }

    /// Units (rows, columns, 2×2 boxes) as cell coordinate lists.
    fn units() -> impl Iterator<Item = [(usize, usize); 4]> {
        let rows = (0..4).map(|r| [(r, 0), (r, 1), (r, 2), (r, 3)]);
        let cols = (0..4).map(|c| [(0, c), (1, c), (2, c), (3, c)]);
        let boxes = (0..4).map(|b| {
            let (r, c) = (b / 2 * 2, b % 2 * 2);
            [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)]
        });
        rows.chain(cols).chain(boxes)
    }

    /// First pair of equal givens sharing a unit.
    pub fn conflict(&self) -> Option<((usize, usize), (usize, usize))> {
        for unit in Self::units() {
            for (i, &a) in unit.iter().enumerate() {
                for &b in &unit[i + 1..] {
                    let v = self.get(a.0, a.1);
                    if v != 0 && v == self.get(b.0, b.1) {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    fn allowed(&self, row: usize, col: usize, v: u8) -> bool {
        let (br, bc) = (row / 2 * 2, col / 2 * 2);
        (0..4).all(|i| self.0[row][i] != v && self.0[i][col] != v)
            && (0..2).all(|i| (0..2).all(|j| self.0[br + i][bc + j] != v))
    }
}

impl FromStr for SudokuGrid4 {
    type Err = Error;

    /// Sixteen whitespace-separated integers in row order, `#` comments allowed.
    fn from_str(text: &str) -> Result<Self> {
        let nums = parse_integers(text)?;
        if nums.len() != 16 {
            return Err(Error::invalid(format!("sudoku grid needs 16 cells, found {}", nums.len())));
        }
        let mut rows = [[0u8; 4]; 4];
        for (i, &v) in nums.iter().enumerate() {
            rows[i / 4][i % 4] = u8::try_from(v).map_err(|_| Error::invalid("cell value out of range"))?;
        }
        SudokuGrid4::new(rows)
    }
}

impl std::fmt::Display for SudokuGrid4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.0 {
            writeln!(f, "{} {} {} {}", row[0], row[1], row[2], row[3])?;
        }
        Ok(())
    }
}

/// Every completion, up to `cap` of them, by backtracking over empty cells.
pub fn solve_sudoku4(grid: &SudokuGrid4, cap: usize) -> Result<SudokuSolutions> {
    if let Some((a, b)) = grid.conflict() {
        return Err(Error::InvalidGivens(format!(
            "cells {a:?} and {b:?} both hold {}",
            grid.get(a.0, a.1)
        )));
    }
    let empties: Vec<(usize, usize)> = (0..16).map(|i| (i / 4, i % 4)).filter(|&(r, c)| grid.get(r, c) == 0).collect();
    let mut work = *grid;
    let mut out = SudokuSolutions {
        solutions: Vec::new(),
        truncated: false,
    };

    fn fill(work: &mut SudokuGrid4, empties: &[(usize, usize)], cap: usize, out: &mut SudokuSolutions) {
        let Some((&(r, c), rest)) = empties.split_first() else {
            if out.solutions.len() == cap {
                out.truncated = true;
            } else {
                out.solutions.push(*work);
            }
            return;
        };
        for v in 1..=4 {
            if out.truncated {
                return;
            }
            if work.allowed(r, c, v) {
                work.0[r][c] = v;
                fill(work, rest, cap, out);
                work.0[r][c] = 0;
            }
        }
    }

    fill(&mut work, &empties, cap, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Left => -1.0,
            Direction::Right => 1.0,
        }
    }

    fn flip(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntConfig {
    pub length: f64,
    pub speed: f64,
    pub ants: Vec<(f64, Direction)>,
}

impl AntConfig {
    pub fn new(length: f64, speed: f64, ants: Vec<(f64, Direction)>) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) || !(speed > 0.0 && speed.is_finite()) {
            return Err(Error::invalid("length and speed must be positive"));
        }
        if ants.iter().any(|&(x, _)| !(0.0..=length).contains(&x)) {
            return Err(Error::invalid("ants must start on the stick"));
        }
        Ok(AntConfig { length, speed, ants })
    }
}

/// Time until the last ant falls off, by event simulation. Colliding ants
/// swap directions; ants exactly at the end they face fall off at once.
pub fn ants_clear_time(config: &AntConfig) -> f64 {
    let (len, v) = (config.length, config.speed);
    let mut ants: Vec<(f64, Direction)> = config.ants.clone();
    // at equal positions, left-movers first so coincident pairs separate
    ants.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| (a.1 == Direction::Right).cmp(&(b.1 == Direction::Right))));
    let mut now = 0.0;
    let mut last_fall = 0.0f64;

    while !ants.is_empty() {
        // next event: a fall at either end or a head-on meeting of neighbours
        let mut dt = f64::INFINITY;
        if let Some(&(x, Direction::Left)) = ants.first() {
            dt = dt.min(x / v);
        }
        if let Some(&(x, Direction::Right)) = ants.last() {
            dt = dt.min((len - x) / v);
        }
        for pair in ants.windows(2) {
            if let [(a, Direction::Right), (b, Direction::Left)] = pair {
                dt = dt.min((b - a) / (2.0 * v));
            }
        }
        let dt = dt.max(0.0);
        now += dt;
        for ant in &mut ants {
            ant.0 += ant.1.sign() * v * dt;
        }

        // collisions: neighbours that met head-on bounce
        let eps = 1e-12 * len;
        for i in 0..ants.len().saturating_sub(1) {
            if ants[i].1 == Direction::Right && ants[i + 1].1 == Direction::Left && ants[i + 1].0 - ants[i].0 <= eps {
                let meet = 0.5 * (ants[i].0 + ants[i + 1].0);
                ants[i] = (meet, Direction::Left);
                ants[i + 1] = (meet, Direction::Right);
            }
        }
        // falls at either end
        while let Some(&(x, Direction::Left)) = ants.first() {
            if x > eps {
                break;
            }
            ants.remove(0);
            last_fall = last_fall.max(now);
        }
        while let Some(&(x, Direction::Right)) = ants.last() {
            if x < len - eps {
                break;
            }
            ants.pop();
            last_fall = last_fall.max(now);
        }
    }
    last_fall
}

/// Longest possible clear time: since bouncing is indistinguishable from
/// passing through, no ant walks further than the whole stick.
pub fn worst_case_clear_time(length: f64, speed: f64) -> f64 {
    length / speed
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HopConstraint {
    /// As many hops right as up.
    EqualHops,
    /// More hops right than up.
    RightExceedsUp,
    Unconstrained,
}

/// Whether a dwarf hopping unit steps from the origin can reach `(x, y)`.
pub fn dwarf_reachable(x: i64, y: i64, constraint: HopConstraint) -> bool {
    match constraint {
        HopConstraint::EqualHops => x == y,
        HopConstraint::RightExceedsUp => x > y,
        HopConstraint::Unconstrained => true,
    }
}

impl AntConfig {
    /// Reflection about the midpoint of the stick.
    pub fn mirrored(&self) -> AntConfig {
        AntConfig {
            length: self.length,
            speed: self.speed,
            ants: self.ants.iter().map(|&(x, d)| (self.length - x, d.flip())).collect(),
        }
    }
}
