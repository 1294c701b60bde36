//! Request handling shared by the HTTP API and the command line: parameter
//! defaults, bounds, and the JSON shapes of every reply.

use std::str::FromStr;

use mathplay::curves::{ParametricCurve, StitchStyle};
use mathplay::figures::{self, Figure, DEFAULT_SAMPLES, DEFAULT_TREE_DECREMENT, DEFAULT_TREE_MIN_LEN};
use mathplay::games::{self, GameAnalysis, Heaps, NimMove, Outcome, SubtractionGame};
use mathplay::graphs::{self, EulerClass, Graph};
use mathplay::lsystem::{self, RenderSpec};
use mathplay::numerics::{self, NeedleSpec, PRNG_ALGORITHM};
use mathplay::puzzles::{self, AntConfig, Board, Direction, Domino, HopConstraint, SudokuGrid4};
use serde::{Deserialize, Serialize};

use crate::error::ApiError;

pub const MAX_N: u32 = 2000;
pub const MAX_ORDER: u32 = 12;
pub const MAX_SAMPLES: usize = 100_000;
pub const MAX_DROPS: u64 = 10_000_000;
pub const MAX_SUDOKU_SOLUTIONS: usize = 1000;

/// A move as seen by clients. `heap` is a 0-based index and is absent for
/// single-pile games.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveView {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heap: Option<usize>,
    pub take: u64,
}

impl From<NimMove> for MoveView {
    fn from(m: NimMove) -> Self {
        MoveView {
            heap: Some(m.heap),
            take: m.take,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisView {
    /// `First` when the player to move wins with perfect play.
    pub outcome: Outcome,
    pub grundy: u64,
    pub optimal_moves: Vec<MoveView>,
}

impl From<GameAnalysis<NimMove>> for AnalysisView {
    fn from(a: GameAnalysis<NimMove>) -> Self {
        AnalysisView {
            outcome: a.outcome,
            grundy: a.grundy,
            optimal_moves: a.optimal_moves.into_iter().map(MoveView::from).collect(),
        }
    }
}

impl From<GameAnalysis<u64>> for AnalysisView {
    fn from(a: GameAnalysis<u64>) -> Self {
        AnalysisView {
            outcome: a.outcome,
            grundy: a.grundy,
            optimal_moves: a.optimal_moves.into_iter().map(|take| MoveView { heap: None, take }).collect(),
        }
    }
}

pub fn analyze_nim(heaps: &[u64]) -> AnalysisView {
    games::analyze_nim(&Heaps::new(heaps)).into()
}

pub fn analyze_subtraction(target: u64, moves: &[u64]) -> Result<AnalysisView, ApiError> {
    Ok(SubtractionGame::new(target, moves.iter().copied())?.analyze_remaining(target).into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Svg,
    Points,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderView {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<[f64; 2]>>>,
}

pub fn render(figure: &Figure, format: Format) -> Result<RenderView, ApiError> {
    check_bounds(figure)?;
    let drawing = figure.drawing()?;
    Ok(match format {
        Format::Svg => RenderView {
            svg: Some(figures::svg(&drawing)),
            points: None,
        },
        Format::Points => RenderView {
            svg: None,
            points: Some(figures::points(&drawing)),
        },
    })
}

fn check_n(n: u32) -> Result<(), ApiError> {
    if n > MAX_N {
        return Err(ApiError::out_of_range(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(())
}

/// Rejects figures whose size would exceed the documented limits.
pub fn check_bounds(figure: &Figure) -> Result<(), ApiError> {
    match *figure {
        Figure::ModularChords { n, .. } | Figure::SkipCount { n, .. } | Figure::Stitch { n, .. } => check_n(n),
        Figure::Curve { samples, .. } if samples > MAX_SAMPLES => {
            Err(ApiError::out_of_range(format!("samples = {samples} exceeds {MAX_SAMPLES}")))
        }
        Figure::Curve { .. } => Ok(()),
        Figure::Lsystem { ref spec, .. } if spec.order > MAX_ORDER => {
            Err(ApiError::out_of_range(format!("order = {} exceeds {MAX_ORDER}", spec.order)))
        }
        Figure::Lsystem { .. } => Ok(()),
        Figure::Tree { len, decrement, min_len, .. } => {
            if !(len.is_finite() && decrement > 0.0 && min_len.is_finite()) {
                return Err(ApiError::out_of_range("tree needs finite length and positive decrement"));
            }
            let levels = ((len - min_len) / decrement).floor() + 1.0;
            if levels > f64::from(MAX_ORDER) {
                return Err(ApiError::out_of_range(format!("tree depth {levels} exceeds {MAX_ORDER}")));
            }
            Ok(())
        }
        Figure::Mandelbrot { width, height, max_iter } => {
            if width.max(height) > MAX_N as usize || max_iter as usize > MAX_SAMPLES {
                return Err(ApiError::out_of_range("mandelbrot raster too large"));
            }
            Ok(())
        }
    }
}

/// Parameters of the curve family endpoint; every field but `kind` has a
/// default.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveParams {
    pub kind: String,
    pub samples: Option<usize>,
    pub r: Option<f64>,
    pub big: Option<f64>,
    pub small: Option<f64>,
    pub n: Option<u32>,
    pub skip: Option<u32>,
    pub style: Option<String>,
    pub len: Option<f64>,
    pub theta: Option<f64>,
    pub decrement: Option<f64>,
    pub min_len: Option<f64>,
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub max_iter: Option<u32>,
    #[serde(default)]
    pub format: Format,
}

pub const CURVE_KINDS: &[&str] = &["cardioid", "cycloid", "epicycloid", "stitch", "skip", "tree", "mandelbrot"];

pub fn curve_figure(p: &CurveParams) -> Result<Figure, ApiError> {
    let samples = p.samples.unwrap_or(DEFAULT_SAMPLES);
    let figure = match p.kind.as_str() {
        "cardioid" => Figure::Curve {
            curve: ParametricCurve::Cardioid,
            samples,
        },
        "cycloid" => Figure::Curve {
            curve: ParametricCurve::Cycloid { r: p.r.unwrap_or(1.0) },
            samples,
        },
        "epicycloid" => Figure::Curve {
            curve: ParametricCurve::Epicycloid {
                big: p.big.unwrap_or(1.0),
                small: p.small.unwrap_or(1.0),
            },
            samples,
        },
        "stitch" => Figure::Stitch {
            n: p.n.unwrap_or(10),
            style: parse_stitch_style(p.style.as_deref().unwrap_or("perpendicular"))?,
        },
        "skip" => Figure::SkipCount {
            n: p.n.unwrap_or(10),
            skip: p.skip.unwrap_or(1),
        },
        "tree" => Figure::Tree {
            len: p.len.unwrap_or(60.0),
            theta: p.theta.unwrap_or(20.0),
            decrement: p.decrement.unwrap_or(DEFAULT_TREE_DECREMENT),
            min_len: p.min_len.unwrap_or(DEFAULT_TREE_MIN_LEN),
        },
        "mandelbrot" => Figure::Mandelbrot {
            width: p.width.unwrap_or(200),
            height: p.height.unwrap_or(200),
            max_iter: p.max_iter.unwrap_or(100),
        },
        other => {
            return Err(ApiError::bad_request(format!(
                "unknown curve kind {other:?}; expected one of {}",
                CURVE_KINDS.join(", ")
            )))
        }
    };
    check_bounds(&figure)?;
    Ok(figure)
}

pub fn parse_stitch_style(s: &str) -> Result<StitchStyle, ApiError> {
    match s {
        "perpendicular" | "perpendicular-sum" => Ok(StitchStyle::PerpendicularSum),
        "v" | "v-shape" => Ok(StitchStyle::VShape),
        other => Err(ApiError::bad_request(format!("unknown stitch style {other:?}"))),
    }
}

/// Body of the L-system render request: either rule text or a preset name.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LsystemParams {
    pub rules: Option<String>,
    pub preset: Option<String>,
    pub order: u32,
    pub angle: Option<f64>,
    pub step: Option<f64>,
    #[serde(default)]
    pub format: Format,
}

pub fn lsystem_figure(p: &LsystemParams) -> Result<Figure, ApiError> {
    let text = match (&p.rules, &p.preset) {
        (Some(text), None) => text.as_str(),
        (None, Some(name)) => lsystem::presets::by_name(name)
            .ok_or_else(|| ApiError::bad_request(format!("unknown preset {name:?}")))?,
        _ => return Err(ApiError::bad_request("give exactly one of rules or preset")),
    };
    let system = lsystem::parse(text)?;
    let spec = RenderSpec {
        order: p.order,
        step: p.step.unwrap_or(1.0),
        angle: p.angle,
        ..RenderSpec::default()
    };
    let figure = Figure::Lsystem { system, spec };
    check_bounds(&figure)?;
    Ok(figure)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EstimateView {
    pub estimate: f64,
    pub crossings: u64,
    pub drops: u64,
    pub seed: u64,
    pub length: f64,
    pub spacing: f64,
    pub prng: String,
}

pub fn estimate_pi(spec: &NeedleSpec) -> Result<EstimateView, ApiError> {
    if spec.drops > MAX_DROPS {
        return Err(ApiError::out_of_range(format!("drops = {} exceeds {MAX_DROPS}", spec.drops)));
    }
    let r = numerics::buffon_estimate(spec)?;
    Ok(EstimateView {
        estimate: r.estimate,
        crossings: r.crossings,
        drops: r.drops,
        seed: spec.seed,
        length: spec.length,
        spacing: spec.spacing,
        prng: PRNG_ALGORITHM.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "puzzle", rename_all = "lowercase", rename_all_fields = "camelCase")]
pub enum PuzzleView {
    Squares { n: u64, count: u64 },
    Rooks { n: u32, count: u128 },
    Triangles { n: u64, count: u64 },
    Dominoes { tileable: bool, tiling: Option<Vec<Domino>> },
    Sudoku4 { count: usize, truncated: bool, solutions: Vec<[[u8; 4]; 4]> },
    Ants { clear_time: f64, worst_case: f64 },
    Euler { class: EulerClass, trail: Option<Vec<usize>> },
    Walks { count: String },
    Dwarf { reachable: bool },
}

pub const PUZZLES: &[&str] = &["squares", "rooks", "triangles", "dominoes", "sudoku4", "ants", "euler", "walks", "dwarf"];

/// Query parameters of the puzzle endpoint. Lists use commas or spaces.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PuzzleParams {
    pub n: Option<u64>,
    /// Board file contents: width, height, then removed col/row pairs.
    pub board: Option<String>,
    /// Sixteen cells, row by row, 0 for blank.
    pub grid: Option<String>,
    pub length: Option<f64>,
    pub speed: Option<f64>,
    /// Ants as `position:L` or `position:R`, comma separated.
    pub ants: Option<String>,
    /// Edges as `i-j`, comma separated.
    pub edges: Option<String>,
    pub from: Option<usize>,
    pub to: Option<usize>,
    pub steps: Option<u32>,
    pub x: Option<i64>,
    pub y: Option<i64>,
    pub constraint: Option<String>,
}

fn required<T: Copy>(v: Option<T>, name: &str) -> Result<T, ApiError> {
    v.ok_or_else(|| ApiError::bad_request(format!("missing parameter {name}")))
}

fn separated(s: &str) -> String {
    s.replace(',', " ")
}

pub fn parse_board(text: &str) -> Result<Board, ApiError> {
    Ok(Board::from_str(&separated(text))?)
}

/// Accepts the grid file format, or sixteen digits with no separators.
pub fn parse_grid(text: &str) -> Result<SudokuGrid4, ApiError> {
    let t = text.trim();
    if t.len() == 16 && t.bytes().all(|b| b.is_ascii_digit()) {
        let spaced: Vec<String> = t.chars().map(String::from).collect();
        return Ok(spaced.join(" ").parse()?);
    }
    Ok(separated(text).parse()?)
}

pub fn parse_ants(text: &str) -> Result<Vec<(f64, Direction)>, ApiError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (pos, dir) = item
                .split_once(':')
                .ok_or_else(|| ApiError::bad_request(format!("ant {item:?} should look like 0.25:L")))?;
            let pos: f64 = pos.trim().parse().map_err(|_| ApiError::bad_request(format!("bad ant position {pos:?}")))?;
            let dir = match dir.trim() {
                "L" | "l" => Direction::Left,
                "R" | "r" => Direction::Right,
                d => return Err(ApiError::bad_request(format!("ant direction must be L or R, found {d:?}"))),
            };
            Ok((pos, dir))
        })
        .collect()
}

/// `n` plus `i-j` edge list; no edges and no `n` means the bridges of Königsberg.
pub fn parse_graph(n: Option<u64>, edges: Option<&str>) -> Result<Graph, ApiError> {
    match (n, edges) {
        (None, None) => Ok(Graph::konigsberg()),
        (Some(n), edges) => {
            let mut text = format!("{n}\n");
            for e in edges.unwrap_or("").split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let (a, b) = e.split_once('-').ok_or_else(|| ApiError::bad_request(format!("edge {e:?} should look like 0-1")))?;
                text.push_str(&format!("{a} {b}\n"));
            }
            Ok(text.parse()?)
        }
        (None, Some(_)) => Err(ApiError::bad_request("edges need a vertex count n")),
    }
}

pub fn solve_puzzle(name: &str, p: &PuzzleParams) -> Result<PuzzleView, ApiError> {
    Ok(match name {
        "squares" => {
            let n = required(p.n, "n")?;
            check_n(n.min(u64::from(u32::MAX)) as u32)?;
            PuzzleView::Squares { n, count: puzzles::count_subsquares(n) }
        }
        "rooks" => {
            let n = u32::try_from(required(p.n, "n")?).map_err(|_| ApiError::out_of_range("n too large"))?;
            PuzzleView::Rooks { n, count: puzzles::count_rook_placements(n)? }
        }
        "triangles" => {
            let n = required(p.n, "n")?;
            check_n(n.min(u64::from(u32::MAX)) as u32)?;
            PuzzleView::Triangles { n, count: puzzles::count_triangles(n) }
        }
        "dominoes" => {
            let board = match (&p.board, p.n) {
                (Some(text), _) => parse_board(text)?,
                (None, Some(n)) => Board::mutilated(n as usize)?,
                (None, None) => return Err(ApiError::bad_request("missing parameter board")),
            };
            if board.width() * board.height() > 256 {
                return Err(ApiError::out_of_range("board larger than 256 cells"));
            }
            let (tileable, tiling) = puzzles::domino_tileable(&board);
            PuzzleView::Dominoes { tileable, tiling }
        }
        "sudoku4" => {
            let grid = parse_grid(p.grid.as_deref().ok_or_else(|| ApiError::bad_request("missing parameter grid"))?)?;
            let found = puzzles::solve_sudoku4(&grid, MAX_SUDOKU_SOLUTIONS)?;
            PuzzleView::Sudoku4 {
                count: found.solutions.len(),
                truncated: found.truncated,
                solutions: found.solutions.into_iter().map(|g| g.0).collect(),
            }
        }
        "ants" => {
            let length = p.length.unwrap_or(1.0);
            let speed = p.speed.unwrap_or(1.0);
            let ants = parse_ants(p.ants.as_deref().unwrap_or(""))?;
            if ants.len() > 10_000 {
                return Err(ApiError::out_of_range("at most 10000 ants"));
            }
            let cfg = AntConfig::new(length, speed, ants)?;
            PuzzleView::Ants {
                clear_time: puzzles::ants_clear_time(&cfg),
                worst_case: puzzles::worst_case_clear_time(length, speed),
            }
        }
        "euler" => {
            let g = parse_graph(p.n, p.edges.as_deref())?;
            PuzzleView::Euler {
                class: graphs::eulerian_class(&g),
                trail: graphs::euler_trail(&g),
            }
        }
        "walks" => {
            let g = parse_graph(p.n, p.edges.as_deref())?;
            let steps = required(p.steps, "steps")?;
            if steps > 10_000 {
                return Err(ApiError::out_of_range("steps exceeds 10000"));
            }
            let count = graphs::count_walks(&g, required(p.from, "from")?, required(p.to, "to")?, steps)?;
            PuzzleView::Walks { count: count.to_string() }
        }
        "dwarf" => {
            let constraint = match p.constraint.as_deref().unwrap_or("equal") {
                "equal" => HopConstraint::EqualHops,
                "right-exceeds-up" => HopConstraint::RightExceedsUp,
                "none" => HopConstraint::Unconstrained,
                c => return Err(ApiError::bad_request(format!("unknown constraint {c:?}"))),
            };
            PuzzleView::Dwarf {
                reachable: puzzles::dwarf_reachable(required(p.x, "x")?, required(p.y, "y")?, constraint),
            }
        }
        other => {
            return Err(ApiError::new(
                axum::http::StatusCode::NOT_FOUND,
                "unknown_puzzle",
                format!("unknown puzzle {other:?}; expected one of {}", PUZZLES.join(", ")),
            ))
        }
    })
}
