//! Interactive game sessions against the perfect-play engine.

use std::collections::{BTreeSet, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use axum::http::StatusCode;
use mathplay::games::{self, Heaps, NimMove, Outcome, SubtractionGame};
use serde::{Deserialize, Serialize};

use crate::error::ApiError;
use crate::ops::{AnalysisView, MoveView};

pub const DEFAULT_TTL: Duration = Duration::from_secs(3600);
pub const MAX_HEAPS: usize = 64;
pub const MAX_HEAP: i64 = 1_000_000_000;
pub const MAX_TARGET: i64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Human,
    Engine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "game", rename_all = "lowercase")]
pub enum GameState {
    Nim { heaps: Heaps },
    /// Single pile where each move removes one of `moves`; `remaining`
    /// objects are left. Building up to `target` by steps from `moves` is the
    /// same game.
    Subtraction { target: u64, moves: BTreeSet<u64>, remaining: u64 },
}

impl GameState {
    fn subtraction_game(target: u64, moves: &BTreeSet<u64>) -> SubtractionGame {
        SubtractionGame::new(target, moves.iter().copied()).expect("validated at creation")
    }

    pub fn analysis(&self) -> AnalysisView {
        match self {
            GameState::Nim { heaps } => games::analyze_nim(heaps).into(),
            GameState::Subtraction { target, moves, remaining } => {
                Self::subtraction_game(*target, moves).analyze_remaining(*remaining).into()
            }
        }
    }

    pub fn is_over(&self) -> bool {
        match self {
            GameState::Nim { heaps } => heaps.is_terminal(),
            GameState::Subtraction { moves, remaining, .. } => moves.iter().all(|&m| m > *remaining),
        }
    }

    pub fn engine_move(&self) -> Option<MoveView> {
        match self {
            GameState::Nim { heaps } => games::engine_nim_move(heaps).map(MoveView::from),
            GameState::Subtraction { target, moves, remaining } => Self::subtraction_game(*target, moves)
                .engine_move(*remaining)
                .map(|take| MoveView { heap: None, take }),
        }
    }

    pub fn apply(&mut self, mv: MoveView) -> Result<(), ApiError> {
        match self {
            GameState::Nim { heaps } => {
                let heap = mv
                    .heap
                    .ok_or_else(|| ApiError::bad_request("nim moves need a heap index"))?;
                *heaps = games::apply_move(heaps, NimMove { heap, take: mv.take })?;
            }
            GameState::Subtraction { moves, remaining, .. } => {
                if mv.heap.is_some_and(|h| h != 0) {
                    return Err(mathplay::Error::IllegalMove("single-pile game has only heap 0".into()).into());
                }
                if !moves.contains(&mv.take) {
                    return Err(mathplay::Error::IllegalMove(format!("{} is not an allowed amount", mv.take)).into());
                }
                if mv.take > *remaining {
                    return Err(mathplay::Error::IllegalMove(format!("only {remaining} left")).into());
                }
                *remaining -= mv.take;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoggedMove {
    pub player: Player,
    #[serde(flatten)]
    pub mv: MoveView,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Session {
    pub id: String,
    pub state: GameState,
    pub human_side: Side,
    pub to_move: Side,
    pub log: Vec<LoggedMove>,
    pub created_at: u64,
}

/// Body of `POST /api/game`. A request with `heaps` is Nim; one with
/// `target` is the single-pile game, with `moves` defaulting to `[1, 2]`.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateGame {
    pub game: Option<String>,
    pub heaps: Option<Vec<i64>>,
    pub target: Option<i64>,
    pub moves: Option<Vec<i64>>,
    pub human_side: Option<Side>,
}

impl CreateGame {
    fn into_state(self) -> Result<GameState, ApiError> {
        let kind = match (&self.game, &self.heaps, &self.target) {
            (Some(g), _, _) => g.as_str(),
            (None, Some(_), None) => "nim",
            (None, None, Some(_)) => "subtraction",
            _ => return Err(ApiError::bad_request("give either heaps or target")),
        };
        match kind {
            "nim" => {
                let heaps = self.heaps.ok_or_else(|| ApiError::bad_request("nim needs heaps"))?;
                if heaps.is_empty() || heaps.len() > MAX_HEAPS {
                    return Err(ApiError::bad_request(format!("need 1 to {MAX_HEAPS} heaps")));
                }
                if let Some(h) = heaps.iter().find(|&&h| !(0..=MAX_HEAP).contains(&h)) {
                    return Err(ApiError::bad_request(format!("heap count {h} outside 0..={MAX_HEAP}")));
                }
                Ok(GameState::Nim {
                    heaps: Heaps::new(heaps.into_iter().map(|h| h as u64).collect::<Vec<_>>()),
                })
            }
            "subtraction" | "make" => {
                let target = self.target.ok_or_else(|| ApiError::bad_request("subtraction game needs target"))?;
                if !(0..=MAX_TARGET).contains(&target) {
                    return Err(ApiError::bad_request(format!("target outside 0..={MAX_TARGET}")));
                }
                let moves = self.moves.unwrap_or_else(|| vec![1, 2]);
                if moves.is_empty() || moves.len() > MAX_HEAPS {
                    return Err(ApiError::bad_request("moves must be a non-empty set"));
                }
                if let Some(m) = moves.iter().find(|&&m| !(1..=MAX_TARGET).contains(&m)) {
                    return Err(ApiError::bad_request(format!("move {m} outside 1..={MAX_TARGET}")));
                }
                Ok(GameState::Subtraction {
                    target: target as u64,
                    moves: moves.into_iter().map(|m| m as u64).collect(),
                    remaining: target as u64,
                })
            }
            other => Err(ApiError::bad_request(format!("unknown game {other:?}"))),
        }
    }
}

/// Client view of a session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameView {
    pub id: String,
    pub game: String,
    /// Heap counts for Nim, objects left for the single-pile game.
    pub state: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<Vec<u64>>,
    pub human_side: Side,
    /// Who moves next, or `None` once the game is over.
    pub turn: Option<Player>,
    /// From the point of view of the player to move.
    pub outcome: Outcome,
    pub grundy: u64,
    pub optimal_moves: Vec<MoveView>,
    /// The engine's move, when it made the latest move.
    pub engine_move: Option<MoveView>,
    pub game_over: bool,
    pub winner: Option<Player>,
    pub log: Vec<LoggedMove>,
}

impl Session {
    pub fn new(id: String, request: CreateGame) -> Result<Session, ApiError> {
        let human_side = request.human_side.unwrap_or(Side::First);
        let mut session = Session {
            id,
            state: request.into_state()?,
            human_side,
            to_move: Side::First,
            log: Vec::new(),
            created_at: unix_now(),
        };
        session.engine_reply();
        Ok(session)
    }

    fn player(&self, side: Side) -> Player {
        if side == self.human_side {
            Player::Human
        } else {
            Player::Engine
        }
    }

    fn engine_reply(&mut self) {
        if self.state.is_over() || self.player(self.to_move) != Player::Engine {
            return;
        }
        if let Some(mv) = self.state.engine_move() {
            self.state.apply(mv).expect("engine moves are legal");
            self.log.push(LoggedMove { player: Player::Engine, mv });
            self.to_move = self.to_move.other();
        }
    }

    /// Applies the human's move and the engine's answer.
    pub fn human_move(&mut self, mv: MoveView) -> Result<(), ApiError> {
        if self.state.is_over() {
            return Err(ApiError::new(StatusCode::CONFLICT, "game_over", "the game has ended"));
        }
        if self.player(self.to_move) != Player::Human {
            return Err(ApiError::new(StatusCode::CONFLICT, "not_your_turn", "the engine is to move"));
        }
        self.state.apply(mv)?;
        self.log.push(LoggedMove { player: Player::Human, mv });
        self.to_move = self.to_move.other();
        self.engine_reply();
        Ok(())
    }

    pub fn view(&self) -> GameView {
        let analysis = self.state.analysis();
        let over = self.state.is_over();
        let (game, state, target, moves) = match &self.state {
            GameState::Nim { heaps } => ("nim", serde_json::json!(heaps.counts()), None, None),
            GameState::Subtraction { target, moves, remaining } => (
                "subtraction",
                serde_json::json!(remaining),
                Some(*target),
                Some(moves.iter().copied().collect()),
            ),
        };
        GameView {
            id: self.id.clone(),
            game: game.into(),
            state,
            target,
            moves,
            human_side: self.human_side,
            turn: (!over).then(|| self.player(self.to_move)),
            outcome: analysis.outcome,
            grundy: analysis.grundy,
            optimal_moves: analysis.optimal_moves,
            engine_move: self.log.last().filter(|m| m.player == Player::Engine).map(|m| m.mv),
            game_over: over,
            // the player who cannot move loses
            winner: over.then(|| self.player(self.to_move.other())),
            log: self.log.clone(),
        }
    }
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// One line of the snapshot file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotRecord {
    pub at: u64,
    pub event: String,
    pub session: Session,
}

struct Entry {
    session: Session,
    last_touched: Instant,
}

/// In-memory sessions with idle expiry and an optional append-only
/// snapshot log.
pub struct SessionStore {
    sessions: Mutex<HashMap<String, Entry>>,
    ttl: Duration,
    snapshot: Option<Mutex<File>>,
}

impl SessionStore {
    pub fn new(ttl: Duration) -> Self {
        SessionStore {
            sessions: Mutex::new(HashMap::new()),
            ttl,
            snapshot: None,
        }
    }

    /// Replays `path` (if it exists) and appends every later transition to it.
    pub fn with_snapshot(ttl: Duration, path: &Path) -> std::io::Result<Self> {
        let store = SessionStore::new(ttl);
        if path.exists() {
            let now = Instant::now();
            let mut map = store.sessions.lock().expect("session lock");
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let record: SnapshotRecord = serde_json::from_str(&line)
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
                let id = record.session.id.clone();
                map.insert(id, Entry { session: record.session, last_touched: now });
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(SessionStore {
            snapshot: Some(Mutex::new(file)),
            ..store
        })
    }

    pub fn ttl(&self) -> Duration {
        self.ttl
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().expect("session lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn record(&self, event: &str, session: &Session) {
        let Some(file) = &self.snapshot else { return };
        let record = SnapshotRecord {
            at: unix_now(),
            event: event.into(),
            session: session.clone(),
        };
        let mut line = serde_json::to_string(&record).expect("session serializes");
        line.push('\n');
        let mut f = file.lock().expect("snapshot lock");
        if let Err(e) = f.write_all(line.as_bytes()).and_then(|()| f.flush()) {
            eprintln!("snapshot write failed: {e}");
        }
    }

    pub fn create(&self, request: CreateGame) -> Result<GameView, ApiError> {
        let id = format!("{:032x}", rand::random::<u128>());
        let session = Session::new(id.clone(), request)?;
        let view = session.view();
        self.record("create", &session);
        let now = Instant::now();
        let mut map = self.sessions.lock().expect("session lock");
        map.retain(|_, e| now.duration_since(e.last_touched) <= self.ttl);
        map.insert(id, Entry { session, last_touched: now });
        Ok(view)
    }

    /// Runs `f` on a live session, refreshing its idle timer.
    fn with_session<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T, ApiError>) -> Result<T, ApiError> {
        let now = Instant::now();
        let mut map = self.sessions.lock().expect("session lock");
        let expired = match map.get(id) {
            None => return Err(ApiError::unknown_session(id)),
            Some(e) => now.duration_since(e.last_touched) > self.ttl,
        };
        if expired {
            map.remove(id);
            return Err(ApiError::unknown_session(id));
        }
        let entry = map.get_mut(id).expect("checked above");
        entry.last_touched = now;
        f(&mut entry.session)
    }

    pub fn get(&self, id: &str) -> Result<GameView, ApiError> {
        self.with_session(id, |s| Ok(s.view()))
    }

    pub fn play(&self, id: &str, mv: MoveView) -> Result<GameView, ApiError> {
        let session = self.with_session(id, |s| {
            s.human_move(mv)?;
            Ok(s.clone())
        })?;
        self.record("move", &session);
        Ok(session.view())
    }
}
