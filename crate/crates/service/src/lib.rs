//! HTTP API over the `mathplay` engine.
//!
//! | method | path | |
//! |---|---|---|
//! | POST | `/api/game` | start a game session |
//! | POST | `/api/game/{id}/move` | play a move; the engine answers |
//! | GET | `/api/game/{id}` | current session view |
//! | GET | `/api/render/modular-chords` | `n`, `k` |
//! | GET | `/api/render/curve` | `kind` plus kind-specific parameters |
//! | POST | `/api/render/lsystem` | rule text or preset, `order`, `angle`, `step` |
//! | GET | `/api/puzzle/{name}` | counting and solving puzzles |
//! | GET | `/api/estimate/pi` | Buffon's needle |
//!
//! Errors are JSON `{"code": ..., "message": ...}`.

use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::routing::{get, post};
use axum::{Json, Router};
use mathplay::figures::Figure;
use mathplay::numerics::NeedleSpec;
use serde::Deserialize;

pub mod error;
pub mod ops;
pub mod session;

pub use error::ApiError;
use ops::{CurveParams, EstimateView, Format, LsystemParams, MoveView, PuzzleParams, PuzzleView, RenderView};
pub use session::{CreateGame, GameView, SessionStore, DEFAULT_TTL};

pub type AppState = Arc<SessionStore>;

type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(store: AppState) -> Router {
    Router::new()
        .route("/api/game", post(create_game))
        .route("/api/game/{id}", get(get_game))
        .route("/api/game/{id}/move", post(play_move))
        .route("/api/render/modular-chords", get(render_modular))
        .route("/api/render/curve", get(render_curve))
        .route("/api/render/lsystem", post(render_lsystem))
        .route("/api/puzzle/{name}", get(puzzle))
        .route("/api/estimate/pi", get(estimate_pi))
        .with_state(store)
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload.map(|Json(v)| v).map_err(|e| ApiError::bad_request(e.body_text()))
}

fn query<T>(q: Result<Query<T>, QueryRejection>) -> Result<T, ApiError> {
    q.map(|Query(v)| v).map_err(|e| ApiError::bad_request(e.body_text()))
}

async fn create_game(State(store): State<AppState>, payload: Result<Json<CreateGame>, JsonRejection>) -> ApiResult<GameView> {
    store.create(body(payload)?).map(Json)
}

async fn get_game(State(store): State<AppState>, Path(id): Path<String>) -> ApiResult<GameView> {
    store.get(&id).map(Json)
}

async fn play_move(
    State(store): State<AppState>,
    Path(id): Path<String>,
    payload: Result<Json<MoveView>, JsonRejection>,
) -> ApiResult<GameView> {
    let mv = body(payload)?;
    store.play(&id, mv).map(Json)
}

#[derive(Deserialize)]
struct ModularQuery {
    n: u32,
    k: u32,
    #[serde(default)]
    format: Format,
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> ApiResult<T> {
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => r.map(Json),
        Err(e) => Err(ApiError::new(
            axum::http::StatusCode::INTERNAL_SERVER_ERROR,
            "internal",
            e.to_string(),
        )),
    }
}

async fn render_modular(q: Result<Query<ModularQuery>, QueryRejection>) -> ApiResult<RenderView> {
    let q = query(q)?;
    blocking(move || ops::render(&Figure::ModularChords { n: q.n, k: q.k }, q.format)).await
}

async fn render_curve(q: Result<Query<CurveParams>, QueryRejection>) -> ApiResult<RenderView> {
    let q = query(q)?;
    blocking(move || ops::render(&ops::curve_figure(&q)?, q.format)).await
}

async fn render_lsystem(payload: Result<Json<LsystemParams>, JsonRejection>) -> ApiResult<RenderView> {
    let p = body(payload)?;
    blocking(move || ops::render(&ops::lsystem_figure(&p)?, p.format)).await
}

async fn puzzle(Path(name): Path<String>, q: Result<Query<PuzzleParams>, QueryRejection>) -> ApiResult<PuzzleView> {
    let q = query(q)?;
    blocking(move || ops::solve_puzzle(&name, &q)).await
}

#[derive(Deserialize)]
struct EstimateQuery {
    drops: Option<u64>,
    seed: Option<u64>,
    length: Option<f64>,
    spacing: Option<f64>,
}

pub const DEFAULT_DROPS: u64 = 100_000;

async fn estimate_pi(q: Result<Query<EstimateQuery>, QueryRejection>) -> ApiResult<EstimateView> {
    let q = query(q)?;
    let spec = NeedleSpec {
        length: q.length.unwrap_or(1.0),
        spacing: q.spacing.unwrap_or(1.0),
        drops: q.drops.unwrap_or(DEFAULT_DROPS),
        seed: q.seed.unwrap_or(0),
    };
    blocking(move || ops::estimate_pi(&spec)).await
}

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub addr: SocketAddr,
    pub ttl: Duration,
    pub snapshot: Option<PathBuf>,
}

impl ServeConfig {
    /// Loopback on `port`, default TTL, no snapshot.
    pub fn loopback(port: u16) -> Self {
        ServeConfig {
            addr: SocketAddr::new(IpAddr::V4(Ipv4Addr::LOCALHOST), port),
            ttl: DEFAULT_TTL,
            snapshot: None,
        }
    }
}

pub fn build_store(config: &ServeConfig) -> std::io::Result<AppState> {
    Ok(Arc::new(match &config.snapshot {
        Some(path) => SessionStore::with_snapshot(config.ttl, path)?,
        None => SessionStore::new(config.ttl),
    }))
}

/// Serves until Ctrl-C.
pub async fn serve(config: ServeConfig) -> std::io::Result<()> {
    let store = build_store(&config)?;
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
