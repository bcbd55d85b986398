//! HTTP routes. Payloads are described in `api/schema.json`.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::{Path, Query, Request, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use textpuzzle_core::{Difficulty, GameKind};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

use crate::session::SessionState;
use crate::stats::{StatsRow, StatsTable};
use crate::store::{CreateRequest, Store, StoreError, SubmitOutcome};

pub const SCHEMA: &str = include_str!("../api/schema.json");
pub const IDEMPOTENCY_HEADER: &str = "idempotency-key";
pub const STATS_COLUMNS: [&str; 3] = ["first_turn_rate", "avg_attempts", "avg_time_s"];

#[derive(Debug, Clone, Default)]
pub struct ApiConfig {
    /// When set, every request except CORS preflight must carry
    /// `Authorization: Bearer <token>`.
    pub token: Option<String>,
    /// Allowed UI origin; any origin when unset.
    pub cors_origin: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateBody {
    pub game: Option<String>,
    pub difficulty: Option<String>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuzzleView {
    pub index: usize,
    pub instance_id: String,
    pub game: GameKind,
    pub difficulty: Difficulty,
    pub prompt: String,
    pub attempts: u32,
    pub elapsed_s: f64,
    pub solved: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionCreated {
    pub session_id: String,
    pub count: usize,
    pub index: usize,
    pub puzzle: PuzzleView,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuzzleResponse {
    pub session_id: String,
    pub count: usize,
    pub index: usize,
    pub complete: bool,
    pub puzzle: Option<PuzzleView>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnswerBody {
    pub answer: String,
    pub index: Option<usize>,
    pub idempotency_key: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnswerResponse {
    pub index: usize,
    pub solved: bool,
    pub feedback: Vec<String>,
    pub attempts: u32,
    pub advance: bool,
    pub complete: bool,
    pub elapsed_s: Option<f64>,
    pub replayed: bool,
}

#[derive(Debug, Deserialize)]
pub struct StatsQuery {
    pub scope: Option<String>,
    pub session: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsResponse {
    pub scope: String,
    pub session_id: Option<String>,
    pub columns: Vec<String>,
    pub rows: Vec<StatsRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn bad_request(message: impl Into<String>) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, code: "bad_request", message: message.into() }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let (status, code) = match &e {
            StoreError::UnknownSession(_) => (StatusCode::NOT_FOUND, "unknown_session"),
            StoreError::SessionComplete => (StatusCode::CONFLICT, "session_complete"),
            StoreError::PuzzleSolved { .. } => (StatusCode::CONFLICT, "puzzle_solved"),
            StoreError::PuzzleNotCurrent { .. } => (StatusCode::CONFLICT, "puzzle_not_current"),
            StoreError::IdempotencyConflict => (StatusCode::UNPROCESSABLE_ENTITY, "idempotency_conflict"),
            StoreError::InvalidCount(_) => (StatusCode::BAD_REQUEST, "invalid_count"),
            StoreError::NotEnoughPuzzles { .. } => (StatusCode::BAD_REQUEST, "no_matching_puzzles"),
            StoreError::Generate(_) | StoreError::Io(_) | StoreError::Corrupt { .. } => {
                (StatusCode::INTERNAL_SERVER_ERROR, "storage")
            }
        };
        ApiError { status, code, message: e.to_string() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody { error: self.code.to_string(), message: self.message };
        (self.status, Json(body)).into_response()
    }
}

fn view(state: &SessionState, index: usize, now: f64) -> PuzzleView {
    let inst = &state.puzzles[index];
    let p = &state.progress[index];
    PuzzleView {
        index,
        instance_id: inst.id.clone(),
        game: inst.game,
        difficulty: inst.difficulty,
        prompt: inst.prompt.clone(),
        attempts: p.attempts,
        elapsed_s: p.elapsed(now),
        solved: p.solved_at.is_some(),
    }
}

async fn create_session(
    State(store): State<Arc<Store>>,
    body: Option<Json<CreateBody>>,
) -> Result<(StatusCode, Json<SessionCreated>), ApiError> {
    let body = body.map(|Json(b)| b).unwrap_or_default();
    let game = body
        .game
        .as_deref()
        .map(str::parse::<GameKind>)
        .transpose()
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let difficulty = body
        .difficulty
        .as_deref()
        .map(str::parse::<Difficulty>)
        .transpose()
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let req = CreateRequest { game, difficulty, seed: body.seed, count: body.count };
    let state = store.create(&req)?;
    let created = SessionCreated {
        session_id: state.id.clone(),
        count: state.puzzles.len(),
        index: 0,
        puzzle: view(&state, 0, store.now()),
    };
    Ok((StatusCode::CREATED, Json(created)))
}

async fn current_puzzle(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
) -> Result<Json<PuzzleResponse>, ApiError> {
    let state = store.view(&id)?;
    let complete = state.is_complete();
    Ok(Json(PuzzleResponse {
        session_id: state.id.clone(),
        count: state.puzzles.len(),
        index: state.current,
        complete,
        puzzle: (!complete).then(|| view(&state, state.current, store.now())),
    }))
}

async fn submit_answer(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    headers: HeaderMap,
    Json(body): Json<AnswerBody>,
) -> Result<Json<AnswerResponse>, ApiError> {
    let header_key = match headers.get(IDEMPOTENCY_HEADER) {
        Some(v) => Some(
            v.to_str()
                .map_err(|_| ApiError::bad_request("idempotency key must be visible ASCII"))?
                .to_string(),
        ),
        None => None,
    };
    let key = header_key.or(body.idempotency_key);
    let out: SubmitOutcome = store.submit(&id, &body.answer, body.index, key.as_deref())?;
    Ok(Json(AnswerResponse {
        index: out.index,
        solved: out.solved,
        feedback: out.feedback,
        attempts: out.attempts,
        advance: out.advance,
        complete: out.complete,
        elapsed_s: out.elapsed_s,
        replayed: out.replayed,
    }))
}

async fn stats(
    State(store): State<Arc<Store>>,
    Query(q): Query<StatsQuery>,
) -> Result<Json<StatsResponse>, ApiError> {
    let scope = q.scope.as_deref().unwrap_or("global");
    let table: StatsTable = match (scope, &q.session) {
        ("global", _) => store.global_stats(),
        ("session", Some(id)) => store.session_stats(id)?,
        ("session", None) => return Err(ApiError::bad_request("scope=session needs a session parameter")),
        (other, _) => return Err(ApiError::bad_request(format!("unknown scope {other:?}"))),
    };
    Ok(Json(StatsResponse {
        scope: scope.to_string(),
        session_id: if scope == "session" { q.session } else { None },
        columns: STATS_COLUMNS.map(String::from).to_vec(),
        rows: table.rows,
    }))
}

async fn schema() -> impl IntoResponse {
    ([(header::CONTENT_TYPE, "application/json")], SCHEMA)
}

async fn health() -> &'static str {
    "ok"
}

async fn require_token(State(token): State<Arc<String>>, req: Request, next: Next) -> Response {
    let expected = format!("Bearer {token}");
    let ok = req
        .headers()
        .get(header::AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v == expected);
    if ok {
        next.run(req).await
    } else {
        ApiError { status: StatusCode::UNAUTHORIZED, code: "unauthorized", message: "missing or wrong token".into() }
            .into_response()
    }
}

pub fn router(store: Arc<Store>, config: &ApiConfig) -> Router {
    let mut app = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/puzzle", get(current_puzzle))
        .route("/sessions/{id}/answer", post(submit_answer))
        .route("/stats", get(stats))
        .route("/schema", get(schema))
        .route("/health", get(health))
        .with_state(store);
    if let Some(token) = &config.token {
        app = app.layer(middleware::from_fn_with_state(Arc::new(token.clone()), require_token));
    }
    let origin = match config.cors_origin.as_deref().map(HeaderValue::from_str) {
        Some(Ok(v)) => AllowOrigin::exact(v),
        _ => AllowOrigin::from(Any),
    };
    let cors = CorsLayer::new()
        .allow_origin(origin)
        .allow_methods(Any)
        .allow_headers([header::CONTENT_TYPE, header::AUTHORIZATION, header::HeaderName::from_static(IDEMPOTENCY_HEADER)]);
    app.layer(cors)
}

/// Serves until the process exits.
pub async fn serve(addr: SocketAddr, store: Arc<Store>, config: ApiConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    serve_on(listener, store, config).await
}

pub async fn serve_on(listener: tokio::net::TcpListener, store: Arc<Store>, config: ApiConfig) -> std::io::Result<()> {
    axum::serve(listener, router(store, &config)).await
}
