//! HTTP service for interactive elicitation: a client opens a session, edits
//! a draft problem one comparison at a time, and fetches the matrix and the
//! solution once every consecutive pair is judged.

use std::collections::HashMap;
use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, patch, post, put};
use axum::{Json, Router};
use dcfpr_core::{build_dcfpr, Credibility, Error as CoreError, TriangulationMode};
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::sync::{Mutex, RwLock};
use tower_http::services::ServeDir;
use uuid::Uuid;

use crate::document::{
    from_json, judgment_from_components, ComparisonDoc, ComponentDoc, Diagnostic, DocumentError,
    MatrixDocument, ProblemDocument, SolutionDocument,
};

#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub port: u16,
    pub static_dir: Option<PathBuf>,
    pub session_ttl: Duration,
}

#[derive(Debug, Default)]
struct Session {
    draft: Option<ProblemDocument>,
    /// Cleared whenever the draft changes.
    last_solution: Option<SolutionDocument>,
    touched: Option<Instant>,
}

type SessionMap = HashMap<Uuid, Arc<Mutex<Session>>>;

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<RwLock<SessionMap>>,
    ttl: Duration,
}

impl AppState {
    pub fn new(ttl: Duration) -> Self {
        Self {
            sessions: Arc::default(),
            ttl,
        }
    }

    /// Drops sessions idle for longer than the TTL; returns how many.
    pub async fn purge_expired(&self) -> usize {
        let now = Instant::now();
        let mut expired = Vec::new();
        let mut map = self.sessions.write().await;
        for (id, s) in map.iter() {
            // A locked session is in use, hence not idle.
            if let Ok(s) = s.try_lock() {
                if s.touched.is_some_and(|t| now.duration_since(t) > self.ttl) {
                    expired.push(*id);
                }
            }
        }
        for id in &expired {
            map.remove(id);
        }
        expired.len()
    }

    async fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let not_found = || ApiError::new(StatusCode::NOT_FOUND, format!("unknown session {id}"));
        let id = Uuid::parse_str(id).map_err(|_| not_found())?;
        let session = self
            .sessions
            .read()
            .await
            .get(&id)
            .cloned()
            .ok_or_else(not_found)?;
        {
            let mut s = session.lock().await;
            if s.touched.is_some_and(|t| t.elapsed() > self.ttl) {
                drop(s);
                self.sessions.write().await.remove(&id);
                return Err(not_found());
            }
            s.touched = Some(Instant::now());
        }
        Ok(session)
    }
}

#[derive(Debug)]
struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            body: json!({ "error": message.into() }),
        }
    }

    fn diagnostics(status: StatusCode, errors: &[Diagnostic]) -> Self {
        Self {
            status,
            body: json!({ "errors": errors }),
        }
    }
}

impl From<DocumentError> for ApiError {
    fn from(e: DocumentError) -> Self {
        ApiError::diagnostics(StatusCode::BAD_REQUEST, &e.diagnostics())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}/problem", put(put_problem))
        .route(
            "/api/sessions/{id}/comparisons/{k}",
            patch(patch_comparison),
        )
        .route("/api/sessions/{id}/matrix", get(get_matrix))
        .route("/api/sessions/{id}/solution", get(get_solution))
        .with_state(state)
}

pub fn app(config: &ServerConfig) -> Router {
    let router = router(AppState::new(config.session_ttl));
    match &config.static_dir {
        Some(dir) => router.fallback_service(ServeDir::new(dir)),
        None => router,
    }
}

pub async fn serve(config: ServerConfig, log: &mut dyn Write) -> std::io::Result<()> {
    let state = AppState::new(config.session_ttl);
    let sweeper = state.clone();
    let period = config
        .session_ttl
        .clamp(Duration::from_secs(1), Duration::from_secs(300));
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(period);
        loop {
            tick.tick().await;
            sweeper.purge_expired().await;
        }
    });
    let mut app = router(state);
    if let Some(dir) = &config.static_dir {
        app = app.fallback_service(ServeDir::new(dir));
    }
    let addr = SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    writeln!(log, "listening on http://{}", listener.local_addr()?)?;
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok" }))
}

async fn create_session(State(state): State<AppState>) -> impl IntoResponse {
    let id = Uuid::new_v4();
    let session = Session {
        touched: Some(Instant::now()),
        ..Session::default()
    };
    state
        .sessions
        .write()
        .await
        .insert(id, Arc::new(Mutex::new(session)));
    (StatusCode::CREATED, Json(json!({ "id": id.to_string() })))
}

fn draft_status(draft: &ProblemDocument) -> Value {
    let check = draft.check();
    json!({
        "solvable": check.is_complete(),
        "diagnostics": check.missing_diagnostics(),
    })
}

fn body_text(body: &Bytes) -> ApiResult<&str> {
    std::str::from_utf8(body)
        .map_err(|_| ApiError::diagnostics(StatusCode::BAD_REQUEST, &[utf8_diagnostic()]))
}

fn utf8_diagnostic() -> Diagnostic {
    DocumentError::Parse("body is not UTF-8".into())
        .diagnostics()
        .remove(0)
}

async fn put_problem(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let session = state.session(&id).await?;
    let doc: ProblemDocument = from_json(body_text(&body)?)?;
    let check = doc.check();
    if !check.errors.is_empty() {
        return Err(ApiError::diagnostics(
            StatusCode::BAD_REQUEST,
            &check.errors,
        ));
    }
    let status = draft_status(&doc);
    let mut s = session.lock().await;
    s.draft = Some(doc);
    s.last_solution = None;
    Ok(Json(status))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComparisonPatch {
    components: Vec<ComponentDoc>,
}

async fn patch_comparison(
    State(state): State<AppState>,
    Path((id, k)): Path<(String, String)>,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let session = state.session(&id).await?;
    let mut s = session.lock().await;
    s.last_solution = None;
    let Some(draft) = s.draft.as_mut() else {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            "no problem uploaded for this session",
        ));
    };
    let pairs = draft.alternatives.len().saturating_sub(1);
    let k: usize = match k.parse() {
        Ok(k) if (1..=pairs).contains(&k) => k,
        _ => {
            return Err(ApiError::new(
                StatusCode::BAD_REQUEST,
                format!("comparison index {k:?} outside 1..={pairs}"),
            ))
        }
    };
    let patch: ComparisonPatch = from_json(body_text(&body)?)?;
    judgment_from_components(&patch.components, "/components")
        .map_err(|d| ApiError::diagnostics(StatusCode::BAD_REQUEST, &d))?;
    let cmp = ComparisonDoc {
        left: k,
        right: k + 1,
        components: patch.components,
    };
    match draft.comparisons.iter_mut().find(|c| c.left == k) {
        Some(existing) => *existing = cmp,
        None => {
            draft.comparisons.push(cmp);
            draft.comparisons.sort_by_key(|c| c.left);
        }
    }
    Ok(Json(draft_status(draft)))
}

async fn complete_problem(session: &Mutex<Session>) -> ApiResult<dcfpr_core::Problem> {
    let s = session.lock().await;
    let Some(draft) = s.draft.as_ref() else {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            "no problem uploaded for this session",
        ));
    };
    let check = draft.check();
    if !check.is_complete() {
        let mut diags = check.errors.clone();
        diags.extend(check.missing_diagnostics());
        return Err(ApiError::diagnostics(StatusCode::CONFLICT, &diags));
    }
    draft.to_problem().map_err(ApiError::from)
}

async fn get_matrix(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<MatrixDocument>> {
    let session = state.session(&id).await?;
    let problem = complete_problem(&session).await?;
    Ok(Json(MatrixDocument::new(
        problem.alternatives(),
        &build_dcfpr(&problem),
    )))
}

async fn get_solution(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(query): Query<HashMap<String, String>>,
) -> ApiResult<Response> {
    let session = state.session(&id).await?;
    let (credibility, mode) = solution_query(&query)?;
    let problem = complete_problem(&session).await?;
    match crate::solve_problem(&problem, credibility, mode) {
        Ok(doc) => {
            session.lock().await.last_solution = Some(doc.clone());
            Ok(Json(doc).into_response())
        }
        Err(CoreError::LambdaTooSmall { lambda, lambda_min }) => Ok((
            StatusCode::UNPROCESSABLE_ENTITY,
            Json(json!({
                "error": format!("lambda {lambda} is below lambda_min {lambda_min}"),
                "lambda": lambda,
                "lambda_min": lambda_min,
            })),
        )
            .into_response()),
        Err(e @ CoreError::SizeLimit { .. }) => Err(ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            e.to_string(),
        )),
        Err(e) => Err(ApiError::new(StatusCode::BAD_REQUEST, e.to_string())),
    }
}

fn solution_query(query: &HashMap<String, String>) -> ApiResult<(Credibility, TriangulationMode)> {
    let bad = |m: String| ApiError::new(StatusCode::BAD_REQUEST, m);
    if let Some(key) = query
        .keys()
        .find(|k| !matches!(k.as_str(), "lambda" | "credibility" | "mode"))
    {
        return Err(bad(format!("unknown query parameter {key:?}")));
    }
    let credibility = match (query.get("lambda"), query.get("credibility")) {
        (Some(_), Some(_)) => {
            return Err(bad("give either lambda or credibility, not both".into()))
        }
        (Some(l), None) => match l.parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Credibility::Custom(x),
            _ => return Err(bad(format!("lambda must be a positive number, got {l:?}"))),
        },
        (None, Some(c)) => crate::parse_credibility(c).ok_or_else(|| {
            bad(format!(
                "credibility must be high, medium or low, got {c:?}"
            ))
        })?,
        (None, None) => Credibility::High,
    };
    let mode = match query.get("mode") {
        Some(m) => crate::parse_mode(m)
            .ok_or_else(|| bad(format!("mode must be auto, exact or heuristic, got {m:?}")))?,
        None => TriangulationMode::Auto,
    };
    Ok((credibility, mode))
}
