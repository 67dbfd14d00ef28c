//! HTTP+JSON API over tableau sessions and one-shot checks.
//!
//! | method | path                          | body                  |
//! |--------|-------------------------------|-----------------------|
//! | POST   | `/api/sessions`               | `{mode, formulas}`    |
//! | GET    | `/api/sessions/{id}`          |                       |
//! | POST   | `/api/sessions/{id}/step`     | `{nodeId, leafId}`    |
//! | POST   | `/api/sessions/{id}/auto`     |                       |
//! | GET    | `/api/sessions/{id}/analysis` |                       |
//! | POST   | `/api/check`                  | `{kind, formulas}`    |
//!
//! Every error body is an [`ApiError`].

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tableaux_core::check::{run_check, CheckError, CheckRequest};
use tableaux_core::formula::Formula;
use tableaux_core::render::{venn_regions, MAX_VENN_ATOMS};
use tableaux_core::session::{Mode, ModeKind, Session, SessionError, SessionStore};
use tableaux_core::tableau::NodeId;
use tableaux_core::TruthTable;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};
use tower_http::services::{ServeDir, ServeFile};

/// Analyses include a truth table with per-row states up to this many atoms.
pub const MAX_ANALYSIS_TABLE_ATOMS: usize = 10;

#[derive(Clone, Debug, Default)]
pub struct Config {
    /// Origins allowed by CORS; `*` allows any. Empty disables CORS headers.
    pub cors_origins: Vec<String>,
    /// Static UI bundle served under `/`.
    pub ui_dir: Option<PathBuf>,
    /// Directory for session snapshots; sessions are memory-only without it.
    pub snapshot_dir: Option<PathBuf>,
}

/// Error body shared by every failing endpoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip)]
    pub status: u16,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            code: code.to_string(),
            message: message.into(),
            detail: None,
            status: status.as_u16(),
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(rejection: JsonRejection) -> Self {
        match rejection {
            JsonRejection::JsonDataError(e) => ApiError::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                "INVALID_REQUEST",
                e.body_text(),
            ),
            other => ApiError::new(StatusCode::BAD_REQUEST, "BAD_REQUEST", other.body_text()),
        }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match &e {
            SessionError::UnknownSession(_) => StatusCode::NOT_FOUND,
            SessionError::SessionFinished | SessionError::SessionNotFinished => {
                StatusCode::CONFLICT
            }
            SessionError::Io(_) | SessionError::Json(_) | SessionError::SnapshotMismatch => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        let detail = match &e {
            SessionError::Parse { index, source } => {
                Some(json!({ "index": index, "position": source.position() }))
            }
            _ => None,
        };
        let mut err = ApiError::new(status, e.code(), e.to_string());
        err.detail = detail;
        err
    }
}

impl From<CheckError> for ApiError {
    fn from(e: CheckError) -> Self {
        let mut err = ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.code(), e.to_string());
        if let CheckError::Parse { index, source } = &e {
            err.detail = Some(json!({ "index": index, "position": source.position() }));
        }
        err
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    pub mode: ModeKind,
    pub formulas: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StepRequest {
    pub node_id: NodeId,
    pub leaf_id: NodeId,
}

/// Session JSON as stored in snapshots, plus the legal next steps.
pub fn session_json(session: &Session) -> Value {
    let mut value = serde_json::to_value(session).expect("sessions serialize");
    let steps: Vec<Value> = session
        .hints()
        .into_iter()
        .map(|(node, leaf, rule)| {
            json!({ "nodeId": node, "leafId": leaf, "rule": rule, "family": rule.family() })
        })
        .collect();
    value["legalSteps"] = Value::Array(steps);
    value
}

/// The formula the tableau decides: the conjunction of its initial branch.
fn root_formula(session: &Session) -> Formula {
    Formula::conjunction(session.mode.initial_formulas()).expect("modes have formulas")
}

/// Session analysis plus Venn shading and a truth table whose rows list the
/// tableau states consistent with them.
pub fn analysis_json(session: &Session) -> Result<Value, SessionError> {
    let analysis = session.analyze()?;
    let mut value = serde_json::to_value(&analysis).expect("analyses serialize");
    let root = root_formula(session);
    let atoms = root.atoms();
    value["vennRegions"] = if atoms.len() <= MAX_VENN_ATOMS {
        serde_json::to_value(venn_regions(&root).expect("atom count checked")).unwrap()
    } else {
        Value::Null
    };
    value["truthTable"] = if atoms.len() <= MAX_ANALYSIS_TABLE_ATOMS {
        let table = TruthTable::new(&root).expect("atom count checked");
        let rows: Vec<Value> = table
            .rows
            .iter()
            .map(|row| {
                let mut r = serde_json::to_value(row).unwrap();
                r["states"] = json!(session.tableau.states_for(&table.valuation(row)));
                r
            })
            .collect();
        json!({ "formula": root, "atoms": table.atoms, "rows": rows })
    } else {
        Value::Null
    };
    Ok(value)
}

type AppState = Arc<SessionStore>;

async fn create_session(
    State(store): State<AppState>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<Value>)> {
    let Json(req) = body?;
    let mode = Mode::from_texts(req.mode, &req.formulas)?;
    let session = store.create(mode)?;
    Ok((
        StatusCode::CREATED,
        Json(json!({ "session": session_json(&session) })),
    ))
}

async fn get_session(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<Value>> {
    let session = store.get(&id)?;
    Ok(Json(json!({ "session": session_json(&session) })))
}

async fn step_session(
    State(store): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<StepRequest>, JsonRejection>,
) -> ApiResult<Json<Value>> {
    let Json(req) = body?;
    let (delta, session) = store
        .update(&id, |s| s.step(req.node_id, req.leaf_id))
        .map_err(|e| {
            let step_error = matches!(e, SessionError::Step(_));
            let err = ApiError::from(e);
            if step_error {
                err.with_detail(json!({ "nodeId": req.node_id, "leafId": req.leaf_id }))
            } else {
                err
            }
        })?;
    Ok(Json(
        json!({ "session": session_json(&session), "delta": delta }),
    ))
}

async fn auto_session(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<Value>> {
    let (steps, session) = store.update(&id, |s| Ok(s.auto_finish()))?;
    Ok(Json(
        json!({ "session": session_json(&session), "steps": steps }),
    ))
}

async fn session_analysis(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<Value>> {
    let session = store.get(&id)?;
    Ok(Json(json!({ "analysis": analysis_json(&session)? })))
}

async fn check(body: Result<Json<CheckRequest>, JsonRejection>) -> ApiResult<Json<Value>> {
    let Json(req) = body?;
    Ok(Json(run_check(&req)?))
}

async fn api_not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "NOT_FOUND", "no such endpoint")
}

fn cors_layer(origins: &[String]) -> Option<CorsLayer> {
    if origins.is_empty() {
        return None;
    }
    let allow = if origins.iter().any(|o| o == "*") {
        AllowOrigin::from(Any)
    } else {
        AllowOrigin::list(origins.iter().filter_map(|o| HeaderValue::from_str(o).ok()))
    };
    Some(
        CorsLayer::new()
            .allow_origin(allow)
            .allow_methods([Method::GET, Method::POST])
            .allow_headers([header::CONTENT_TYPE]),
    )
}

/// The full application: API routes, optional CORS and optional static UI.
pub fn router(store: Arc<SessionStore>, config: &Config) -> Router {
    let api = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/step", post(step_session))
        .route("/sessions/{id}/auto", post(auto_session))
        .route("/sessions/{id}/analysis", get(session_analysis))
        .route("/check", post(check))
        .fallback(api_not_found);
    let mut app = Router::new().nest("/api", api).with_state(store);
    if let Some(dir) = &config.ui_dir {
        let index = ServeFile::new(dir.join("index.html"));
        app = app.fallback_service(ServeDir::new(dir).fallback(index));
    }
    if let Some(cors) = cors_layer(&config.cors_origins) {
        app = app.layer(cors);
    }
    app
}

pub fn store_for(config: &Config) -> std::io::Result<Arc<SessionStore>> {
    Ok(Arc::new(match &config.snapshot_dir {
        Some(dir) => SessionStore::with_snapshot_dir(dir)?,
        None => SessionStore::new(),
    }))
}

/// Binds `addr` and serves until Ctrl-C.
pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let app = router(store_for(&config)?, &config);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
