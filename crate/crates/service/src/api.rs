//! JSON over HTTP. Every error body is `{"error": {"code", "message"}}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{FromRequestParts, Path, State};
use axum::http::request::Parts;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response as HttpResponse};
use axum::routing::{get, post};
use axum::{Json, Router};
use chrono::Utc;
use cubetutor_audit::corpus::{read_rows, sentences_from_rows};
use cubetutor_audit::scorer::builtin_scorer;
use cubetutor_audit::{expand_templates, run_audit, AuditParams, MetricKind, SentimentScorer, TemplateCorpus};
use cubetutor_core::nlg::{render_macro, Register};
use cubetutor_core::{check_reachable, CubeState};
use cubetutor_dialogue::policy::LEAKAGE_REFUSAL;
use cubetutor_dialogue::{
    summarize_performance, DialogueEngine, DialogueState, Response, SentimentLabel, Speaker, TranscriptRecord,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::Config;
use crate::error::ServiceError;
use crate::store::{AuditRecord, ReportRecord, SessionRecord, SessionSetup, Stores, TranscriptLine};

pub const MAX_MESSAGE_CHARS: usize = 2000;

#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
        }
    }

    fn bad_request(code: &'static str, message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, code, message)
    }

    fn not_found(what: &str) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, "not_found", format!("no such {what}"))
    }

    fn forbidden(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::FORBIDDEN, "forbidden", message)
    }
}

impl From<ServiceError> for ApiError {
    fn from(e: ServiceError) -> Self {
        tracing::error!(error = %e, "store failure");
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "storage", "the service could not read or write its data")
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::new(e.status(), "bad_request", e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> HttpResponse {
        let body = json!({ "error": { "code": self.code, "message": self.message } });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

pub struct AppState {
    pub config: Config,
    pub engine: DialogueEngine,
    pub stores: Stores,
    /// Serializes requests within a session; distinct sessions run concurrently.
    sessions: Mutex<HashMap<String, Arc<tokio::sync::Mutex<Option<SessionRecord>>>>>,
}

impl AppState {
    pub fn new(config: Config, engine: DialogueEngine, stores: Stores) -> Self {
        AppState {
            config,
            engine,
            stores,
            sessions: Mutex::default(),
        }
    }

    fn session_slot(&self, id: &str) -> Arc<tokio::sync::Mutex<Option<SessionRecord>>> {
        let mut map = self.sessions.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(id.to_string()).or_default().clone()
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/messages", post(post_message))
        .route("/sessions/{id}/cube", get(get_cube).put(put_cube))
        .route("/users/me/summary", get(my_summary))
        .route("/users/{name}/summary", get(user_summary))
        .route("/macros", get(list_macros))
        .route("/audits", post(create_audit))
        .route("/audits/{id}", get(get_audit))
        .fallback(|| async { ApiError::not_found("endpoint") })
        .with_state(state)
}

/// The user a bearer token maps to.
pub struct AuthUser(pub String);

impl FromRequestParts<Arc<AppState>> for AuthUser {
    type Rejection = ApiError;

    async fn from_request_parts(parts: &mut Parts, state: &Arc<AppState>) -> ApiResult<Self> {
        let unauthorized = || ApiError::new(StatusCode::UNAUTHORIZED, "unauthorized", "a valid bearer token is required");
        let value = parts
            .headers
            .get(header::AUTHORIZATION)
            .and_then(|v| v.to_str().ok())
            .ok_or_else(unauthorized)?;
        let token = value.strip_prefix("Bearer ").ok_or_else(unauthorized)?;
        let user = state.config.user_for_token(token.trim()).ok_or_else(unauthorized)?;
        Ok(AuthUser(user.to_string()))
    }
}

fn parse_cube(facelets: &str) -> ApiResult<CubeState> {
    let cube = CubeState::parse_facelets(facelets).map_err(|e| ApiError::bad_request("invalid_facelets", e.to_string()))?;
    cube.validate()
        .map_err(|e| ApiError::bad_request("invalid_facelets", e.to_string()))?;
    check_reachable(&cube).map_err(|e| ApiError::bad_request("unreachable_cube", e.to_string()))?;
    Ok(cube)
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    #[serde(default)]
    pub facelets: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SessionCreated {
    pub id: String,
    pub facelets: String,
    pub greeting: String,
}

async fn create_session(
    State(app): State<Arc<AppState>>,
    AuthUser(user): AuthUser,
    body: Option<Json<CreateSession>>,
) -> ApiResult<(StatusCode, Json<SessionCreated>)> {
    let body = body.map(|Json(b)| b).unwrap_or_default();
    let cube = match &body.facelets {
        Some(f) => parse_cube(f)?,
        None => CubeState::solved(),
    };
    let id = uuid::Uuid::new_v4().simple().to_string();
    let now = Utc::now();
    let record = SessionRecord {
        id: id.clone(),
        user: user.clone(),
        state: DialogueState::new(id.clone(), user.clone(), cube),
        created: now,
        updated: now,
    };
    app.stores.transcripts.append(
        &id,
        &TranscriptLine::Setup(SessionSetup {
            timestamp: now,
            session: id.clone(),
            user,
            cube,
            profiles: Vec::new(),
            macros: Vec::new(),
        }),
    )?;
    app.stores.sessions.put(&record)?;
    *app.session_slot(&id).lock().await = Some(record);
    Ok((
        StatusCode::CREATED,
        Json(SessionCreated {
            id,
            facelets: cube.format_facelets(),
            greeting: cubetutor_dialogue::engine::GREETING.to_string(),
        }),
    ))
}

/// Runs `f` on the caller's session with the session lock held.
async fn with_session<T>(
    app: &AppState,
    user: &str,
    id: &str,
    f: impl FnOnce(&mut SessionRecord) -> ApiResult<T>,
) -> ApiResult<T> {
    let slot = app.session_slot(id);
    let mut guard = slot.lock().await;
    if guard.is_none() {
        *guard = app.stores.sessions.get(id)?;
    }
    let record = guard.as_mut().ok_or_else(|| ApiError::not_found("session"))?;
    if record.user != user {
        return Err(ApiError::forbidden("this session belongs to another user"));
    }
    f(record)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostMessage {
    pub text: String,
}

#[derive(Debug, Serialize)]
pub struct MessageReply {
    pub sentiment: SentimentLabel,
    pub strike_count: u32,
    pub responses: Vec<Response>,
}

async fn post_message(
    State(app): State<Arc<AppState>>,
    AuthUser(user): AuthUser,
    Path(id): Path<String>,
    body: Result<Json<PostMessage>, JsonRejection>,
) -> ApiResult<Json<MessageReply>> {
    let Json(body) = body?;
    if body.text.chars().count() > MAX_MESSAGE_CHARS {
        return Err(ApiError::bad_request(
            "message_too_long",
            format!("messages are limited to {MAX_MESSAGE_CHARS} characters"),
        ));
    }
    with_session(&app, &user, &id, |record| {
        let turn = app.engine.respond(&mut record.state, &body.text, &app.stores.profiles);
        let now = Utc::now();
        let log = |speaker, text: &str, sentiment, intent: Option<String>| {
            app.stores.transcripts.append(
                &id,
                &TranscriptLine::Message(TranscriptRecord {
                    timestamp: now,
                    session: id.clone(),
                    speaker,
                    text: text.to_string(),
                    sentiment,
                    intent,
                    strike_count: turn.strike_count,
                }),
            )
        };
        log(Speaker::User, &body.text, Some(turn.sentiment.label), Some(turn.intent.name().to_string()))?;
        for r in &turn.responses {
            log(Speaker::Bot, &r.text, None, None)?;
        }
        if turn.report {
            app.stores.reports.append(&ReportRecord {
                id: uuid::Uuid::new_v4().simple().to_string(),
                timestamp: now,
                session: id.clone(),
                user: user.clone(),
                strike_count: turn.strike_count,
                text: body.text.clone(),
                matched_terms: turn.matched_terms.clone(),
                teacher_visible: true,
            })?;
        }
        record.updated = now;
        app.stores.sessions.put(record)?;
        Ok(Json(MessageReply {
            sentiment: turn.sentiment.label,
            strike_count: turn.strike_count,
            responses: turn.responses,
        }))
    })
    .await
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeBody {
    pub facelets: String,
}

async fn get_cube(
    State(app): State<Arc<AppState>>,
    AuthUser(user): AuthUser,
    Path(id): Path<String>,
) -> ApiResult<Json<CubeBody>> {
    with_session(&app, &user, &id, |record| {
        Ok(Json(CubeBody {
            facelets: record.state.cube.format_facelets(),
        }))
    })
    .await
}

async fn put_cube(
    State(app): State<Arc<AppState>>,
    AuthUser(user): AuthUser,
    Path(id): Path<String>,
    body: Result<Json<CubeBody>, JsonRejection>,
) -> ApiResult<Json<CubeBody>> {
    let Json(body) = body?;
    with_session(&app, &user, &id, |record| {
        let cube = parse_cube(&body.facelets)?;
        let now = Utc::now();
        app.stores.transcripts.append(
            &id,
            &TranscriptLine::CubeSet {
                timestamp: now,
                session: id.clone(),
                cube,
            },
        )?;
        record.state.set_cube(cube);
        record.updated = now;
        app.stores.sessions.put(record)?;
        Ok(Json(CubeBody {
            facelets: cube.format_facelets(),
        }))
    })
    .await
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub username: String,
    pub games_played: u32,
    pub avg_game_minutes: Option<f64>,
    pub games_won: u32,
    pub text: String,
}

fn own_summary(app: &AppState, user: &str) -> ApiResult<Json<Summary>> {
    let profile = app
        .stores
        .profiles
        .get(user)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "no_profile", cubetutor_dialogue::policy::NO_HISTORY))?;
    Ok(Json(Summary {
        text: summarize_performance(&profile),
        username: profile.username,
        games_played: profile.games_played,
        avg_game_minutes: profile.avg_game_minutes,
        games_won: profile.games_won,
    }))
}

async fn my_summary(State(app): State<Arc<AppState>>, AuthUser(user): AuthUser) -> ApiResult<Json<Summary>> {
    own_summary(&app, &user)
}

/// Anyone else's summary is refused the same way whether or not they exist.
async fn user_summary(
    State(app): State<Arc<AppState>>,
    AuthUser(user): AuthUser,
    Path(name): Path<String>,
) -> ApiResult<Json<Summary>> {
    if name.eq_ignore_ascii_case(&user) {
        own_summary(&app, &user)
    } else {
        Err(ApiError::forbidden(LEAKAGE_REFUSAL))
    }
}

#[derive(Debug, Serialize)]
pub struct MacroListing {
    pub name: String,
    pub moves: String,
    pub complexity: usize,
    pub precondition: String,
    pub effect: String,
    pub held_out_samples: usize,
    pub violations: usize,
    pub explanation: Vec<String>,
    pub simplified: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct LibraryListing {
    pub goal: Option<String>,
    pub macros: Vec<MacroListing>,
}

async fn list_macros(State(app): State<Arc<AppState>>, AuthUser(_): AuthUser) -> ApiResult<Json<LibraryListing>> {
    let Some(library) = app.engine.library(crate::library::TEACHING_GOAL) else {
        return Ok(Json(LibraryListing {
            goal: None,
            macros: Vec::new(),
        }));
    };
    let render = |m, register| -> ApiResult<Vec<String>> {
        let text = render_macro(m, register).map_err(|e| {
            ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "render", e.to_string())
        })?;
        Ok(text.sentences.iter().map(|s| s.text.clone()).collect())
    };
    let mut macros = Vec::new();
    for m in library.macros() {
        macros.push(MacroListing {
            name: m.name.clone(),
            moves: m.sequence.to_string(),
            complexity: m.complexity,
            precondition: m.precondition.to_string(),
            effect: m.effect.description(),
            held_out_samples: m.validation.samples,
            violations: m.validation.violations,
            explanation: render(m, Register::Standard)?,
            simplified: render(m, Register::Simplified)?,
        });
    }
    Ok(Json(LibraryListing {
        goal: Some(crate::library::TEACHING_GOAL.to_string()),
        macros,
    }))
}

fn default_systems() -> Vec<String> {
    vec!["lexicon".into(), "constant".into()]
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateAudit {
    /// CSV with `template_id,template,person,gender,emotion_word,emotion_category`.
    pub corpus: String,
    pub metric: MetricKind,
    #[serde(default = "default_systems")]
    pub systems: Vec<String>,
    /// Expand the cross product of templates, persons and words instead of
    /// using the rows as given.
    #[serde(default)]
    pub expand: bool,
}

#[derive(Debug, Serialize)]
pub struct AuditCreated {
    pub id: String,
    pub metric: MetricKind,
    pub rating: cubetutor_audit::RatingReport,
}

pub fn audit_corpus(
    csv: &str,
    expand: bool,
    system_names: &[String],
) -> Result<cubetutor_audit::AuditReport, cubetutor_audit::AuditError> {
    let rows = read_rows(csv.as_bytes())?;
    let sentences = if expand {
        expand_templates(&TemplateCorpus::from_rows(&rows)?)
    } else {
        sentences_from_rows(&rows)?
    };
    let systems = system_names
        .iter()
        .map(|n| builtin_scorer(n))
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&dyn SentimentScorer> = systems.iter().map(|b| b.as_ref()).collect();
    run_audit(&sentences, &refs, &AuditParams::default())
}

async fn create_audit(
    State(app): State<Arc<AppState>>,
    AuthUser(user): AuthUser,
    body: Result<Json<CreateAudit>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<AuditCreated>)> {
    let Json(body) = body?;
    let report = audit_corpus(&body.corpus, body.expand, &body.systems)
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "audit_failed", e.to_string()))?;
    let record = AuditRecord {
        id: uuid::Uuid::new_v4().simple().to_string(),
        owner: user,
        created: Utc::now(),
        metric: body.metric,
        report,
    };
    app.stores.audits.put(&record)?;
    Ok((
        StatusCode::CREATED,
        Json(AuditCreated {
            rating: record.report.rating(record.metric).clone(),
            id: record.id,
            metric: record.metric,
        }),
    ))
}

async fn get_audit(
    State(app): State<Arc<AppState>>,
    AuthUser(user): AuthUser,
    Path(id): Path<String>,
) -> ApiResult<Json<AuditRecord>> {
    let record = app.stores.audits.get(&id)?.ok_or_else(|| ApiError::not_found("audit"))?;
    if record.owner != user {
        return Err(ApiError::forbidden("this audit belongs to another user"));
    }
    Ok(Json(record))
}
