//! Step-wise tableau sessions for students.
//!
//! A session fixes a question (is Γ satisfiable, is φ valid, does Γ entail φ),
//! seeds a tableau accordingly and lets the student pick each expansion. The
//! history of steps is enough to rebuild the tableau, which is how snapshots
//! are restored.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dnf::{dnf_from_tableau, Dnf};
use crate::formula::{parse, Formula, ParseError};
use crate::semantics::Model;
use crate::tableau::{Expansion, NodeId, OpenBranch, RuleKind, StepError, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Sat,
    Valid,
    Entails,
}

impl std::str::FromStr for ModeKind {
    type Err = SessionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sat" => Ok(ModeKind::Sat),
            "valid" => Ok(ModeKind::Valid),
            "entails" => Ok(ModeKind::Entails),
            other => Err(SessionError::UnknownMode(other.to_string())),
        }
    }
}

/// The question a session answers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Sat {
        formulas: Vec<Formula>,
    },
    Valid {
        formula: Formula,
    },
    Entails {
        premises: Vec<Formula>,
        conclusion: Formula,
    },
}

impl Mode {
    /// Parses formula texts for a mode. For entailment the last formula is the
    /// conclusion and the others are premises.
    pub fn from_texts<S: AsRef<str>>(kind: ModeKind, texts: &[S]) -> Result<Mode, SessionError> {
        let formulas = texts
            .iter()
            .enumerate()
            .map(|(index, t)| {
                parse(t.as_ref()).map_err(|source| SessionError::Parse { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        match kind {
            ModeKind::Sat if !formulas.is_empty() => Ok(Mode::Sat { formulas }),
            ModeKind::Valid if formulas.len() == 1 => Ok(Mode::Valid {
                formula: formulas.into_iter().next().unwrap(),
            }),
            ModeKind::Entails if !formulas.is_empty() => {
                let mut premises = formulas;
                let conclusion = premises.pop().unwrap();
                Ok(Mode::Entails {
                    premises,
                    conclusion,
                })
            }
            _ => Err(SessionError::FormulaCount {
                kind,
                given: formulas.len(),
            }),
        }
    }

    pub fn kind(&self) -> ModeKind {
        match self {
            Mode::Sat { .. } => ModeKind::Sat,
            Mode::Valid { .. } => ModeKind::Valid,
            Mode::Entails { .. } => ModeKind::Entails,
        }
    }

    /// Formulas on the initial branch: Γ, {¬φ} or Γ ∪ {¬φ}.
    pub fn initial_formulas(&self) -> Vec<Formula> {
        match self {
            Mode::Sat { formulas } => formulas.clone(),
            Mode::Valid { formula } => vec![Formula::not(formula.clone())],
            Mode::Entails {
                premises,
                conclusion,
            } => {
                let mut out = premises.clone();
                out.push(Formula::not(conclusion.clone()));
                out
            }
        }
    }

    fn initial_tableau(&self) -> Result<Tableau, SessionError> {
        Tableau::new(&self.initial_formulas()).map_err(|_| SessionError::FormulaCount {
            kind: self.kind(),
            given: 0,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SessionStatus {
    InProgress,
    Finished,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Step {
    pub node_id: NodeId,
    pub leaf_id: NodeId,
    pub rule: RuleKind,
    /// Milliseconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("formula {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error("unknown mode {0:?}; expected sat, valid or entails")]
    UnknownMode(String),
    #[error("{} takes {}, got {given} formula(s)", kind_name(*kind), expected_count(*kind))]
    FormulaCount { kind: ModeKind, given: usize },
    #[error(transparent)]
    Step(#[from] StepError),
    #[error("no session with id {0}")]
    UnknownSession(String),
    #[error("the session is finished; every branch is open or closed")]
    SessionFinished,
    #[error("the session is not finished yet; some branch still has formulas to expand")]
    SessionNotFinished,
    #[error("snapshot does not replay to the stored tableau")]
    SnapshotMismatch,
    #[error("snapshot i/o: {0}")]
    Io(#[from] io::Error),
    #[error("snapshot format: {0}")]
    Json(#[from] serde_json::Error),
}

fn kind_name(kind: ModeKind) -> &'static str {
    match kind {
        ModeKind::Sat => "satisfiability",
        ModeKind::Valid => "validity",
        ModeKind::Entails => "entailment",
    }
}

fn expected_count(kind: ModeKind) -> &'static str {
    match kind {
        ModeKind::Sat => "at least one formula",
        ModeKind::Valid => "exactly one formula",
        ModeKind::Entails => "zero or more premises followed by a conclusion",
    }
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::Parse { .. } => "PARSE_ERROR",
            SessionError::UnknownMode(_) | SessionError::FormulaCount { .. } => "INVALID_REQUEST",
            SessionError::Step(e) => e.code(),
            SessionError::UnknownSession(_) => "UNKNOWN_SESSION",
            SessionError::SessionFinished => "SESSION_FINISHED",
            SessionError::SessionNotFinished => "SESSION_NOT_FINISHED",
            SessionError::SnapshotMismatch | SessionError::Io(_) | SessionError::Json(_) => {
                "SNAPSHOT_ERROR"
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Satisfiable,
    Unsatisfiable,
    Valid,
    NotValid,
    Entails,
    DoesNotEntail,
}

/// What a finished tableau says about the session's question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Analysis {
    pub verdict: Verdict,
    pub open_branches: Vec<OpenBranch>,
    /// For validity and entailment this is a counter-model.
    pub model: Option<Model>,
    #[serde(rename = "clauses")]
    pub dnf: Dnf,
    #[serde(rename = "dnf")]
    pub dnf_text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Session {
    pub id: String,
    pub mode: Mode,
    pub status: SessionStatus,
    pub history: Vec<Step>,
    pub tableau: Tableau,
}

fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// 128 random bits as 32 lowercase hex digits.
pub fn new_session_id() -> String {
    format!("{:032x}", rand::random::<u128>())
}

impl Session {
    pub fn new(mode: Mode) -> Result<Session, SessionError> {
        Session::with_id(new_session_id(), mode)
    }

    pub fn with_id(id: String, mode: Mode) -> Result<Session, SessionError> {
        let tableau = mode.initial_tableau()?;
        let mut session = Session {
            id,
            mode,
            status: SessionStatus::InProgress,
            history: Vec::new(),
            tableau,
        };
        session.refresh_status();
        Ok(session)
    }

    fn refresh_status(&mut self) {
        self.status = if self.tableau.is_finished() {
            SessionStatus::Finished
        } else {
            SessionStatus::InProgress
        };
    }

    fn record(&mut self, e: &Expansion) {
        self.history.push(Step {
            node_id: e.node_id,
            leaf_id: e.leaf_id,
            rule: e.rule,
            timestamp: now_millis(),
        });
    }

    /// Applies the student's chosen expansion.
    pub fn step(&mut self, node: NodeId, leaf: NodeId) -> Result<Expansion, SessionError> {
        if self.status == SessionStatus::Finished {
            return Err(SessionError::SessionFinished);
        }
        let expansion = self.tableau.apply(node, leaf)?;
        self.record(&expansion);
        self.refresh_status();
        Ok(expansion)
    }

    /// Completes the tableau with the automatic strategy. A finished session is
    /// left untouched.
    pub fn auto_finish(&mut self) -> Vec<Expansion> {
        let steps = self.tableau.expand_all();
        for e in &steps {
            self.record(e);
        }
        self.refresh_status();
        steps
    }

    /// Legal steps with the rule each would apply.
    pub fn hints(&self) -> Vec<(NodeId, NodeId, RuleKind)> {
        self.tableau.legal_steps()
    }

    pub fn analyze(&self) -> Result<Analysis, SessionError> {
        if self.status != SessionStatus::Finished {
            return Err(SessionError::SessionNotFinished);
        }
        let open_branches = self.tableau.open_branches().expect("finished");
        let model = self.tableau.extract_model().expect("finished");
        let dnf = dnf_from_tableau(&self.tableau).expect("finished");
        let open = model.is_some();
        let verdict = match (self.mode.kind(), open) {
            (ModeKind::Sat, true) => Verdict::Satisfiable,
            (ModeKind::Sat, false) => Verdict::Unsatisfiable,
            (ModeKind::Valid, true) => Verdict::NotValid,
            (ModeKind::Valid, false) => Verdict::Valid,
            (ModeKind::Entails, true) => Verdict::DoesNotEntail,
            (ModeKind::Entails, false) => Verdict::Entails,
        };
        Ok(Analysis {
            verdict,
            open_branches,
            model,
            dnf_text: dnf.to_string(),
            dnf,
        })
    }

    /// Rebuilds the tableau for `mode` by re-applying `history`.
    pub fn replay(mode: &Mode, history: &[Step]) -> Result<Tableau, SessionError> {
        let mut tableau = mode.initial_tableau()?;
        for step in history {
            let e = tableau.apply(step.node_id, step.leaf_id)?;
            if e.rule != step.rule {
                return Err(SessionError::SnapshotMismatch);
            }
        }
        Ok(tableau)
    }

    pub fn to_snapshot(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("sessions serialize")
    }

    /// Restores a session from its snapshot JSON, replaying the history and
    /// checking the result against the stored tableau.
    pub fn from_snapshot(json: &str) -> Result<Session, SessionError> {
        #[derive(Deserialize)]
        struct Snapshot {
            id: String,
            mode: Mode,
            history: Vec<Step>,
            tableau: serde_json::Value,
        }
        let snap: Snapshot = serde_json::from_str(json)?;
        let tableau = Session::replay(&snap.mode, &snap.history)?;
        if serde_json::to_value(&tableau)? != snap.tableau {
            return Err(SessionError::SnapshotMismatch);
        }
        let mut session = Session {
            id: snap.id,
            mode: snap.mode,
            status: SessionStatus::InProgress,
            history: snap.history,
            tableau,
        };
        session.refresh_status();
        Ok(session)
    }
}

/// In-memory session registry with optional JSON snapshots on disk.
///
/// Operations on one session are serialized by a per-session lock; distinct
/// sessions proceed independently.
#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    snapshot_dir: Option<PathBuf>,
}

fn is_session_id(id: &str) -> bool {
    id.len() == 32 && id.chars().all(|c| matches!(c, '0'..='9' | 'a'..='f'))
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_snapshot_dir(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(SessionStore {
            sessions: RwLock::default(),
            snapshot_dir: Some(dir),
        })
    }

    pub fn snapshot_dir(&self) -> Option<&Path> {
        self.snapshot_dir.as_deref()
    }

    fn persist(&self, session: &Session) -> Result<(), SessionError> {
        let Some(dir) = &self.snapshot_dir else {
            return Ok(());
        };
        let tmp = dir.join(format!("{}.json.tmp", session.id));
        fs::write(&tmp, serde_json::to_vec_pretty(session)?)?;
        fs::rename(&tmp, dir.join(format!("{}.json", session.id)))?;
        Ok(())
    }

    pub fn create(&self, mode: Mode) -> Result<Session, SessionError> {
        let session = Session::new(mode)?;
        self.persist(&session)?;
        self.sessions
            .write()
            .unwrap()
            .insert(session.id.clone(), Arc::new(Mutex::new(session.clone())));
        Ok(session)
    }

    fn entry(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        if let Some(entry) = self.sessions.read().unwrap().get(id) {
            return Ok(entry.clone());
        }
        let unknown = || SessionError::UnknownSession(id.to_string());
        let dir = self.snapshot_dir.as_ref().ok_or_else(unknown)?;
        if !is_session_id(id) {
            return Err(unknown());
        }
        let text = match fs::read_to_string(dir.join(format!("{id}.json"))) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Err(unknown()),
            Err(e) => return Err(e.into()),
        };
        let session = Session::from_snapshot(&text)?;
        let mut sessions = self.sessions.write().unwrap();
        Ok(sessions
            .entry(id.to_string())
            .or_insert_with(|| Arc::new(Mutex::new(session)))
            .clone())
    }

    pub fn get(&self, id: &str) -> Result<Session, SessionError> {
        Ok(self.entry(id)?.lock().unwrap().clone())
    }

    /// Runs `f` on the session under its lock and persists the result when `f`
    /// succeeds.
    pub fn update<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut Session) -> Result<T, SessionError>,
    ) -> Result<(T, Session), SessionError> {
        let entry = self.entry(id)?;
        let mut session = entry.lock().unwrap();
        let out = f(&mut session)?;
        self.persist(&session)?;
        Ok((out, session.clone()))
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
