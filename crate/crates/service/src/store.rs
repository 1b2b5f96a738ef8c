//! Embedded file storage: JSON records replaced by write-then-rename, and
//! append-only JSON-lines logs where every line carries a sha256 of its
//! content. Corrupt lines are skipped on read and copied to a
//! `.quarantine` file next to the log.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{self, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use chrono::{DateTime, Utc};
use cubetutor_audit::{AuditReport, MetricKind};
use cubetutor_core::{CubeState, CubeletId, MoveSequence};
use cubetutor_dialogue::{DialogueState, ProfileLookup, TranscriptRecord, UserProfile};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::ServiceError;

const CHECKSUM_FIELD: &str = "sha256";

/// Keys become file names, so they are restricted to a safe alphabet.
pub fn check_key(key: &str) -> Result<(), ServiceError> {
    let ok = !key.is_empty()
        && key.len() <= 64
        && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
    if ok {
        Ok(())
    } else {
        Err(ServiceError::InvalidKey(key.to_string()))
    }
}

/// Writes to a temporary sibling, syncs, then renames over `path`. A crash
/// at any point leaves either the old or the new file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("record");
    let tmp = dir.join(format!(".{name}.{}.tmp", uuid::Uuid::new_v4().simple()));
    {
        let mut f = File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<Option<T>, ServiceError> {
    match fs::read_to_string(path) {
        Ok(text) => Ok(Some(serde_json::from_str(&text)?)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), ServiceError> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)?;
    Ok(())
}

fn digest(value: &Value) -> String {
    // Object keys are sorted, so the encoding is canonical.
    hex::encode(Sha256::digest(value.to_string().as_bytes()))
}

/// Encodes a record as one checksummed line, without the newline.
pub fn encode_line<T: Serialize>(record: &T) -> Result<String, ServiceError> {
    let mut value = serde_json::to_value(record)?;
    let Value::Object(map) = &mut value else {
        return Err(ServiceError::Fixture("log records must be JSON objects".into()));
    };
    if map.contains_key(CHECKSUM_FIELD) {
        return Err(ServiceError::Fixture(format!("records may not use the field {CHECKSUM_FIELD:?}")));
    }
    let sum = digest(&Value::Object(map.clone()));
    map.insert(CHECKSUM_FIELD.into(), Value::String(sum));
    Ok(value.to_string())
}

/// The record of a line whose checksum matches, or `None`.
pub fn decode_line<T: DeserializeOwned>(line: &str) -> Option<T> {
    let mut value: Value = serde_json::from_str(line).ok()?;
    let map = value.as_object_mut()?;
    let Some(Value::String(sum)) = map.remove(CHECKSUM_FIELD) else {
        return None;
    };
    if digest(&Value::Object(map.clone())) != sum {
        return None;
    }
    serde_json::from_value(value).ok()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogContents<T> {
    pub records: Vec<T>,
    /// 1-based line numbers that failed verification.
    pub quarantined: Vec<usize>,
}

/// An append-only JSON-lines file. Appends are serialized per log.
#[derive(Debug)]
pub struct JsonLog {
    path: PathBuf,
    lock: Mutex<()>,
}

impl JsonLog {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        JsonLog {
            path: path.into(),
            lock: Mutex::new(()),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append<T: Serialize>(&self, record: &T) -> Result<(), ServiceError> {
        let mut line = encode_line(record)?;
        line.push('\n');
        let _guard = self.lock.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new().create(true).read(true).append(true).open(&self.path)?;
        // A torn previous write must not swallow this line.
        let len = f.metadata()?.len();
        if len > 0 {
            let mut last = [0u8];
            f.seek(SeekFrom::Start(len - 1))?;
            f.read_exact(&mut last)?;
            if last[0] != b'\n' {
                line.insert(0, '\n');
            }
        }
        f.write_all(line.as_bytes())?;
        f.sync_data()?;
        Ok(())
    }

    pub fn read<T: DeserializeOwned>(&self) -> Result<LogContents<T>, ServiceError> {
        let text = {
            let _guard = self.lock.lock().unwrap_or_else(|e| e.into_inner());
            match fs::read_to_string(&self.path) {
                Ok(t) => t,
                Err(e) if e.kind() == io::ErrorKind::NotFound => String::new(),
                Err(e) => return Err(e.into()),
            }
        };
        let mut contents = LogContents {
            records: Vec::new(),
            quarantined: Vec::new(),
        };
        let mut bad = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match decode_line(line) {
                Some(r) => contents.records.push(r),
                None => {
                    contents.quarantined.push(i + 1);
                    bad.push(line);
                }
            }
        }
        if !bad.is_empty() {
            tracing::warn!(path = %self.path.display(), lines = ?contents.quarantined, "quarantining corrupt log lines");
            self.quarantine(&bad)?;
        }
        Ok(contents)
    }

    pub fn quarantine_path(&self) -> PathBuf {
        let mut p = self.path.clone().into_os_string();
        p.push(".quarantine");
        p.into()
    }

    fn quarantine(&self, lines: &[&str]) -> Result<(), ServiceError> {
        let path = self.quarantine_path();
        let existing = fs::read_to_string(&path).unwrap_or_default();
        let known: std::collections::HashSet<&str> = existing.lines().collect();
        let fresh: Vec<&&str> = lines.iter().filter(|l| !known.contains(**l)).collect();
        if fresh.is_empty() {
            return Ok(());
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&path)?;
        for l in fresh {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A macro given by its moves; its precondition is learned when loaded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InlineMacro {
    pub name: String,
    pub moves: MoveSequence,
    pub target: CubeletId,
    #[serde(default)]
    pub protect: Vec<CubeletId>,
    /// A state the macro solves, used as the first positive example.
    pub source: CubeState,
    #[serde(default)]
    pub seed: u64,
}

/// First line of a transcript: who is talking and from which cube. The
/// profile and macro lists are only filled in for self-contained fixtures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionSetup {
    pub timestamp: DateTime<Utc>,
    pub session: String,
    pub user: String,
    pub cube: CubeState,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<UserProfile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub macros: Vec<InlineMacro>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TranscriptLine {
    Setup(SessionSetup),
    CubeSet {
        timestamp: DateTime<Utc>,
        session: String,
        cube: CubeState,
    },
    Message(TranscriptRecord),
}

/// One transcript log per session under `transcripts/`.
#[derive(Debug)]
pub struct TranscriptStore {
    dir: PathBuf,
    logs: Mutex<HashMap<String, Arc<JsonLog>>>,
}

impl TranscriptStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TranscriptStore {
            dir: dir.into(),
            logs: Mutex::default(),
        }
    }

    pub fn log(&self, session: &str) -> Result<Arc<JsonLog>, ServiceError> {
        check_key(session)?;
        let mut logs = self.logs.lock().unwrap_or_else(|e| e.into_inner());
        Ok(logs
            .entry(session.to_string())
            .or_insert_with(|| Arc::new(JsonLog::new(self.dir.join(format!("{session}.jsonl")))))
            .clone())
    }

    pub fn append(&self, session: &str, line: &TranscriptLine) -> Result<(), ServiceError> {
        self.log(session)?.append(line)
    }

    pub fn read(&self, session: &str) -> Result<LogContents<TranscriptLine>, ServiceError> {
        self.log(session)?.read()
    }
}

/// Profiles as one JSON file each, cached in memory.
#[derive(Debug)]
pub struct ProfileStore {
    dir: PathBuf,
    cache: RwLock<BTreeMap<String, UserProfile>>,
}

impl ProfileStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, ServiceError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let mut cache = BTreeMap::new();
        for entry in fs::read_dir(&dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                let profile: UserProfile = read_json(&path)?.expect("listed file exists");
                cache.insert(profile.username.to_ascii_lowercase(), profile);
            }
        }
        Ok(ProfileStore {
            dir,
            cache: RwLock::new(cache),
        })
    }

    pub fn put(&self, profile: &UserProfile) -> Result<(), ServiceError> {
        check_key(&profile.username)?;
        profile.validate()?;
        let key = profile.username.to_ascii_lowercase();
        let mut cache = self.cache.write().unwrap_or_else(|e| e.into_inner());
        write_json(&self.dir.join(format!("{key}.json")), profile)?;
        cache.insert(key, profile.clone());
        Ok(())
    }

    pub fn get(&self, username: &str) -> Option<UserProfile> {
        let cache = self.cache.read().unwrap_or_else(|e| e.into_inner());
        cache.get(&username.to_ascii_lowercase()).cloned()
    }
}

impl ProfileLookup for ProfileStore {
    fn profile(&self, username: &str) -> Option<UserProfile> {
        self.get(username)
    }

    fn usernames(&self) -> Vec<String> {
        let cache = self.cache.read().unwrap_or_else(|e| e.into_inner());
        cache.values().map(|p| p.username.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub id: String,
    pub user: String,
    pub state: DialogueState,
    pub created: DateTime<Utc>,
    pub updated: DateTime<Utc>,
}

#[derive(Debug)]
pub struct SessionStore {
    dir: PathBuf,
}

impl SessionStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SessionStore { dir: dir.into() }
    }

    pub fn put(&self, record: &SessionRecord) -> Result<(), ServiceError> {
        check_key(&record.id)?;
        write_json(&self.dir.join(format!("{}.json", record.id)), record)
    }

    pub fn get(&self, id: &str) -> Result<Option<SessionRecord>, ServiceError> {
        if check_key(id).is_err() {
            return Ok(None);
        }
        read_json(&self.dir.join(format!("{id}.json")))
    }
}

/// A third-tier warning filed for review.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub id: String,
    pub timestamp: DateTime<Utc>,
    pub session: String,
    pub user: String,
    pub strike_count: u32,
    pub text: String,
    pub matched_terms: Vec<String>,
    /// Who may read reports is left to the deployment; this only marks them.
    pub teacher_visible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub id: String,
    pub owner: String,
    pub created: DateTime<Utc>,
    /// The metric the caller asked to rate by; both are computed.
    pub metric: MetricKind,
    pub report: AuditReport,
}

#[derive(Debug)]
pub struct AuditStore {
    dir: PathBuf,
}

impl AuditStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        AuditStore { dir: dir.into() }
    }

    pub fn put(&self, record: &AuditRecord) -> Result<(), ServiceError> {
        check_key(&record.id)?;
        write_json(&self.dir.join(format!("{}.json", record.id)), record)
    }

    pub fn get(&self, id: &str) -> Result<Option<AuditRecord>, ServiceError> {
        if check_key(id).is_err() {
            return Ok(None);
        }
        read_json(&self.dir.join(format!("{id}.json")))
    }
}

/// Everything kept under the data directory.
#[derive(Debug)]
pub struct Stores {
    pub profiles: ProfileStore,
    pub sessions: SessionStore,
    pub transcripts: TranscriptStore,
    pub reports: JsonLog,
    pub audits: AuditStore,
}

impl Stores {
    pub fn open(data_dir: &Path) -> Result<Stores, ServiceError> {
        for sub in ["sessions", "transcripts", "audits"] {
            fs::create_dir_all(data_dir.join(sub))?;
        }
        Ok(Stores {
            profiles: ProfileStore::open(data_dir.join("profiles"))?,
            sessions: SessionStore::new(data_dir.join("sessions")),
            transcripts: TranscriptStore::new(data_dir.join("transcripts")),
            reports: JsonLog::new(data_dir.join("reports.jsonl")),
            audits: AuditStore::new(data_dir.join("audits")),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Rec {
        n: u32,
        s: String,
    }

    #[test]
    fn lines_round_trip_and_detect_tampering() {
        let line = encode_line(&Rec { n: 3, s: "hi".into() }).unwrap();
        assert_eq!(decode_line::<Rec>(&line), Some(Rec { n: 3, s: "hi".into() }));
        let tampered = line.replace("\"hi\"", "\"ho\"");
        assert_eq!(decode_line::<Rec>(&tampered), None);
        assert_eq!(decode_line::<Rec>("{\"n\":3,\"s\":\"hi\"}"), None);
    }

    #[test]
    fn keys_are_file_safe() {
        check_key("alex_01-b").unwrap();
        for bad in ["", "../etc", "a/b", "a.b", &"x".repeat(65)] {
            assert!(check_key(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn torn_line_is_quarantined_and_next_append_survives() {
        let dir = tempfile::tempdir().unwrap();
        let log = JsonLog::new(dir.path().join("t.jsonl"));
        log.append(&Rec { n: 1, s: "a".into() }).unwrap();
        let mut f = OpenOptions::new().append(true).open(log.path()).unwrap();
        f.write_all(b"{\"n\":2,\"s\":\"b").unwrap();
        log.append(&Rec { n: 3, s: "c".into() }).unwrap();
        let read: LogContents<Rec> = log.read().unwrap();
        assert_eq!(read.records.iter().map(|r| r.n).collect::<Vec<_>>(), [1, 3]);
        assert_eq!(read.quarantined, [2]);
        let q = fs::read_to_string(log.quarantine_path()).unwrap();
        assert_eq!(q.lines().count(), 1);
        log.read::<Rec>().unwrap();
        assert_eq!(fs::read_to_string(log.quarantine_path()).unwrap(), q);
    }
}
