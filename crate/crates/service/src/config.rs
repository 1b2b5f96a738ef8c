use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::ServiceError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub data_dir: PathBuf,
    pub host: String,
    pub port: u16,
    /// Macro library for the white cross. Learned and saved here when the
    /// file does not exist and `learn_if_missing` is set.
    pub library: Option<PathBuf>,
    pub learn_if_missing: bool,
    pub sentiment_lexicon: Option<PathBuf>,
    pub abuse_lexicon: Option<PathBuf>,
    /// Node budget for `solve` and library learning.
    pub search_budget: usize,
    /// Bearer token to user id.
    pub tokens: BTreeMap<String, String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            data_dir: PathBuf::from("var"),
            host: "127.0.0.1".into(),
            port: 8080,
            library: None,
            learn_if_missing: true,
            sentiment_lexicon: None,
            abuse_lexicon: None,
            search_budget: 2_000_000,
            tokens: BTreeMap::new(),
        }
    }
}

impl Config {
    /// Reads TOML, or JSON when the extension is `.json`.
    pub fn load(path: &Path) -> Result<Config, ServiceError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ServiceError::Config(format!("{}: {e}", path.display())))?;
        let config = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| ServiceError::Config(e.to_string()))?
        } else {
            toml::from_str(&text).map_err(|e| ServiceError::Config(e.to_string()))?
        };
        Ok(config)
    }

    /// `CUBETUTOR_DATA_DIR`, `CUBETUTOR_LIBRARY`, `CUBETUTOR_HOST` and
    /// `CUBETUTOR_PORT` take precedence over the file.
    pub fn apply_env(mut self) -> Result<Config, ServiceError> {
        self.apply_vars(|k| std::env::var(k).ok())?;
        Ok(self)
    }

    fn apply_vars(&mut self, get: impl Fn(&str) -> Option<String>) -> Result<(), ServiceError> {
        if let Some(v) = get("CUBETUTOR_DATA_DIR") {
            self.data_dir = v.into();
        }
        if let Some(v) = get("CUBETUTOR_LIBRARY") {
            self.library = Some(v.into());
        }
        if let Some(v) = get("CUBETUTOR_HOST") {
            self.host = v;
        }
        if let Some(v) = get("CUBETUTOR_PORT") {
            self.port = v
                .parse()
                .map_err(|_| ServiceError::Config(format!("CUBETUTOR_PORT is not a port: {v:?}")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ServiceError> {
        if self.search_budget == 0 {
            return Err(ServiceError::Config("search_budget must be positive".into()));
        }
        for (token, user) in &self.tokens {
            if token.len() < 8 {
                return Err(ServiceError::Config(format!("token for {user} is shorter than 8 characters")));
            }
            crate::store::check_key(user)?;
        }
        Ok(())
    }

    pub fn user_for_token(&self, token: &str) -> Option<&str> {
        self.tokens.get(token).map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_toml_with_defaults() {
        let c: Config = toml::from_str(
            r#"
data_dir = "/tmp/ct"
port = 9000
[tokens]
"secret-token-1" = "alex"
"#,
        )
        .unwrap();
        assert_eq!(c.port, 9000);
        assert_eq!(c.host, "127.0.0.1");
        assert_eq!(c.user_for_token("secret-token-1"), Some("alex"));
        c.validate().unwrap();
    }

    #[test]
    fn env_overrides_file() {
        let mut c = Config::default();
        c.apply_vars(|k| match k {
            "CUBETUTOR_PORT" => Some("7001".into()),
            "CUBETUTOR_DATA_DIR" => Some("/srv/ct".into()),
            _ => None,
        })
        .unwrap();
        assert_eq!(c.port, 7001);
        assert_eq!(c.data_dir, PathBuf::from("/srv/ct"));
        assert!(c.apply_vars(|_| Some("x".into())).is_err());
    }

    #[test]
    fn rejects_unknown_keys_and_short_tokens() {
        assert!(toml::from_str::<Config>("colour = 1").is_err());
        let mut c = Config::default();
        c.tokens.insert("abc".into(), "alex".into());
        assert!(c.validate().is_err());
    }
}
