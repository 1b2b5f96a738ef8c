use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("games won ({won}) exceeds games played ({played})")]
    WonExceedsPlayed { won: u32, played: u32 },
    #[error("average game time must be a non-negative number")]
    BadAverage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    pub username: String,
    pub gender: String,
    pub score: i64,
    pub games_won: u32,
    pub skill_level: String,
    pub games_played: u32,
    /// Minutes; absent until a game has been played.
    pub avg_game_minutes: Option<f64>,
    /// Reserved for role-based views (student, parent, teacher); unused.
    #[serde(default = "default_role")]
    pub role: String,
}

fn default_role() -> String {
    "student".into()
}

impl UserProfile {
    pub fn new(username: impl Into<String>) -> Self {
        UserProfile {
            username: username.into(),
            gender: String::new(),
            score: 0,
            games_won: 0,
            skill_level: "beginner".into(),
            games_played: 0,
            avg_game_minutes: None,
            role: default_role(),
        }
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        if self.games_won > self.games_played {
            return Err(ProfileError::WonExceedsPlayed {
                won: self.games_won,
                played: self.games_played,
            });
        }
        if self.avg_game_minutes.is_some_and(|m| !m.is_finite() || m < 0.0) {
            return Err(ProfileError::BadAverage);
        }
        Ok(())
    }
}

/// Read access the engine needs. Implementations must be safe to call
/// from many sessions at once.
pub trait ProfileLookup: Send + Sync {
    fn profile(&self, username: &str) -> Option<UserProfile>;
    fn usernames(&self) -> Vec<String>;
}

impl ProfileLookup for Vec<UserProfile> {
    fn profile(&self, username: &str) -> Option<UserProfile> {
        self.iter().find(|p| p.username.eq_ignore_ascii_case(username)).cloned()
    }

    fn usernames(&self) -> Vec<String> {
        self.iter().map(|p| p.username.clone()).collect()
    }
}
