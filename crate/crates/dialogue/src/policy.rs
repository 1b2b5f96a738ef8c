use thiserror::Error;

use crate::intent::Intent;
use crate::profile::UserProfile;

pub const WARNING_TIER_1: &str = "Please do not use inappropriate language.";
pub const WARNING_TIER_2: &str =
    "Please do not use inappropriate language. I have been designed to ignore such inputs when repeated.";
pub const WARNING_TIER_3: &str = "Please do not use inappropriate language. I have been designed to ignore such inputs when repeated. I am also reporting our interaction for potential further action.";

pub const LEAKAGE_REFUSAL: &str = "Any answer to your query will lead to release of private information of others. Hence, I am not able to answer at this time.";

pub const NO_HISTORY: &str =
    "I do not have any games recorded for you yet. Play a game and I will keep track of your progress.";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("warning tier must be 1, 2 or 3, got {0}")]
pub struct TierError(pub u32);

pub fn warning_message(tier: u32) -> Result<&'static str, TierError> {
    match tier {
        1 => Ok(WARNING_TIER_1),
        2 => Ok(WARNING_TIER_2),
        3 => Ok(WARNING_TIER_3),
        other => Err(TierError(other)),
    }
}

/// Counts one more strike when `abusive`; returns the new count and the
/// warning tier (0 for a clean turn).
pub fn update_strikes(strikes: u32, abusive: bool) -> (u32, u32) {
    if !abusive {
        return (strikes, 0);
    }
    let strikes = strikes.saturating_add(1);
    (strikes, strikes.min(3))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Guard {
    Allow,
    Refuse(&'static str),
}

/// Questions about other users get one fixed refusal, whether or not the
/// user exists.
pub fn guard_leakage(intent: &Intent) -> Guard {
    match intent {
        Intent::AskOtherUser { .. } => Guard::Refuse(LEAKAGE_REFUSAL),
        _ => Guard::Allow,
    }
}

fn minutes(m: f64) -> String {
    if (m - m.round()).abs() < 1e-9 {
        format!("{}", m.round() as i64)
    } else {
        format!("{m:.1}")
    }
}

/// The three summary lines: games played, average minutes, games won.
pub fn summarize_performance(profile: &UserProfile) -> String {
    let average = match profile.avg_game_minutes {
        Some(m) if profile.games_played > 0 => format!("{} minutes", minutes(m)),
        _ => "n/a".to_string(),
    };
    format!(
        "Total games played: {}\nAverage time taken for a single game: {}\nTotal games won: {}",
        profile.games_played, average, profile.games_won
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiers() {
        assert_eq!(update_strikes(0, false), (0, 0));
        assert_eq!(update_strikes(0, true), (1, 1));
        assert_eq!(update_strikes(1, true), (2, 2));
        assert_eq!(update_strikes(2, true), (3, 3));
        assert_eq!(update_strikes(3, true), (4, 3));
        assert_eq!(warning_message(1).unwrap(), "Please do not use inappropriate language.");
        assert!(warning_message(2).unwrap().starts_with(WARNING_TIER_1));
        assert!(warning_message(3).unwrap().starts_with(WARNING_TIER_2));
        assert_eq!(warning_message(0), Err(TierError(0)));
        assert_eq!(warning_message(4), Err(TierError(4)));
    }

    #[test]
    fn summaries() {
        let mut p = UserProfile::new("alex");
        p.games_played = 12;
        p.games_won = 8;
        p.avg_game_minutes = Some(10.0);
        p.gender = "female".into();
        p.skill_level = "intermediate".into();
        let text = summarize_performance(&p);
        assert_eq!(
            text,
            "Total games played: 12\nAverage time taken for a single game: 10 minutes\nTotal games won: 8"
        );
        assert!(!text.contains("female") && !text.contains("intermediate"));
        p.avg_game_minutes = Some(7.25);
        assert!(summarize_performance(&p).contains("7.2 minutes") || summarize_performance(&p).contains("7.3 minutes"));
        let fresh = UserProfile::new("sam");
        assert_eq!(
            summarize_performance(&fresh),
            "Total games played: 0\nAverage time taken for a single game: n/a\nTotal games won: 0"
        );
    }
}
