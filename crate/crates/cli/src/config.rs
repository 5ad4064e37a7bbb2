//! Desk-scale limits for the enumeration commands. Defaults keep every
//! command interactive on one core; a JSON file (via `--config` or the
//! `FISHBURN_CONFIG` environment variable) can adjust them.

use std::path::Path;

use serde::Deserialize;

pub const CONFIG_ENV_VAR: &str = "FISHBURN_CONFIG";

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(default, rename_all = "camelCase", deny_unknown_fields)]
pub struct Limits {
    pub max_ascent: usize,
    pub max_poset: usize,
    pub max_matrix: usize,
    pub max_perm: usize,
    pub max_matching: usize,
    pub max_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ascent: 10,
            max_poset: 10,
            max_matrix: 10,
            max_perm: 8,
            max_matching: 7,
            max_order: 24,
        }
    }
}

/// Loads limits from the given path, the environment variable, or defaults.
pub fn load(flag_path: Option<&Path>) -> Result<Limits, String> {
    let env_path = std::env::var_os(CONFIG_ENV_VAR).map(std::path::PathBuf::from);
    let path = match (flag_path, env_path.as_deref()) {
        (Some(p), _) => p,
        (None, Some(p)) => p,
        (None, None) => return Ok(Limits::default()),
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}
