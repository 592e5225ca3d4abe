//! Tunables, resolved as flags > environment > config file > defaults.

use std::path::Path;

use khbound_core::ComputeConfig;
use serde::Deserialize;

use crate::error::CliError;

pub const CEILING_ENV: &str = "KHBOUND_CEILING";
pub const NAIVE_LIMIT_ENV: &str = "KHBOUND_NAIVE_LIMIT";

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub ceiling: Option<usize>,
    pub naive_limit: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        toml::from_str(&text).map_err(|e| CliError::Parse { context: path.display().to_string(), msg: e.to_string() })
    }
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Overrides {
    pub ceiling: Option<usize>,
    pub naive_limit: Option<usize>,
}

fn env_value(env: &dyn Fn(&str) -> Option<String>, key: &str) -> Result<Option<usize>, CliError> {
    match env(key) {
        None => Ok(None),
        Some(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Parse { context: key.into(), msg: format!("not a non-negative integer: {v:?}") }),
    }
}

pub fn resolve(
    flags: Overrides,
    env: &dyn Fn(&str) -> Option<String>,
    file: Option<FileConfig>,
) -> Result<ComputeConfig, CliError> {
    let file = file.unwrap_or_default();
    let defaults = ComputeConfig::default();
    let ceiling = match flags.ceiling {
        Some(c) => c,
        None => env_value(env, CEILING_ENV)?.or(file.ceiling).unwrap_or(defaults.ceiling),
    };
    let naive_limit = match flags.naive_limit {
        Some(c) => c,
        None => env_value(env, NAIVE_LIMIT_ENV)?.or(file.naive_limit).unwrap_or(defaults.naive_limit),
    };
    Ok(ComputeConfig { naive_limit, ceiling })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_env(_: &str) -> Option<String> {
        None
    }

    #[test]
    fn precedence() {
        let file = Some(FileConfig { ceiling: Some(10), naive_limit: Some(5) });
        let env = |k: &str| (k == CEILING_ENV).then(|| "20".to_string());
        assert_eq!(resolve(Overrides::default(), &no_env, file).unwrap(), ComputeConfig { ceiling: 10, naive_limit: 5 });
        assert_eq!(resolve(Overrides::default(), &env, file).unwrap(), ComputeConfig { ceiling: 20, naive_limit: 5 });
        let flags = Overrides { ceiling: Some(30), naive_limit: None };
        assert_eq!(resolve(flags, &env, file).unwrap(), ComputeConfig { ceiling: 30, naive_limit: 5 });
        assert_eq!(resolve(Overrides::default(), &no_env, None).unwrap(), ComputeConfig::default());
    }

    #[test]
    fn bad_env_value() {
        let env = |_: &str| Some("lots".to_string());
        assert!(resolve(Overrides::default(), &env, None).is_err());
    }
}
