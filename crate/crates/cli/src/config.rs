use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

/// Names a config file read when `--config` is absent.
pub const CONFIG_ENV: &str = "HECKE_CONFIG";
/// Directory for cached enumeration results.
pub const CACHE_ENV: &str = "HECKE_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Toml {
        path: String,
        source: toml::de::Error,
    },
    #[error("unknown specialization {0:?}")]
    UnknownSpecialization(String),
}

/// ```toml
/// seed = 7
///
/// [specializations]
/// mild = "a=2,b=-1,c=1/3"
/// ```
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub seed: Option<u64>,
    #[serde(default)]
    pub specializations: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str, path: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Toml {
            path: path.to_owned(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: shown.clone(),
            source,
        })?;
        Config::parse(&text, &shown)
    }

    /// `explicit`, else the file named by `HECKE_CONFIG`, else empty.
    pub fn discover(explicit: Option<&Path>) -> Result<Self, ConfigError> {
        match explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from))
        {
            Some(path) => Config::load(&path),
            None => Ok(Config::default()),
        }
    }

    /// A `k=v,…` list is returned as is; a bare name is looked up.
    pub fn resolve_spec<'a>(&'a self, text: &'a str) -> Result<&'a str, ConfigError> {
        if text.contains('=') {
            return Ok(text);
        }
        let name = text.strip_prefix('@').unwrap_or(text);
        self.specializations
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| ConfigError::UnknownSpecialization(name.to_owned()))
    }
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// File name for a cached result of `presentation` at `spec`.
pub fn cache_key(presentation: &str, spec: &str) -> String {
    let clean = |s: &str| -> String {
        s.chars()
            .map(|c| match c {
                'a'..='z' | 'A'..='Z' | '0'..='9' | '-' | '=' | ',' => c,
                '/' => '_',
                _ => '.',
            })
            .collect()
    };
    format!("{}@{}.json", clean(presentation), clean(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_specializations() {
        let c = Config::parse(
            "seed = 3\n[specializations]\nmild = \"a=1,b=2\"\n",
            "inline",
        )
        .unwrap();
        assert_eq!(c.seed, Some(3));
        assert_eq!(c.resolve_spec("mild").unwrap(), "a=1,b=2");
        assert_eq!(c.resolve_spec("@mild").unwrap(), "a=1,b=2");
        assert_eq!(c.resolve_spec("a=5").unwrap(), "a=5");
        assert!(c.resolve_spec("wild").is_err());
        assert!(Config::parse("sede = 3", "inline").is_err());
    }

    #[test]
    fn cache_keys_are_file_names() {
        assert_eq!(
            cache_key("Gd12(3)", "a=1/2,b=-3"),
            "Gd12.3.@a=1_2,b=-3.json"
        );
    }
}
