//! Experiment configuration: defaults, `key=value` files and flag overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Keys every subcommand accepts besides its own parameters.
pub const COMMON_KEYS: [&str; 3] = ["seed", "out", "format"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(ConfigError::Value {
                key: "format".into(),
                value: other.into(),
                reason: "expected csv or json".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigError {
    Io { path: PathBuf, message: String },
    Malformed { line: usize, text: String },
    UnknownKey { line: Option<usize>, key: String },
    DuplicateKey { line: usize, key: String },
    Value { key: String, value: String, reason: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io { path, message } => write!(f, "cannot read {}: {message}", path.display()),
            ConfigError::Malformed { line, text } => write!(f, "line {line}: expected key=value, got `{text}`"),
            ConfigError::UnknownKey { line: Some(line), key } => write!(f, "line {line}: unknown key `{key}`"),
            ConfigError::UnknownKey { line: None, key } => write!(f, "unknown key `{key}`"),
            ConfigError::DuplicateKey { line, key } => write!(f, "line {line}: duplicate key `{key}`"),
            ConfigError::Value { key, value, reason } => write!(f, "invalid value `{value}` for `{key}`: {reason}"),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Raw `key=value` pairs with the line each came from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigFile {
    pub entries: BTreeMap<String, (usize, String)>,
}

/// Parses `key=value` lines. Blank lines and `#` comments are skipped;
/// `known` restricts the accepted keys.
pub fn parse_config(text: &str, known: &[&str]) -> Result<ConfigFile, ConfigError> {
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return Err(ConfigError::Malformed {
                line,
                text: raw.trim().into(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Malformed {
                line,
                text: raw.trim().into(),
            });
        }
        if !known.contains(&key) {
            return Err(ConfigError::UnknownKey {
                line: Some(line),
                key: key.into(),
            });
        }
        if entries.insert(key.to_string(), (line, value.to_string())).is_some() {
            return Err(ConfigError::DuplicateKey { line, key: key.into() });
        }
    }
    Ok(ConfigFile { entries })
}

/// Reads and parses a config file.
pub fn config_load(path: &Path, known: &[&str]) -> Result<ConfigFile, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_config(&text, known)
}

/// Fully resolved run configuration; every run is a function of
/// `(subcommand, params, seed)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub subcommand: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn new(subcommand: &str, format: Format) -> Self {
        Self {
            subcommand: subcommand.into(),
            params: BTreeMap::new(),
            seed: DEFAULT_SEED,
            out: None,
            format,
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.set(key, value.to_string()).expect("valid common key");
        self
    }

    /// Assigns a parameter or one of the common keys.
    pub fn set(&mut self, key: &str, value: String) -> Result<(), ConfigError> {
        match key {
            "seed" => self.seed = parse_value(key, &value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            _ => {
                self.params.insert(key.into(), value);
            }
        }
        Ok(())
    }

    pub fn raw(&self, key: &str) -> Result<&str, ConfigError> {
        self.params.get(key).map(String::as_str).ok_or_else(|| ConfigError::UnknownKey {
            line: None,
            key: key.into(),
        })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, ConfigError>
    where
        T::Err: fmt::Display,
    {
        parse_value(key, self.raw(key)?)
    }

    /// Comma-separated list.
    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.raw(key)?.split(',').map(|v| parse_value(key, v.trim())).collect()
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::Value {
        key: key.into(),
        value: value.into(),
        reason: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const KNOWN: [&str; 4] = ["seed", "n", "out", "format"];

    #[test]
    fn empty_file_gives_no_entries() {
        assert!(parse_config("", &KNOWN).unwrap().entries.is_empty());
        assert!(parse_config("\n# comment\n   \n", &KNOWN).unwrap().entries.is_empty());
    }

    #[test]
    fn seed_line_is_read() {
        let c = parse_config("seed=7\n", &KNOWN).unwrap();
        assert_eq!(c.entries["seed"], (1, "7".to_string()));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_config("seed=7\nn=3\nseed=8\n", &KNOWN),
            Err(ConfigError::DuplicateKey {
                line: 3,
                key: "seed".into()
            })
        );
        assert_eq!(
            parse_config("n=3\n\nbogus\n", &KNOWN),
            Err(ConfigError::Malformed {
                line: 3,
                text: "bogus".into()
            })
        );
        assert_eq!(
            parse_config("colour=red", &KNOWN),
            Err(ConfigError::UnknownKey {
                line: Some(1),
                key: "colour".into()
            })
        );
    }

    #[test]
    fn typed_access() {
        let mut cfg = ExperimentConfig::new("x", Format::Csv);
        cfg.set("s", "0.5,1,2".into()).unwrap();
        cfg.set("seed", "9".into()).unwrap();
        assert_eq!(cfg.list::<f64>("s").unwrap(), vec![0.5, 1.0, 2.0]);
        assert_eq!(cfg.seed, 9);
        assert!(cfg.set("seed", "x".into()).is_err());
        assert!(cfg.set("format", "xml".into()).is_err());
    }
}
