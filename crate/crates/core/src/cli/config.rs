//! `key = value` config files and flag/config/default resolution.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde_json::Value;

use super::CliError;

/// Parsed config file. Keys are long flag names such as `nprime-max`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {}: expected `key = value`, got `{}`",
                    i + 1,
                    raw.trim()
                )));
            };
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || v.is_empty() {
                return Err(CliError::Usage(format!(
                    "config line {}: empty key or value",
                    i + 1
                )));
            }
            if entries.insert(k.to_string(), v.to_string()).is_some() {
                return Err(CliError::Usage(format!("config key `{k}` given twice")));
            }
        }
        Ok(Self { entries })
    }
}

/// Resolves each parameter as flag, else config entry, else default, and
/// records the value used for the metadata echo.
pub struct Resolver {
    config: ConfigFile,
    used: BTreeSet<String>,
    pub echo: BTreeMap<String, Value>,
}

impl Resolver {
    pub fn new(config: ConfigFile) -> Self {
        Self {
            config,
            used: BTreeSet::new(),
            echo: BTreeMap::new(),
        }
    }

    pub fn get_with<T, P>(
        &mut self,
        key: &str,
        flag: Option<T>,
        default: T,
        parse: P,
    ) -> Result<T, CliError>
    where
        T: Clone + Into<Value>,
        P: Fn(&str) -> Result<T, String>,
    {
        self.used.insert(key.to_string());
        let v = match (flag, self.config.entries.get(key)) {
            (Some(v), _) => v,
            (None, Some(s)) => {
                parse(s).map_err(|e| CliError::Usage(format!("config key `{key}`: {e}")))?
            }
            (None, None) => default,
        };
        self.echo.insert(key.replace('-', "_"), v.clone().into());
        Ok(v)
    }

    pub fn get<T>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError>
    where
        T: Clone + Into<Value> + FromStr,
        T::Err: std::fmt::Display,
    {
        self.get_with(key, flag, default, |s| {
            s.parse::<T>().map_err(|e| format!("`{s}`: {e}"))
        })
    }

    /// Fails on config keys that no parameter of this subcommand consumed.
    pub fn finish(self) -> Result<BTreeMap<String, Value>, CliError> {
        let unknown: Vec<&String> = self
            .config
            .entries
            .keys()
            .filter(|k| !self.used.contains(*k))
            .collect();
        if !unknown.is_empty() {
            return Err(CliError::Usage(format!("unknown config keys: {unknown:?}")));
        }
        Ok(self.echo)
    }
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect()
}
