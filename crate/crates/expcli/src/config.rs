//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # bp-scan defaults
//! families = random, sea1
//! qubits = 4, 6, 8, 10
//! samples = 200
//! ```
//!
//! Keys are case-sensitive. Later assignments override earlier ones, and
//! command-line `--set key=value` pairs override the file.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use sealab::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            cfg.set_pair(line).map_err(|message| Error::Parse {
                line: idx + 1,
                message,
            })?;
        }
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Applies one `key=value` assignment.
    pub fn set_pair(&mut self, pair: &str) -> std::result::Result<(), String> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected `key = value`, got `{pair}`"))?;
        let k = k.trim();
        if k.is_empty() || k.contains(char::is_whitespace) {
            return Err(format!("bad key `{k}`"));
        }
        self.entries.insert(k.to_string(), v.trim().to_string());
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.get_str(key).unwrap_or(default)
    }

    pub fn parse_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.get_str(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::Argument(format!("config key `{key}`: cannot parse `{v}`"))),
        }
    }

    /// Comma-separated list.
    pub fn list_or<T>(&self, key: &str, default: &[T]) -> Result<Vec<T>>
    where
        T: FromStr + Clone,
    {
        match self.get_str(key) {
            None => Ok(default.to_vec()),
            Some(v) => split_list(v)
                .map(|item| {
                    item.parse().map_err(|_| {
                        Error::Argument(format!("config key `{key}`: cannot parse item `{item}`"))
                    })
                })
                .collect(),
        }
    }

    pub fn strings_or(&self, key: &str, default: &[&str]) -> Vec<String> {
        match self.get_str(key) {
            None => default.iter().map(|s| s.to_string()).collect(),
            Some(v) => split_list(v).map(str::to_string).collect(),
        }
    }

    /// Rejects keys outside `allowed`, which catches typos.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::Argument(format!(
                "unknown config key `{k}` (expected one of: {})",
                allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.entries
    }
}

fn split_list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}
