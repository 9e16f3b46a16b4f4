//! Run settings: `key = value` config files merged under command-line flags.
//!
//! Lists are comma separated; numeric lists also accept `start:stop:step`
//! (inclusive), e.g. `d = 0:100:10`.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{usage, LabError};

/// Every recognised key. Flags use the same names with `-` for `_`.
pub const KEYS: &[&str] = &[
    "p",
    "a",
    "d",
    "gamma",
    "alpha",
    "slots",
    "reps",
    "seed",
    "policies",
    "out",
    "sweep",
    "rho",
    "block_k",
    "q",
    "per_rep",
    "fill_idle",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> Result<String, LabError> {
    let k = key.trim().replace('-', "_");
    if KEYS.contains(&k.as_str()) {
        Ok(k)
    } else {
        usage(format!("unknown setting `{}`", key.trim()))
    }
}

impl Settings {
    pub fn new() -> Self {
        Settings::default()
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), LabError> {
        self.values.insert(normalize(key)?, value.trim().to_string());
        Ok(())
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, LabError> {
        let mut s = Settings::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return usage(format!("config line {}: expected `key = value`", i + 1));
            };
            s.set(k, v).map_err(|e| LabError::Usage(format!("config line {}: {e}", i + 1)))?;
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| LabError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// `self` with every value of `over` taking precedence.
    pub fn overlay(mut self, over: &Settings) -> Self {
        for (k, v) in &over.values {
            self.values.insert(k.clone(), v.clone());
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, LabError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => parse_f64(key, v),
        }
    }

    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64, LabError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().or_else(|_| usage(format!("`{key}` expects a non-negative integer, got `{v}`"))),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, LabError> {
        self.u64_or(key, default as u64).map(|v| v as usize)
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool, LabError> {
        match self.get(key) {
            None => Ok(default),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(v) => usage(format!("`{key}` expects true or false, got `{v}`")),
        }
    }

    pub fn f64_list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>, LabError> {
        match self.get(key) {
            None => Ok(default.to_vec()),
            Some(v) => parse_f64_list(key, v),
        }
    }

    pub fn usize_list_or(&self, key: &str, default: &[usize]) -> Result<Vec<usize>, LabError> {
        let Some(v) = self.get(key) else {
            return Ok(default.to_vec());
        };
        parse_f64_list(key, v)?
            .into_iter()
            .map(|x| {
                if x >= 0.0 && x.fract() == 0.0 {
                    Ok(x as usize)
                } else {
                    usage(format!("`{key}` expects non-negative integers, got {x}"))
                }
            })
            .collect()
    }

    pub fn str_list_or(&self, key: &str, default: &[&str]) -> Vec<String> {
        match self.get(key) {
            None => default.iter().map(|s| s.to_string()).collect(),
            Some(v) => v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        }
    }

    /// A single value of a key that may hold a list.
    pub fn single_f64_or(&self, key: &str, default: f64) -> Result<f64, LabError> {
        let v = self.f64_list_or(key, &[default])?;
        match v.as_slice() {
            [x] => Ok(*x),
            _ => usage(format!("`{key}` takes a single value here")),
        }
    }

    pub fn single_usize_or(&self, key: &str, default: usize) -> Result<usize, LabError> {
        let v = self.usize_list_or(key, &[default])?;
        match v.as_slice() {
            [x] => Ok(*x),
            _ => usage(format!("`{key}` takes a single value here")),
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, LabError> {
    match v.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => usage(format!("`{key}` expects a number, got `{v}`")),
    }
}

fn parse_f64_list(key: &str, v: &str) -> Result<Vec<f64>, LabError> {
    let mut out = Vec::new();
    for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [x] => out.push(parse_f64(key, x)?),
            [a, b, s] => {
                let (a, b, s) = (parse_f64(key, a)?, parse_f64(key, b)?, parse_f64(key, s)?);
                if s <= 0.0 || b < a {
                    return usage(format!("`{key}`: bad range `{item}`"));
                }
                let n = ((b - a) / s + 1e-9).floor() as usize;
                out.extend((0..=n).map(|i| ((a + i as f64 * s) * 1e12).round() / 1e12));
            }
            _ => return usage(format!("`{key}`: bad list item `{item}`")),
        }
    }
    if out.is_empty() {
        return usage(format!("`{key}` is empty"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_with_comments() {
        let s = Settings::parse("# run\np = 0.1\n\nblock-k=20 # trailing\nd = 0:20:10, 50\n").unwrap();
        assert_eq!(s.f64_or("p", 0.2).unwrap(), 0.1);
        assert_eq!(s.usize_or("block_k", 50).unwrap(), 20);
        assert_eq!(s.usize_list_or("d", &[]).unwrap(), vec![0, 10, 20, 50]);
        assert_eq!(s.f64_or("a", 0.7).unwrap(), 0.7);
    }

    #[test]
    fn flags_override_file() {
        let file = Settings::parse("p = 0.1\nreps = 5").unwrap();
        let mut cli = Settings::new();
        cli.set("p", "0.3").unwrap();
        let s = file.overlay(&cli);
        assert_eq!(s.f64_or("p", 0.2).unwrap(), 0.3);
        assert_eq!(s.usize_or("reps", 100).unwrap(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Settings::parse("colour = red").unwrap_err().is_usage());
        assert!(Settings::parse("p 0.1").is_err());
        let s = Settings::parse("p = x\nd = 1,2\nreps = -1").unwrap();
        assert!(s.f64_or("p", 0.0).is_err());
        assert!(s.single_usize_or("d", 0).is_err());
        assert!(s.usize_or("reps", 1).is_err());
        assert!(Settings::parse("d = 5:1:1").unwrap().f64_list_or("d", &[]).is_err());
    }

    #[test]
    fn fractional_range() {
        let s = Settings::parse("sweep = 0:0.4:0.1").unwrap();
        let v = s.f64_list_or("sweep", &[]).unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(v[3], 0.3);
        assert_eq!(v[4], 0.4);
    }
}
