//! Key=value configuration files and the resolved-config echo.
//!
//! Precedence: explicit command-line flags override file values, which
//! override built-in defaults. Every run writes its fully resolved settings
//! to `<out>/config.resolved` in the same key=value format, so re-invoking
//! the same subcommand with `--config <out>/config.resolved` reproduces the
//! outputs byte for byte.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

/// Parsed key=value file. Keys are unique; later duplicates are an error so
/// a typo cannot silently lose a setting.
#[derive(Debug, Default)]
pub struct KvFile {
    pairs: BTreeMap<String, String>,
}

impl KvFile {
    pub fn load(path: &Path) -> Result<KvFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("config file {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<KvFile> {
        let mut pairs = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key=value, got '{line}'", idx + 1))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if pairs.insert(key.clone(), value).is_some() {
                bail!("line {}: duplicate key '{key}'", idx + 1);
            }
        }
        Ok(KvFile { pairs })
    }

    /// Typed lookup; `None` when the key is absent.
    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        match self.pairs.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| anyhow!("config key {key}: invalid value '{raw}': {e}")),
        }
    }

    pub fn get_raw(&self, key: &str) -> Option<&str> {
        self.pairs.get(key).map(String::as_str)
    }

    /// The subcommand recorded in a resolved config must match the one being
    /// run, so a sweep config cannot silently drive a cost run.
    pub fn check_subcommand(&self, expected: &str) -> Result<()> {
        if let Some(found) = self.get_raw("subcommand") {
            if found != expected {
                bail!("config file was resolved for subcommand '{found}', not '{expected}'");
            }
        }
        Ok(())
    }
}

/// Deterministic serializer for the resolved-config echo: sorted
/// `key=value` lines, one setting each.
#[derive(Debug, Default)]
pub struct Resolved {
    pairs: BTreeMap<String, String>,
}

impl Resolved {
    pub fn new(subcommand: &str) -> Resolved {
        let mut r = Resolved::default();
        r.put("subcommand", subcommand);
        r
    }

    pub fn put(&mut self, key: &str, value: impl Display) {
        self.pairs.insert(key.to_string(), value.to_string());
    }

    pub fn put_list<T: Display>(&mut self, key: &str, values: &[T]) {
        let joined = values
            .iter()
            .map(T::to_string)
            .collect::<Vec<_>>()
            .join(",");
        self.pairs.insert(key.to_string(), joined);
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.pairs {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn write(&self, out_dir: &Path) -> Result<()> {
        let path = out_dir.join("config.resolved");
        std::fs::write(&path, self.to_text())
            .with_context(|| format!("cannot write {}", path.display()))
    }
}

/// Flag value, else file value, else default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Comma-separated list parser for flags and config values alike.
pub fn parse_list<T: FromStr>(raw: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: Display,
{
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|e| anyhow!("{what}: invalid value '{s}': {e}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let kv = KvFile::parse("# comment\n\na=1\nb = two \n").unwrap();
        assert_eq!(kv.get::<u64>("a").unwrap(), Some(1));
        assert_eq!(kv.get_raw("b"), Some("two"));
        assert_eq!(kv.get::<u64>("missing").unwrap(), None);
    }

    #[test]
    fn rejects_duplicates_and_junk() {
        assert!(KvFile::parse("a=1\na=2\n").is_err());
        assert!(KvFile::parse("just a line\n").is_err());
        assert!(KvFile::parse("a=x\n").unwrap().get::<u64>("a").is_err());
    }

    #[test]
    fn resolved_text_is_sorted_and_reparsable() {
        let mut r = Resolved::new("sweep");
        r.put("zeta", 3);
        r.put("alpha", 0.25);
        r.put_list("mus", &[0.3, 0.5, 0.7]);
        let text = r.to_text();
        assert_eq!(
            text,
            "alpha=0.25\nmus=0.3,0.5,0.7\nsubcommand=sweep\nzeta=3\n"
        );
        let kv = KvFile::parse(&text).unwrap();
        assert_eq!(kv.get::<f64>("alpha").unwrap(), Some(0.25));
        assert_eq!(
            parse_list::<f64>(kv.get_raw("mus").unwrap(), "mus").unwrap(),
            vec![0.3, 0.5, 0.7]
        );
    }

    #[test]
    fn subcommand_guard() {
        let kv = KvFile::parse("subcommand=sweep\n").unwrap();
        assert!(kv.check_subcommand("sweep").is_ok());
        assert!(kv.check_subcommand("cost").is_err());
    }
}
