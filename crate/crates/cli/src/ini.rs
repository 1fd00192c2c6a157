//! Flat INI: `[section]` headers, `key = value` lines, `#` full-line comments.
//!
//! Order is preserved so an emitted file reads back in the same layout.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::ConfigError;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ini {
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Ini {
    pub fn parse(text: &str) -> Result<Ini, ConfigError> {
        let mut ini = Ini::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let at = || format!("line {}", i + 1);
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .map(str::trim)
                    .filter(|n| !n.is_empty() && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
                    .ok_or_else(|| ConfigError::new(at(), format!("malformed section header `{line}`")))?;
                if ini.section(name).is_some() {
                    return Err(ConfigError::new(name, "section appears twice"));
                }
                ini.sections.push(Section { name: name.to_string(), entries: Vec::new() });
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .filter(|(k, _)| !k.is_empty())
                .ok_or_else(|| ConfigError::new(at(), format!("expected `key = value`, got `{line}`")))?;
            let section = ini
                .sections
                .last_mut()
                .ok_or_else(|| ConfigError::new(key, format!("{}: key outside any section", at())))?;
            if section.entries.iter().any(|(k, _)| k == key) {
                return Err(ConfigError::new(format!("{}.{key}", section.name), "key appears twice"));
            }
            section.entries.push((key.to_string(), value.to_string()));
        }
        Ok(ini)
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn remove_section(&mut self, name: &str) -> Option<Section> {
        let i = self.sections.iter().position(|s| s.name == name)?;
        Some(self.sections.remove(i))
    }

    pub fn push(&mut self, name: &str, entries: Vec<(&str, String)>) {
        self.sections.push(Section {
            name: name.to_string(),
            entries: entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        });
    }
}

impl fmt::Display for Ini {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            writeln!(out, "[{}]", s.name)?;
            for (k, v) in &s.entries {
                writeln!(out, "{k} = {v}")?;
            }
        }
        f.write_str(&out)
    }
}

/// Typed access to one section; remembers which keys were read so leftovers
/// can be rejected.
pub struct Fields<'a> {
    name: &'a str,
    entries: &'a [(String, String)],
    used: HashSet<&'a str>,
}

impl<'a> Fields<'a> {
    pub fn new(name: &'a str, section: Option<&'a Section>) -> Self {
        Fields { name, entries: section.map_or(&[], |s| &s.entries[..]), used: HashSet::new() }
    }

    pub fn key(&self, key: &str) -> String {
        format!("{}.{key}", self.name)
    }

    pub fn raw(&mut self, key: &str) -> Option<&'a str> {
        let (k, v) = self.entries.iter().find(|(k, _)| k == key)?;
        self.used.insert(k.as_str());
        Some(v.as_str())
    }

    pub fn opt<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| ConfigError::new(self.key(key), format!("cannot parse `{v}`: {e}"))),
        }
    }

    pub fn req<T: FromStr>(&mut self, key: &str) -> Result<T, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.opt(key)?.ok_or_else(|| ConfigError::new(self.key(key), "missing required key"))
    }

    /// A finite float, optionally with a custom predicate.
    pub fn real(&mut self, key: &str, ok: impl Fn(f64) -> bool, what: &str) -> Result<Option<f64>, ConfigError> {
        match self.opt::<f64>(key)? {
            Some(v) if !v.is_finite() || !ok(v) => Err(ConfigError::new(self.key(key), format!("must be {what}, got {v}"))),
            other => Ok(other),
        }
    }

    pub fn req_real(&mut self, key: &str, ok: impl Fn(f64) -> bool, what: &str) -> Result<f64, ConfigError> {
        self.real(key, ok, what)?.ok_or_else(|| ConfigError::new(self.key(key), "missing required key"))
    }

    /// Rejects any key that was never read.
    pub fn finish(self) -> Result<(), ConfigError> {
        match self.entries.iter().find(|(k, _)| !self.used.contains(k.as_str())) {
            Some((k, _)) => Err(ConfigError::new(self.key(k), "unknown key")),
            None => Ok(()),
        }
    }
}

pub fn any(_: f64) -> bool {
    true
}

pub fn positive(v: f64) -> bool {
    v > 0.0
}

pub fn non_negative(v: f64) -> bool {
    v >= 0.0
}
