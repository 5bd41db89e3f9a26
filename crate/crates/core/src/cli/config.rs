use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Construct,
    Verify,
    Discrepancy,
    Scaling,
    Selftest,
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommandKind::Construct => "construct",
            CommandKind::Verify => "verify",
            CommandKind::Discrepancy => "discrepancy",
            CommandKind::Scaling => "scaling",
            CommandKind::Selftest => "selftest",
        })
    }
}

/// Every run setting. All fields are optional so that a config file and
/// command-line flags can be layered with [`RunConfig::overlay`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irrational: Option<String>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($f:ident),*) => {
        RunConfig { $($f: $top.$f.or($base.$f)),* }
    };
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(0, |s| text[..s.start].matches('\n').count() + 1);
            Error::Parse { line, msg: e.message().to_string() }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config fields are serializable")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// Fields set in `top` win over those in `self`.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        overlay_fields!(base, top; command, family, b, m, m_min, s, alpha, t, n, q, samples, seed, threads, cap, out, input, checks, irrational)
    }

    pub fn family(&self) -> Result<&str> {
        self.family.as_deref().ok_or_else(|| Error::param("missing --family"))
    }

    pub fn b(&self) -> Result<u32> {
        self.b.ok_or_else(|| Error::param("missing --b"))
    }

    pub fn m(&self) -> Result<usize> {
        self.m.ok_or_else(|| Error::param("missing --m"))
    }

    pub fn s(&self) -> Result<usize> {
        self.s.ok_or_else(|| Error::param("missing --s"))
    }

    pub fn alpha(&self) -> Result<usize> {
        self.alpha.ok_or_else(|| Error::param("missing --alpha"))
    }

    pub fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| Error::param("missing --N"))
    }

    pub fn q(&self) -> f64 {
        self.q.unwrap_or(2.0)
    }

    pub fn samples(&self) -> usize {
        self.samples.unwrap_or(1 << 14)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn cap(&self) -> u64 {
        self.cap.unwrap_or(1 << 24)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = RunConfig {
            command: Some(CommandKind::Scaling),
            family: Some("dp-net".into()),
            alpha: Some(3),
            s: Some(2),
            m_min: Some(4),
            m: Some(12),
            n: Some(100),
            q: Some(2.5),
            checks: Some(vec!["t-value".into(), "char".into()]),
            out: Some("out.csv".into()),
            ..Default::default()
        };
        let text = c.to_toml();
        assert!(text.contains("N = 100"), "{text}");
        assert_eq!(RunConfig::from_toml(&text).unwrap(), c);
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = RunConfig::from_toml("b = 5\nbogus = 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn flags_win() {
        let file = RunConfig { b: Some(5), m: Some(2), s: Some(2), ..Default::default() };
        let flags = RunConfig { m: Some(3), ..Default::default() };
        let merged = file.overlay(flags);
        assert_eq!((merged.b, merged.m, merged.s), (Some(5), Some(3), Some(2)));
        assert!(merged.alpha().is_err());
        assert_eq!(merged.q(), 2.0);
    }
}
