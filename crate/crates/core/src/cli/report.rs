//! Machine-readable reports and their plain-text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Command;
use crate::error::Result;
use crate::verify::{SpectralCertificate, TilingCertificate};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Tiling(TilingCertificate),
    Spectral(SpectralCertificate),
}

impl Certificate {
    pub fn verdict(&self) -> bool {
        match self {
            Certificate::Tiling(c) => c.verdict,
            Certificate::Spectral(c) => c.verdict,
        }
    }

    pub fn recheck(&self) -> Result<bool> {
        match self {
            Certificate::Tiling(c) => c.recheck(),
            Certificate::Spectral(c) => c.recheck(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: Command,
    /// The job as parsed, in canonical form.
    pub input: Value,
    pub verdict: bool,
    pub summary: String,
    pub certificates: Vec<Certificate>,
    pub constructed: Option<Value>,
    pub elapsed_ms: f64,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Re-verifies every certificate from its embedded inputs. True when each one
    /// reproduces its verdict and witness, and the report verdict matches them.
    pub fn recheck(&self) -> Result<bool> {
        for c in &self.certificates {
            if !c.recheck()? {
                return Ok(false);
            }
        }
        Ok(self.certificates.is_empty() || self.verdict == self.certificates.iter().all(Certificate::verdict))
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command     {}", self.command.name());
        let _ = writeln!(out, "verdict     {}", self.verdict);
        let _ = writeln!(out, "summary     {}", self.summary);
        for c in &self.certificates {
            let (kind, n, d, verdict, witness) = match c {
                Certificate::Tiling(t) => ("tiling", t.n, t.d, t.verdict, t.witness.as_ref().map(json)),
                Certificate::Spectral(s) => ("spectral", s.n, s.d, s.verdict, s.witness.as_ref().map(json)),
            };
            let _ = writeln!(out, "certificate {kind} in Z_{n}^{d}: {verdict}");
            if let Some(w) = witness {
                let _ = writeln!(out, "  witness   {w}");
            }
        }
        if let Some(c) = &self.constructed {
            let _ = writeln!(out, "constructed {c}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note        {n}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning     {w}");
        }
        let _ = writeln!(out, "elapsed     {:.3} ms", self.elapsed_ms);
        out
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default()
}
