//! The JSON input document: `{"kind": ..., "objects": [{"name": ..., "data": ...}]}`.
//!
//! Classical objects are real vectors; quantum objects are square matrices given as
//! rows of `[re, im]` pairs.

use std::collections::HashSet;
use std::path::Path;

use anyhow::{Context, Result};
use canondiv::classical::PositiveMeasure;
use canondiv::quantum::PositiveOperator;
use canondiv::{CMatrix, Complex64};
use clap::ValueEnum;
use serde::Deserialize;

use crate::usage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Classical,
    Quantum,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Classical => "classical",
            Kind::Quantum => "quantum",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: Kind,
    objects: Vec<RawObject>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObject {
    name: String,
    data: serde_json::Value,
}

pub enum Objects {
    Classical(Vec<(String, PositiveMeasure)>),
    Quantum(Vec<(String, PositiveOperator)>),
}

pub struct Document {
    pub objects: Objects,
}

impl Document {
    pub fn load(path: &Path, expected: Option<Kind>) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, expected).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str, expected: Option<Kind>) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text)
            .map_err(|e| usage(format!("malformed input document: {e}")))?;
        if let Some(k) = expected {
            if k != raw.kind {
                return Err(usage(format!(
                    "--kind {} does not match the document kind {}",
                    k.as_str(),
                    raw.kind.as_str()
                )));
            }
        }
        let mut seen = HashSet::new();
        for o in &raw.objects {
            if !seen.insert(o.name.as_str()) {
                return Err(usage(format!("duplicate object name {:?}", o.name)));
            }
        }
        let objects = match raw.kind {
            Kind::Classical => Objects::Classical(
                raw.objects
                    .into_iter()
                    .map(|o| {
                        let v: Vec<f64> = serde_json::from_value(o.data).map_err(|e| {
                            usage(format!(
                                "object {:?}: expected an array of numbers ({e})",
                                o.name
                            ))
                        })?;
                        let m = PositiveMeasure::new(v)
                            .with_context(|| format!("object {:?}", o.name))?;
                        Ok((o.name, m))
                    })
                    .collect::<Result<_>>()?,
            ),
            Kind::Quantum => Objects::Quantum(
                raw.objects
                    .into_iter()
                    .map(|o| {
                        let m = parse_matrix(&o.name, o.data)?;
                        let op = PositiveOperator::from_matrix(m)
                            .with_context(|| format!("object {:?}", o.name))?;
                        Ok((o.name, op))
                    })
                    .collect::<Result<_>>()?,
            ),
        };
        Ok(Self { objects })
    }

    pub fn kind(&self) -> Kind {
        match self.objects {
            Objects::Classical(_) => Kind::Classical,
            Objects::Quantum(_) => Kind::Quantum,
        }
    }

    pub fn names(&self) -> Vec<&str> {
        match &self.objects {
            Objects::Classical(v) => v.iter().map(|(n, _)| n.as_str()).collect(),
            Objects::Quantum(v) => v.iter().map(|(n, _)| n.as_str()).collect(),
        }
    }

    pub fn measure(&self, name: &str) -> Result<&PositiveMeasure> {
        match &self.objects {
            Objects::Classical(v) => lookup(v, name),
            Objects::Quantum(_) => Err(usage("the document holds quantum objects")),
        }
    }

    pub fn operator(&self, name: &str) -> Result<&PositiveOperator> {
        match &self.objects {
            Objects::Quantum(v) => lookup(v, name),
            Objects::Classical(_) => Err(usage("the document holds classical objects")),
        }
    }
}

fn lookup<'a, T>(v: &'a [(String, T)], name: &str) -> Result<&'a T> {
    v.iter()
        .find(|(n, _)| n == name)
        .map(|(_, x)| x)
        .ok_or_else(|| usage(format!("unknown object name {name:?}")))
}

fn parse_matrix(name: &str, data: serde_json::Value) -> Result<CMatrix> {
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_value(data).map_err(|e| {
        usage(format!(
            "object {name:?}: expected rows of [re, im] pairs ({e})"
        ))
    })?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(usage(format!(
            "object {name:?}: matrix must be square and non-empty"
        )));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

/// Parses `"a:b"` into a name pair.
pub fn parse_pair(s: &str) -> Result<(String, String)> {
    match s.split_once(':') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
        _ => Err(usage(format!("pair must be written name:name, got {s:?}"))),
    }
}
