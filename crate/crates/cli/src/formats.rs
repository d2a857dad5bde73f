//! Complex files, filtration files and structured barcode output.
//!
//! A complex file lists one facet per line as space-separated vertex ids,
//! with `#` starting a comment. A filtration file is a JSON document
//! `{"name": ..., "levels": [[facet, ...], ...]}` where each facet is an array
//! of vertex ids and each level lists every facet present at that level.

use std::fmt::Write as _;

use phcalc_core::{Barcode, Death, Filtration, PersistencePair, Simplex};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Parses a facet list. Errors name the 1-based line.
pub fn parse_complex(text: &str) -> Result<Vec<Simplex>, CliError> {
    let mut facets = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let located = |message: String| CliError::Parse {
            location: format!("line {}", idx + 1),
            message,
        };
        let vertices = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| located(format!("`{tok}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        facets.push(Simplex::new(vertices).map_err(|e| located(e.to_string()))?);
    }
    Ok(facets)
}

pub fn serialize_complex(facets: &[Simplex]) -> String {
    let mut out = String::new();
    for f in facets {
        let line: Vec<String> = f.vertices().iter().map(u64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub levels: Vec<Vec<Vec<u64>>>,
}

impl FiltrationFile {
    pub fn from_level_facets(name: Option<String>, levels: &[Vec<Simplex>]) -> Self {
        Self {
            name,
            levels: levels
                .iter()
                .map(|l| l.iter().map(|s| s.vertices().to_vec()).collect())
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    /// Levels as simplices; a bad facet is reported as `level j, facet k`.
    pub fn level_facets(&self) -> Result<Vec<Vec<Simplex>>, CliError> {
        self.levels
            .iter()
            .enumerate()
            .map(|(j, level)| {
                level
                    .iter()
                    .enumerate()
                    .map(|(k, facet)| {
                        Simplex::new(facet.iter().copied()).map_err(|e| CliError::Parse {
                            location: format!("level {j}, facet {k}"),
                            message: e.to_string(),
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Builds the filtration, reading levels cumulatively or, with
    /// `incremental`, as per-level additions.
    pub fn to_filtration(&self, incremental: bool) -> Result<Filtration, CliError> {
        if self.levels.is_empty() {
            return Err(CliError::Parse {
                location: "levels".into(),
                message: "a filtration needs at least one level".into(),
            });
        }
        let facets = self.level_facets()?;
        let built = if incremental {
            Filtration::from_incremental_facets(facets)
        } else {
            Filtration::from_level_facets(facets)
        };
        built.map_err(CliError::Validation)
    }

    /// JSON with one level per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        if let Some(name) = &self.name {
            let _ = writeln!(
                out,
                "  \"name\": {},",
                serde_json::to_string(name).expect("strings serialize")
            );
        }
        out.push_str("  \"levels\": [");
        for (j, level) in self.levels.iter().enumerate() {
            out.push_str(if j == 0 { "\n    " } else { ",\n    " });
            out.push_str(&serde_json::to_string(level).expect("integers serialize"));
        }
        out.push_str(if self.levels.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub birth: usize,
    /// `None` for an interval that never dies.
    pub death: Option<usize>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarcodeRecord {
    pub dimension: usize,
    pub intervals: Vec<IntervalRecord>,
}

impl From<&Barcode> for BarcodeRecord {
    fn from(b: &Barcode) -> Self {
        Self {
            dimension: b.dimension,
            intervals: b
                .pairs
                .iter()
                .map(|p| IntervalRecord {
                    birth: p.birth,
                    death: p.death.finite(),
                    multiplicity: p.multiplicity,
                })
                .collect(),
        }
    }
}

impl From<&BarcodeRecord> for Barcode {
    fn from(r: &BarcodeRecord) -> Self {
        Barcode::new(
            r.dimension,
            r.intervals
                .iter()
                .map(|i| PersistencePair {
                    birth: i.birth,
                    death: i.death.map_or(Death::Infinite, Death::Finite),
                    multiplicity: i.multiplicity,
                })
                .collect(),
        )
    }
}

pub fn parse_barcodes(text: &str) -> Result<Vec<BarcodeRecord>, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let parsed = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|one| vec![one])
    };
    parsed.map_err(|e| CliError::Parse {
        location: "barcode document".into(),
        message: e.to_string(),
    })
}
