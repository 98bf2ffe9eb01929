//! Text, CSV and JSON renderings of a [`CensusReport`].

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::locus::{CensusReport, ComponentRecord, Constituent};
use crate::stable_count::JClass;

pub const JSON_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}; expected table, csv or json")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub dimension: u64,
    pub count: u64,
    pub group_order: u64,
    pub constituents: Vec<Constituent>,
    pub fiber_dim: Option<u64>,
    pub base: Option<String>,
}

/// Stable wire form of a census report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub schema: u32,
    pub n: u64,
    #[serde(rename = "N")]
    pub ambient_dim: u64,
    pub j: JClass,
    pub components: Vec<ComponentJson>,
    pub total: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum ParseReportError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("inconsistent report: {0}")]
    Inconsistent(&'static str),
}

impl From<&CensusReport> for CensusJson {
    fn from(r: &CensusReport) -> Self {
        CensusJson {
            schema: JSON_SCHEMA_VERSION,
            n: r.n,
            ambient_dim: r.ambient_dim(),
            j: r.j,
            components: r
                .records
                .iter()
                .map(|c| ComponentJson {
                    dimension: c.dimension,
                    count: c.count,
                    group_order: c.group_order,
                    constituents: c.constituents.clone(),
                    fiber_dim: c.fiber_dim,
                    base: c.base.clone(),
                })
                .collect(),
            total: r.total_components,
        }
    }
}

impl TryFrom<CensusJson> for CensusReport {
    type Error = ParseReportError;

    fn try_from(j: CensusJson) -> Result<Self, Self::Error> {
        if j.schema != JSON_SCHEMA_VERSION {
            return Err(ParseReportError::Schema(j.schema));
        }
        if j.n == 0 || j.ambient_dim != j.n - 1 {
            return Err(ParseReportError::Inconsistent("N must equal n - 1"));
        }
        if j.components.iter().map(|c| c.count).sum::<u64>() != j.total {
            return Err(ParseReportError::Inconsistent("total differs from the sum of counts"));
        }
        Ok(CensusReport {
            n: j.n,
            j: j.j,
            records: j
                .components
                .into_iter()
                .map(|c| ComponentRecord {
                    dimension: c.dimension,
                    count: c.count,
                    group_order: c.group_order,
                    constituents: c.constituents,
                    fiber_dim: c.fiber_dim,
                    base: c.base,
                })
                .collect(),
            total_components: j.total,
        })
    }
}

pub fn parse_census_json(s: &str) -> Result<CensusReport, ParseReportError> {
    let wire: CensusJson = serde_json::from_str(s)?;
    wire.try_into()
}

/// Every dimension from 0 to `n - 2`, zeros included, then the total.
pub fn render_table(r: &CensusReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "N={}, n={}, j={}", r.ambient_dim(), r.n, r.j);
    let _ = writeln!(out, "{:<10} {}", "dimension", "components");
    for dim in 0..=r.n - 2 {
        let _ = writeln!(out, "{:<10} {}", dim, r.count_in_dimension(dim));
    }
    let _ = writeln!(out, "Total number: {}", r.total_components);
    out
}

pub fn render_csv(r: &CensusReport) -> String {
    let mut out = String::from("dimension,count,group_order\n");
    for c in &r.records {
        let _ = writeln!(out, "{},{},{}", c.dimension, c.count, c.group_order);
    }
    out
}

pub fn render_json(r: &CensusReport) -> String {
    let mut s = serde_json::to_string_pretty(&CensusJson::from(r)).expect("census report serializes");
    s.push('\n');
    s
}

pub fn render_census(r: &CensusReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => render_table(r),
        OutputFormat::Csv => render_csv(r),
        OutputFormat::Json => render_json(r),
    }
}
