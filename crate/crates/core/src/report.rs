//! Serialization of search reports: JSON, CSV and the aggregate table.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search::{aggregate, generator_histogram, SearchReport};

pub fn to_json(report: &SearchReport) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::Serialization(e.to_string()))
}

pub fn from_json(text: &str) -> Result<SearchReport> {
    serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
}

#[derive(Serialize)]
struct CsvRow {
    d: usize,
    rule_f: u64,
    rule_g: u64,
    nl_f: u32,
    nl_g: u32,
    sbox_nl: u32,
    sbox_degree: usize,
    lcs_dim: usize,
    is_polynomial: bool,
    generator_bitmask: Option<u64>,
    is_cyclic: bool,
}

/// One row per record. The header is written even when there are no records.
pub fn to_csv(report: &SearchReport) -> Result<String> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let ser = |e: csv::Error| Error::Serialization(e.to_string());
    writer
        .write_record([
            "d",
            "rule_f",
            "rule_g",
            "nl_f",
            "nl_g",
            "sbox_nl",
            "sbox_degree",
            "lcs_dim",
            "is_polynomial",
            "generator_bitmask",
            "is_cyclic",
        ])
        .map_err(ser)?;
    for r in &report.records {
        writer
            .serialize(CsvRow {
                d: r.diameter,
                rule_f: r.rule_f,
                rule_g: r.rule_g,
                nl_f: r.nl_f,
                nl_g: r.nl_g,
                sbox_nl: r.sbox_nl,
                sbox_degree: r.sbox_degree,
                lcs_dim: r.lcs_dim,
                is_polynomial: r.classification.is_polynomial,
                generator_bitmask: r
                    .classification
                    .generator
                    .as_ref()
                    .and_then(|g| g.to_bitmask()),
                is_cyclic: r.classification.is_cyclic,
            })
            .map_err(ser)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

/// Aggregate table with the columns `d, nl(f,g), #OCA, dim, #dim` followed by
/// the generator and its count, then a generator histogram.
///
/// Recomputed from the records, so re-rendering a deserialized report gives
/// the same text.
pub fn render_table(report: &SearchReport) -> String {
    let rows = aggregate(&report.records);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<3} {:<9} {:>6} {:>4} {:>6}  {:<14} {:>6} {}",
        "d", "nl(f,g)", "#OCA", "dim", "#dim", "generator", "#gen", "cyclic"
    );
    for row in &rows {
        let oca: usize = rows
            .iter()
            .filter(|r| r.nl_bucket == row.nl_bucket)
            .map(|r| r.count)
            .sum();
        let dim: usize = rows
            .iter()
            .filter(|r| r.nl_bucket == row.nl_bucket && r.lcs_dim == row.lcs_dim)
            .map(|r| r.count)
            .sum();
        let generator = row
            .generator
            .as_ref()
            .map_or_else(|| "-".to_string(), |g| g.to_string());
        let _ = writeln!(
            out,
            "{:<3} {:<9} {:>6} {:>4} {:>6}  {:<14} {:>6} {}",
            report.diameter,
            format!("({},{})", row.nl_bucket.0, row.nl_bucket.1),
            oca,
            row.lcs_dim,
            dim,
            generator,
            row.count,
            if row.is_cyclic { "yes" } else { "no" },
        );
    }
    let _ = writeln!(
        out,
        "\npairs enumerated: {}  both linear: {}  not orthogonal: {}  records: {}",
        report.pairs_enumerated,
        report.pairs_both_linear,
        report.pairs_not_orthogonal,
        report.records.len()
    );
    let hist = generator_histogram(&report.records);
    if !hist.is_empty() {
        let _ = writeln!(out, "\n{:<14} {:>8} {:>6}", "generator", "bitmask", "count");
        for (generator, count) in hist {
            let (name, mask) = match generator {
                Some(g) => (
                    g.to_string(),
                    g.to_bitmask()
                        .map_or("-".to_string(), |m| format!("{m:#x}")),
                ),
                None => ("none".to_string(), "-".to_string()),
            };
            let _ = writeln!(out, "{name:<14} {mask:>8} {count:>6}");
        }
    }
    out
}
