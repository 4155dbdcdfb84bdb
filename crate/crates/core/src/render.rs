//! Text, CSV and JSON output for Betti tables, multigraded Betti numbers
//! and homology dimensions.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{BettiTable, MultigradedBetti};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("unknown format `{0}` (expected text, csv or json)")]
    UnknownFormat(String),
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl FromStr for Format {
    type Err = RenderError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(RenderError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn render_table(t: &BettiTable, fmt: Format) -> String {
    match fmt {
        Format::Text => render_text(t),
        Format::Csv => render_csv(t),
        Format::Json => render_json(t),
    }
}

/// Rows `j = 0..reg`, columns `i = 0..projdim`, entry `β_{i,i+j}`, zeros as `.`.
pub fn render_text(t: &BettiTable) -> String {
    let rows = t.rows();
    let totals = t.totals();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| if c == 0 { ".".to_string() } else { c.to_string() }).collect())
        .collect();
    let width = totals
        .iter()
        .map(|c| c.to_string().len())
        .chain(cells.iter().flatten().map(String::len))
        .chain((0..totals.len()).map(|i| i.to_string().len()))
        .max()
        .unwrap_or(1);
    let label_width = rows.len().saturating_sub(1).to_string().len().max(5) + 1;
    let line = |label: &str, items: &mut dyn Iterator<Item = String>| {
        let mut s = format!("{label:>label_width$}");
        for it in items {
            let _ = write!(s, " {it:>width$}");
        }
        s
    };
    let mut out = String::new();
    out.push_str(line("", &mut (0..totals.len()).map(|i| i.to_string())).trim_end());
    out.push('\n');
    out.push_str(&line("total:", &mut totals.iter().map(u64::to_string)));
    out.push('\n');
    for (j, r) in cells.into_iter().enumerate() {
        out.push_str(&line(&format!("{j}:"), &mut r.into_iter()));
        out.push('\n');
    }
    out
}

/// Header `strand,0,1,..`; one line per strand.
pub fn render_csv(t: &BettiTable) -> String {
    let rows = t.rows();
    let cols = rows.first().map_or(0, Vec::len);
    let mut out = String::from("strand");
    for i in 0..cols {
        let _ = write!(out, ",{i}");
    }
    out.push('\n');
    for (j, r) in rows.iter().enumerate() {
        out.push_str(&j.to_string());
        for c in r {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTable {
    projdim: Option<usize>,
    reg: Option<u64>,
    total: Vec<u64>,
    /// `rows[j][i] = β_{i,i+j}`
    rows: Vec<Vec<u64>>,
}

pub fn render_json(t: &BettiTable) -> String {
    let doc = JsonTable { projdim: t.projdim(), reg: t.reg(), total: t.totals(), rows: t.rows() };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

fn from_rows(rows: &[Vec<u64>]) -> BettiTable {
    let mut entries = BTreeMap::new();
    for (j, r) in rows.iter().enumerate() {
        for (i, &c) in r.iter().enumerate() {
            if c != 0 {
                entries.insert((i, (i + j) as u64), c);
            }
        }
    }
    BettiTable::from_entries(&entries)
}

pub fn parse_csv(text: &str) -> Result<BettiTable, RenderError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| RenderError::Malformed("empty input".into()))?;
    let cols = header.split(',').count() - 1;
    let mut rows = Vec::new();
    for (j, line) in lines.enumerate() {
        let mut fields = line.split(',');
        let strand: usize = fields
            .next()
            .and_then(|f| f.trim().parse().ok())
            .ok_or_else(|| RenderError::Malformed(format!("bad strand in `{line}`")))?;
        if strand != j {
            return Err(RenderError::Malformed(format!("expected strand {j}, got {strand}")));
        }
        let row = fields
            .map(|f| f.trim().parse::<u64>().map_err(|_| RenderError::Malformed(format!("bad entry `{f}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != cols {
            return Err(RenderError::Malformed(format!("row {j} has {} entries, header has {cols}", row.len())));
        }
        rows.push(row);
    }
    Ok(from_rows(&rows))
}

pub fn parse_json(text: &str) -> Result<BettiTable, RenderError> {
    let doc: JsonTable = serde_json::from_str(text)?;
    Ok(from_rows(&doc.rows))
}

pub fn parse_table(text: &str, fmt: Format) -> Result<BettiTable, RenderError> {
    match fmt {
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text),
        Format::Text => Err(RenderError::Malformed("text output is not parsed back".into())),
    }
}

/// One line per nonzero `β_{i,a}`.
pub fn render_multigraded(mb: &MultigradedBetti, fmt: Format) -> String {
    match fmt {
        Format::Text => {
            let mut out = String::new();
            for (i, a, c) in mb.iter() {
                let deg: Vec<String> = a.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "β_{{{i},({})}} = {c}", deg.join(","));
            }
            out
        }
        Format::Csv => {
            let n = mb.iter().next().map_or(0, |(_, a, _)| a.len());
            let mut out = String::from("i");
            for v in 1..=n {
                let _ = write!(out, ",x{v}");
            }
            out.push_str(",beta\n");
            for (i, a, c) in mb.iter() {
                out.push_str(&i.to_string());
                for e in a {
                    let _ = write!(out, ",{e}");
                }
                let _ = writeln!(out, ",{c}");
            }
            out
        }
        Format::Json => {
            let entries: Vec<serde_json::Value> = mb
                .iter()
                .map(|(i, a, c)| serde_json::json!({"i": i, "multidegree": a, "beta": c}))
                .collect();
            serde_json::to_string_pretty(&entries).expect("plain data serializes")
        }
    }
}

/// `dims[k]` is the dimension of reduced homology in degree `k - 1`.
pub fn render_homology(dims: &[usize], fmt: Format) -> String {
    let degree = |k: usize| k as i64 - 1;
    match fmt {
        Format::Text => dims.iter().enumerate().map(|(k, d)| format!("H~_{}: {d}\n", degree(k))).collect(),
        Format::Csv => {
            let mut out = String::from("degree,dim\n");
            for (k, d) in dims.iter().enumerate() {
                let _ = writeln!(out, "{},{d}", degree(k));
            }
            out
        }
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({"from_degree": -1, "dims": dims}))
            .expect("plain data serializes"),
    }
}
