//! Tabular output files and the `report.json` manifest.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Probability density sampled on a grid; integrates to one.
    Density,
    Curve,
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => x.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Num(x) => Json::from(*x),
            Cell::Text(s) => Json::from(s.as_str()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub stem: String,
    pub kind: Kind,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(stem: &str, kind: Kind, columns: &[&str]) -> Self {
        Self { stem: stem.to_string(), kind, columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    /// Two-column table `(abscissa, value)`.
    pub fn xy(stem: &str, kind: Kind, columns: [&str; 2], xs: &[f64], ys: &[f64]) -> Self {
        let mut t = Self::new(stem, kind, &columns);
        t.rows = xs.iter().zip(ys).map(|(x, y)| vec![Cell::Num(*x), Cell::Num(*y)]).collect();
        t
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.columns.join(",");
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(",")).unwrap();
                }
                out
            }
            Format::Json => {
                let data: Vec<Vec<Json>> = self.rows.iter().map(|r| r.iter().map(Cell::json).collect()).collect();
                let mut s = serde_json::to_string_pretty(&json!({ "columns": self.columns, "data": data })).unwrap();
                s.push('\n');
                s
            }
        }
    }

    pub fn file_name(&self, format: Format) -> String {
        format!("{}.{}", self.stem, format.extension())
    }
}

/// Round to six significant figures; non-finite values pass through.
pub fn sig6(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

fn round_json(v: Json) -> Json {
    match v {
        Json::Number(n) if n.is_f64() => n.as_f64().map(|x| Json::from(sig6(x))).unwrap_or(Json::Number(n)),
        Json::Array(items) => Json::Array(items.into_iter().map(round_json).collect()),
        Json::Object(map) => Json::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Everything a scenario produces, held in memory until written.
#[derive(Debug, Default)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub scalars: BTreeMap<String, Json>,
    pub details: Map<String, Json>,
}

impl Outcome {
    pub fn scalar(&mut self, key: impl Into<String>, value: impl Into<Json>) {
        self.scalars.insert(key.into(), value.into());
    }

    pub fn detail(&mut self, key: impl Into<String>, value: Json) {
        self.details.insert(key.into(), value);
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn report(&self, scenario: &str, anchor: Option<&str>, params: &BTreeMap<String, Json>, format: Format) -> Json {
        let files: Vec<Json> = self
            .tables
            .iter()
            .map(|t| json!({ "name": t.file_name(format), "kind": t.kind, "columns": t.columns, "rows": t.rows.len() }))
            .collect();
        let mut report = json!({
            "scenario": scenario,
            "parameters": params,
            "scalars": round_json(Json::Object(self.scalars.clone().into_iter().collect())),
            "details": round_json(Json::Object(self.details.clone())),
            "files": files,
        });
        if let Some(a) = anchor {
            report["anchor"] = Json::from(a);
        }
        report
    }

    /// Write every table plus `report.json` into `dir`, returning the paths.
    pub fn write(&self, dir: &Path, report: &Json, format: Format) -> anyhow::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating output directory {}", dir.display()))?;
        let mut paths = Vec::new();
        for t in &self.tables {
            let path = dir.join(t.file_name(format));
            std::fs::write(&path, t.render(format)).with_context(|| format!("writing {}", path.display()))?;
            paths.push(path);
        }
        let path = dir.join("report.json");
        let mut text = serde_json::to_string_pretty(report)?;
        text.push('\n');
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        paths.push(path);
        Ok(paths)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_figures() {
        assert_eq!(sig6(1.46209876), 1.4621);
        assert_eq!(sig6(0.000416123456), 0.000416123);
        assert_eq!(sig6(-23986.44), -23986.4);
        assert!(sig6(-0.0).is_sign_positive());
        assert!(sig6(f64::INFINITY).is_infinite());
    }

    #[test]
    fn csv_layout() {
        let t = Table::xy("d", Kind::Density, ["p", "density"], &[0.0, 0.5], &[1.0, 0.25]);
        assert_eq!(t.render(Format::Csv), "p,density\n0,1\n0.5,0.25\n");
        assert_eq!(t.file_name(Format::Json), "d.json");
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new("iso", Kind::Table, &["name", "ghz"]);
        t.push(vec!["NH3".into(), 24.0.into()]);
        let v: Json = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(v["columns"], json!(["name", "ghz"]));
        assert_eq!(v["data"], json!([["NH3", 24.0]]));
    }

    #[test]
    fn report_rounds_nested_scalars() {
        let mut o = Outcome::default();
        o.scalar("k", 1.462098765);
        o.detail("lambda", json!([0.80330444, 0.19669556]));
        let r = o.report("schmidt", None, &BTreeMap::new(), Format::Csv);
        assert_eq!(r["scalars"]["k"], json!(1.4621));
        assert_eq!(r["details"]["lambda"], json!([0.803304, 0.196696]));
    }
}
