//! Uniform reports and their table / JSON / CSV renderings.
//!
//! JSON output is canonical: object keys are sorted (serde_json's default
//! map is ordered) and documents are compact, so identical inputs give
//! identical bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gl2::Gl2Landmarks;
use crate::grgln::{GrReport, Ingredient};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub ingredients: Option<Vec<Ingredient>>,
    /// Per-degree dimensions, used for CSV output.
    pub series: Option<Vec<u64>>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, params: Value, results: Value, pass: bool) -> Self {
        Report { command: command.into(), params, results, ingredients: None, series: None, pass }
    }

    pub fn with_series(mut self, series: Vec<u64>) -> Self {
        self.series = Some(series);
        self
    }

    pub fn with_ingredients(mut self, ingredients: Vec<Ingredient>) -> Self {
        self.ingredients = Some(ingredients);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "tool_version": TOOL_VERSION,
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "pass": self.pass,
        });
        if let Some(ing) = &self.ingredients {
            v["ingredients"] = json!(ing);
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidInput(format!("unknown format `{s}` (table|json|csv)"))),
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, inner) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, inner, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = report.to_json().to_string();
            s.push('\n');
            s
        }
        Format::Csv => match &report.series {
            Some(series) => {
                let mut s = String::from("degree,dim\n");
                for (d, dim) in series.iter().enumerate() {
                    let _ = writeln!(s, "{d},{dim}");
                }
                s
            }
            None => {
                let mut rows = Vec::new();
                flatten("", &report.to_json(), &mut rows);
                let mut s = String::from("key,value\n");
                for (k, v) in rows {
                    let _ = writeln!(s, "{},{}", csv_field(&k), csv_field(&v));
                }
                s
            }
        },
        Format::Table => {
            let mut rows = vec![("command".to_string(), report.command.clone())];
            flatten("params", &report.params, &mut rows);
            flatten("results", &report.results, &mut rows);
            if let Some(ing) = &report.ingredients {
                for (i, g) in ing.iter().enumerate() {
                    let status = serde_json::to_value(g.status).expect("status").as_str().unwrap_or("").to_string();
                    rows.push((format!("ingredient[{i}]"), format!("[{status}] {}: {}", g.fact, g.quote)));
                }
            }
            rows.push(("pass".into(), report.pass.to_string()));
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (k, v) in rows {
                let _ = writeln!(s, "{k:<width$}  {v}");
            }
            s
        }
    }
}

/// Several reports as one document.
pub fn render_many(reports: &[Report], format: Format) -> String {
    let pass = reports.iter().all(|r| r.pass);
    match format {
        Format::Json => {
            let v = json!({
                "tool_version": TOOL_VERSION,
                "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
                "pass": pass,
            });
            let mut s = v.to_string();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("command,params,pass\n");
            for r in reports {
                let _ = writeln!(s, "{},{},{}", csv_field(&r.command), csv_field(&r.params.to_string()), r.pass);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(s, "{:<5} {} {}", if r.pass { "PASS" } else { "FAIL" }, r.command, r.params);
            }
            let _ = writeln!(s, "overall: {}", if pass { "PASS" } else { "FAIL" });
            s
        }
    }
}

pub fn landmarks_report(l: &Gl2Landmarks) -> Report {
    let command = format!("{} landmarks", l.group.name().to_lowercase());
    let mut results = l.to_json();
    if let Value::Object(map) = &mut results {
        map.remove("p");
        map.remove("r");
    }
    Report::new(command, json!({"p": l.p, "r": l.r}), results, l.matches())
}

/// Reports for kernels and reporters pass unless a discrepancy is flagged.
pub fn gr_report(command: &str, rep: &GrReport) -> Report {
    let mut results = rep.to_json();
    let ingredients = rep.ingredients.clone();
    let params = results.get("params").cloned().unwrap_or(Value::Object(Map::new()));
    if let Value::Object(map) = &mut results {
        map.remove("params");
        map.remove("ingredients");
    }
    let mut report = Report::new(command, params, results, !rep.discrepancy).with_series(rep.series.clone());
    if !ingredients.is_empty() {
        report = report.with_ingredients(ingredients);
    }
    report
}
