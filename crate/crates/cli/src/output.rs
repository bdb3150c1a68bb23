use clap::ValueEnum;
use gkforge_core::report::{csv_field, Report};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Rows with named columns; the one shape every tabular command emits.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Table {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> =
                        self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.clone())).collect();
                    Value::Object(m)
                })
                .collect(),
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = self.columns.join(",");
                s.push('\n');
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|v| csv_field(&plain(v))).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).unwrap();
                s.push('\n');
                s
            }
            Format::Text => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(plain).collect()).collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|k| cells.iter().map(|r| r[k].len()).chain([self.columns[k].len()]).max().unwrap())
                    .collect();
                let line = |items: Vec<&str>| {
                    let padded: Vec<String> =
                        items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}", w = *w)).collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut s = line(self.columns.clone());
                for r in &cells {
                    s.push_str(&line(r.iter().map(String::as_str).collect()));
                }
                s
            }
        }
    }
}

pub fn render_reports(reports: &[Report], format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&r.render_text());
            }
            let (ok, bad) = reports.iter().fold((0, 0), |(a, b), r| {
                let (x, y) = r.count();
                (a + x, b + y)
            });
            s.push_str(&format!("total: {ok} passed, {bad} failed\n"));
            s
        }
        Format::Csv => {
            let mut s = String::from("suite,check,passed,detail,witness\n");
            for r in reports {
                s.extend(r.render_csv().lines().skip(1).map(|l| format!("{l}\n")));
            }
            s
        }
        Format::Json => {
            let passed = reports.iter().all(Report::passed);
            let mut s = serde_json::to_string_pretty(&json!({ "passed": passed, "reports": reports })).unwrap();
            s.push('\n');
            s
        }
    }
}
