use num::BigRational;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// A command result, renderable as an aligned table, CSV or JSON.
pub struct Report {
    pub notes: Vec<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Report {
    pub fn new(headers: &[&str], json: Value) -> Self {
        Report {
            notes: Vec::new(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            json,
        }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&csv_line(&self.headers));
                for r in &self.rows {
                    out.push_str(&csv_line(r));
                }
                out
            }
            Format::Table => {
                let mut out = String::new();
                for n in &self.notes {
                    out.push_str(n);
                    out.push('\n');
                }
                if self.headers.is_empty() {
                    return out;
                }
                let cols = self.headers.len();
                let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (k, c) in r.iter().enumerate().take(cols) {
                        width[k] = width[k].max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let parts: Vec<String> = cells
                        .iter()
                        .enumerate()
                        .map(|(k, c)| format!("{c:<w$}", w = width[k]))
                        .collect();
                    let mut l = parts.join("  ").trim_end().to_string();
                    l.push('\n');
                    l
                };
                out.push_str(&line(&self.headers));
                for r in &self.rows {
                    out.push_str(&line(r));
                }
                out
            }
        }
    }
}

fn csv_line(cells: &[String]) -> String {
    let quoted: Vec<String> = cells
        .iter()
        .map(|c| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect();
    format!("{}\n", quoted.join(","))
}

/// `n` or `n/d`, always reduced.
pub fn fmt_rat(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn rat_json(v: &BigRational) -> Value {
    serde_json::json!({
        "numerator": v.numer().to_string(),
        "denominator": v.denom().to_string(),
    })
}
