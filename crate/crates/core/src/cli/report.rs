//! Deterministic report rendering.
//!
//! Floats are printed with 15 significant digits in scientific notation, with a
//! signed two-digit exponent. Negative zero prints as zero.

use std::fmt::Write as _;

use serde_json::to_string as json_string;

pub const REPORT_FORMAT_VERSION: &str = "1";

pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.14e}");
    let (mantissa, exponent) = s.split_once('e').expect("scientific format");
    let exp: i32 = exponent.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Float(f64),
    Int(u64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Int(n) => n.to_string(),
        }
    }

    fn render_json(&self) -> String {
        match self {
            Cell::Text(s) => json_string(s).expect("string"),
            Cell::Float(x) => json_float(*x),
            Cell::Int(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Header plus rows, comma separated, LF terminated.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    Int(u64),
    Float(f64),
    Bool(bool),
    Floats(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
    Table(Table),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_sha256: String,
    pub tolerances: Vec<(String, f64)>,
    pub body: Vec<(String, Value)>,
}

fn json_float(x: f64) -> String {
    if x.is_finite() {
        fmt_float(x)
    } else {
        json_string(&fmt_float(x)).expect("string")
    }
}

impl Report {
    pub fn new(command: &str, input_sha256: String, tolerances: Vec<(String, f64)>) -> Self {
        Self {
            command: command.into(),
            input_sha256,
            tolerances,
            body: Vec::new(),
        }
    }

    pub fn put(&mut self, key: &str, value: Value) {
        self.body.push((key.into(), value));
    }

    pub fn text(&mut self, key: &str, v: impl Into<String>) {
        self.put(key, Value::Text(v.into()));
    }

    pub fn int(&mut self, key: &str, v: usize) {
        self.put(key, Value::Int(v as u64));
    }

    pub fn float(&mut self, key: &str, v: f64) {
        self.put(key, Value::Float(v));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.body.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn first_table(&self) -> Option<&Table> {
        self.body.iter().find_map(|(_, v)| match v {
            Value::Table(t) => Some(t),
            _ => None,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "format_version: {REPORT_FORMAT_VERSION}");
        let _ = writeln!(out, "input_sha256: {}", self.input_sha256);
        for (k, v) in &self.tolerances {
            let _ = writeln!(out, "tolerance.{k}: {}", fmt_float(*v));
        }
        for (k, v) in &self.body {
            match v {
                Value::Text(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                Value::Int(n) => {
                    let _ = writeln!(out, "{k}: {n}");
                }
                Value::Float(x) => {
                    let _ = writeln!(out, "{k}: {}", fmt_float(*x));
                }
                Value::Bool(b) => {
                    let _ = writeln!(out, "{k}: {b}");
                }
                Value::Floats(xs) => {
                    let cells: Vec<String> = xs.iter().map(|x| fmt_float(*x)).collect();
                    let _ = writeln!(out, "{k}: {}", cells.join(" "));
                }
                Value::Matrix(rows) => {
                    let _ = writeln!(out, "{k}:");
                    for row in rows {
                        let cells: Vec<String> = row.iter().map(|x| fmt_float(*x)).collect();
                        let _ = writeln!(out, "  {}", cells.join(" "));
                    }
                }
                Value::Table(t) => {
                    let _ = writeln!(out, "{k}:");
                    for line in t.to_csv().lines() {
                        let _ = writeln!(out, "  {line}");
                    }
                }
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"command\": {},", json_string(&self.command).expect("string"));
        let _ = writeln!(out, "  \"format_version\": \"{REPORT_FORMAT_VERSION}\",");
        let _ = writeln!(out, "  \"input_sha256\": \"{}\",", self.input_sha256);
        let tols: Vec<String> = self
            .tolerances
            .iter()
            .map(|(k, v)| format!("    {}: {}", json_string(k).expect("string"), json_float(*v)))
            .collect();
        let _ = writeln!(out, "  \"tolerances\": {{\n{}\n  }},", tols.join(",\n"));
        let fields: Vec<String> = self
            .body
            .iter()
            .map(|(k, v)| format!("    {}: {}", json_string(k).expect("string"), render_json_value(v)))
            .collect();
        if fields.is_empty() {
            out.push_str("  \"outputs\": {}\n}\n");
        } else {
            let _ = write!(out, "  \"outputs\": {{\n{}\n  }}\n}}\n", fields.join(",\n"));
        }
        out
    }

    /// The first table when present, otherwise `key,value` pairs with matrices
    /// flattened as `key[i][j]`.
    pub fn render_csv(&self) -> String {
        if let Some(t) = self.first_table() {
            return t.to_csv();
        }
        let mut out = String::from("key,value\n");
        let _ = writeln!(out, "command,{}", self.command);
        let _ = writeln!(out, "format_version,{REPORT_FORMAT_VERSION}");
        let _ = writeln!(out, "input_sha256,{}", self.input_sha256);
        for (k, v) in &self.tolerances {
            let _ = writeln!(out, "tolerance.{k},{}", fmt_float(*v));
        }
        for (k, v) in &self.body {
            match v {
                Value::Text(s) => {
                    let _ = writeln!(out, "{k},{s}");
                }
                Value::Int(n) => {
                    let _ = writeln!(out, "{k},{n}");
                }
                Value::Float(x) => {
                    let _ = writeln!(out, "{k},{}", fmt_float(*x));
                }
                Value::Bool(b) => {
                    let _ = writeln!(out, "{k},{b}");
                }
                Value::Floats(xs) => {
                    for (i, x) in xs.iter().enumerate() {
                        let _ = writeln!(out, "{k}[{i}],{}", fmt_float(*x));
                    }
                }
                Value::Matrix(rows) => {
                    for (i, row) in rows.iter().enumerate() {
                        for (j, x) in row.iter().enumerate() {
                            let _ = writeln!(out, "{k}[{i}][{j}],{}", fmt_float(*x));
                        }
                    }
                }
                Value::Table(_) => unreachable!("tables handled above"),
            }
        }
        out
    }
}

fn render_json_value(v: &Value) -> String {
    let floats = |xs: &[f64]| -> String {
        let cells: Vec<String> = xs.iter().map(|x| json_float(*x)).collect();
        format!("[{}]", cells.join(", "))
    };
    match v {
        Value::Text(s) => json_string(s).expect("string"),
        Value::Int(n) => n.to_string(),
        Value::Float(x) => json_float(*x),
        Value::Bool(b) => b.to_string(),
        Value::Floats(xs) => floats(xs),
        Value::Matrix(rows) => {
            let rows: Vec<String> = rows.iter().map(|r| format!("      {}", floats(r))).collect();
            format!("[\n{}\n    ]", rows.join(",\n"))
        }
        Value::Table(t) => {
            let rows: Vec<String> = t
                .rows
                .iter()
                .map(|row| {
                    let cells: Vec<String> = t
                        .header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| format!("{}: {}", json_string(h).expect("string"), c.render_json()))
                        .collect();
                    format!("      {{{}}}", cells.join(", "))
                })
                .collect();
            if rows.is_empty() {
                "[]".into()
            } else {
                format!("[\n{}\n    ]", rows.join(",\n"))
            }
        }
    }
}
