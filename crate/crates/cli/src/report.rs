//! Report assembly and rendering.
//!
//! Exact values are written as `num/den` strings and never as floats; floats
//! appear only as `{"approx": "<12 significant digits>"}` in JSON and as
//! `approx:<digits>` in CSV.

use serde::Serialize;
use serde_json::{json, Value};
use sumset_core::Rational;

/// `x` with 12 significant digits in scientific notation.
pub fn approx_digits(x: f64) -> String {
    // -0.0 and 0.0 render the same
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Exact(String),
    Approx(f64),
    Int(i128),
    Text(String),
    Empty,
}

impl Cell {
    pub fn rational(r: &Rational) -> Self {
        Cell::Exact(r.to_string())
    }

    pub fn int(n: impl Into<i128>) -> Self {
        Cell::Int(n.into())
    }

    /// Counts too large for `i128` fall back to text.
    pub fn count(n: u128) -> Self {
        i128::try_from(n).map_or_else(|_| Cell::Text(n.to_string()), Cell::Int)
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Exact(s) | Cell::Text(s) => Value::String(s.clone()),
            Cell::Approx(x) => json!({ "approx": approx_digits(*x) }),
            Cell::Int(n) => json!(n),
            Cell::Empty => Value::Null,
        }
    }

    pub fn to_csv(&self) -> String {
        match self {
            Cell::Exact(s) | Cell::Text(s) => s.clone(),
            Cell::Approx(x) => format!("approx:{}", approx_digits(*x)),
            Cell::Int(n) => n.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: Cell,
    pub rhs: Cell,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, lhs: Cell, rhs: Cell) -> Self {
        Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, lhs, rhs }
    }

    pub fn info(name: impl Into<String>, lhs: Cell, rhs: Cell) -> Self {
        Check { name: name.into(), status: Status::Info, lhs, rhs }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Rows as JSON objects keyed by column.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().map(Cell::to_json)).collect()))
                .collect(),
        )
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::to_csv))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// What a subcommand produces. `table`, when present, is also the CSV form.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub results: Value,
    pub checks: Vec<Check>,
    pub table: Option<Table>,
}

impl Outcome {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn render_json(&self, config: &Value) -> String {
        let results = match (&self.results, &self.table) {
            (Value::Null, Some(t)) => json!({ "rows": t.to_json() }),
            (Value::Object(m), Some(t)) if !m.contains_key("rows") => {
                let mut m = m.clone();
                m.insert("rows".into(), t.to_json());
                Value::Object(m)
            }
            (r, _) => r.clone(),
        };
        let doc = json!({ "config": config, "results": results, "checks": self.checks });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}
