//! Row-oriented report emission: CSV, JSON, and plain-text tables.
//!
//! Every command builds a [`Report`] with a fixed column list and renders it
//! through one of the emitters, so formatting rules live in one place: CSV
//! floats carry 17 significant digits, JSON floats use the shortest
//! round-trip form, and text tables use the shortest form as well.

use serde_json::Value;

/// One typed cell of a report row.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i64),
    UInt(u64),
    Real(f64),
    Bool(bool),
    Text(String),
    /// Absent value: empty in CSV, `null` in JSON, `-` in tables.
    Missing,
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::UInt(v) => v.to_string(),
            Field::Real(x) => format!("{x:.16e}"),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Int(v) => Value::from(*v),
            Field::UInt(v) => Value::from(*v),
            Field::Real(x) => Value::from(*x),
            Field::Bool(b) => Value::from(*b),
            Field::Text(s) => Value::from(s.as_str()),
            Field::Missing => Value::Null,
        }
    }

    fn text(&self) -> String {
        match self {
            Field::Real(x) => format!("{x}"),
            Field::Text(s) if s.is_empty() => "-".to_string(),
            Field::Missing => "-".to_string(),
            other => other.csv(),
        }
    }
}

/// A fixed-schema record set ready for emission.
pub struct Report {
    columns: &'static [&'static str],
    rows: Vec<Vec<Field>>,
}

impl Report {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// CSV with a mandatory header row; cells are quoted only when needed.
    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.columns).expect("in-memory csv");
        for row in &self.rows {
            w.write_record(row.iter().map(Field::csv))
                .expect("in-memory csv");
        }
        let bytes = w.into_inner().expect("in-memory csv flush");
        String::from_utf8(bytes).expect("csv output is utf-8")
    }

    fn object(&self, row: &[Field]) -> Value {
        let mut map = serde_json::Map::new();
        for (name, field) in self.columns.iter().zip(row) {
            map.insert((*name).to_string(), field.json());
        }
        Value::Object(map)
    }

    /// The first row as a single JSON object, newline-terminated.
    pub fn json_single(&self) -> String {
        let mut s = serde_json::to_string(&self.object(&self.rows[0])).expect("json");
        s.push('\n');
        s
    }

    /// All rows as a JSON array of objects, newline-terminated.
    pub fn json_array(&self) -> String {
        let rows: Vec<Value> = self.rows.iter().map(|r| self.object(r)).collect();
        let mut s = serde_json::to_string(&Value::Array(rows)).expect("json");
        s.push('\n');
        s
    }

    /// `name  value` listing for single-record commands.
    pub fn vertical(&self) -> String {
        let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (name, field) in self.columns.iter().zip(&self.rows[0]) {
            out.push_str(&format!("{name:<width$}  {}\n", field.text()));
        }
        out
    }

    /// Space-aligned text table with one header line.
    pub fn aligned(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(Field::text).collect())
            .collect();
        for row in &cells {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let emit_line = |out: &mut String, cells: &[String]| {
            let mut line = String::new();
            for (i, (cell, &w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(&format!("{cell:<w$}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        };
        let header: Vec<String> = self.columns.iter().map(|c| (*c).to_string()).collect();
        emit_line(&mut out, &header);
        for row in &cells {
            emit_line(&mut out, row);
        }
        out
    }
}
