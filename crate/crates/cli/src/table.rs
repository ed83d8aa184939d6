use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::config::OutputFormat;

/// Significant digits written for floating-point cells.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Num(f64),
    /// Free text, e.g. `sum` in marginal rows.
    Text(&'static str),
}

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// Decimal notation for moderate magnitudes, exponent notation below `1e-5` or from `1e15`.
pub fn format_num(x: f64) -> String {
    let r = round_sig(x);
    let mag = r.abs();
    if r != 0.0 && !(1e-5..1e15).contains(&mag) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Num(x) => format_num(*x),
            Cell::Text(s) => (*s).to_string(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::Num(x) => Number::from_f64(round_sig(*x)).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(*s),
        }
    }
}

/// Header plus rows, written as CSV or a JSON array of objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: OutputFormat, out: W) -> anyhow::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
        }
    }

    fn write_csv<W: Write>(&self, out: W) -> anyhow::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_json<W: Write>(&self, mut out: W) -> anyhow::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| ((*k).to_string(), v.json_value()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut out, &rows)?;
        out.write_all(b"\n")?;
        Ok(())
    }
}
