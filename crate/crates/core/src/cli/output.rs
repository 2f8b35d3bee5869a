use std::collections::BTreeMap;
use std::io::Write;

use serde_json::{Number, Value};

/// One command's output. Maps are `BTreeMap`, so keys serialize sorted.
#[derive(Debug, Clone, Default)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub diagnostics: Vec<String>,
    /// Rows for `--format csv`; when absent the scalar and vector results are
    /// flattened into `key,value` rows.
    pub table: Option<CsvTable>,
}

#[derive(Debug, Clone)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

/// Seventeen significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// A real as a JSON number with 17 significant digits; non-finite values become strings.
pub fn real(x: f64) -> Value {
    // drop the sign of negative zero
    let x = if x == 0.0 { 0.0 } else { x };
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    format_real(x)
        .parse::<Number>()
        .map(Value::Number)
        .unwrap_or_else(|_| Value::String(format_real(x)))
}

pub fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| real(x)).collect())
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_string(), ..Self::default() }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn input_real(&mut self, key: &str, x: f64) -> &mut Self {
        self.inputs.insert(key.to_string(), real(x));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn result_real(&mut self, key: &str, x: f64) -> &mut Self {
        self.results.insert(key.to_string(), real(x));
        self
    }

    pub fn diagnostic(&mut self, message: impl Into<String>) -> &mut Self {
        self.diagnostics.push(message.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        map.insert("command".into(), Value::String(self.command.clone()));
        map.insert("inputs".into(), Value::Object(self.inputs.clone().into_iter().collect()));
        map.insert("results".into(), Value::Object(self.results.clone().into_iter().collect()));
        map.insert(
            "diagnostics".into(),
            Value::Array(self.diagnostics.iter().cloned().map(Value::String).collect()),
        );
        Value::Object(map)
    }

    pub fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
        out.write_all(b"\n")
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> csv::Result<()> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        match &self.table {
            Some(table) => {
                writer.write_record(&table.header)?;
                for row in &table.rows {
                    writer.write_record(row.iter().map(cell))?;
                }
            }
            None => {
                writer.write_record(["key", "value"])?;
                for (key, value) in &self.results {
                    match value {
                        Value::Array(items) => {
                            for (i, item) in items.iter().enumerate() {
                                writer.write_record([format!("{key}[{i}]"), cell(item)])?;
                            }
                        }
                        other => writer.write_record([key.clone(), cell(other)])?,
                    }
                }
            }
        }
        writer.flush()?;
        Ok(())
    }
}

fn cell(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
