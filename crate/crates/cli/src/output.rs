use anyhow::Result;
use serde_json::Value;

use crate::config::Format;

/// A rendered result. `table` is used for CSV when present; otherwise the
/// top-level scalar fields of `json` become `key,value` rows.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub table: Option<Table>,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Table {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

fn flat(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some(String::new()),
        _ => None,
    }
}

fn csv(table: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header)?;
    for r in &table.rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Csv => match &self.table {
                Some(t) => csv(t)?,
                None => {
                    let mut t = Table::new(["key", "value"]);
                    if let Value::Object(map) = &self.json {
                        for (k, v) in map {
                            if let Some(x) = flat(v) {
                                t.push(vec![k.clone(), x]);
                            }
                        }
                    }
                    csv(&t)?
                }
            },
        })
    }
}
