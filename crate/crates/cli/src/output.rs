//! Row output as JSON lines or CSV.

use std::io::Write;

use serde_json::{Map, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub type Record = Map<String, Value>;

/// Nested objects are flattened with dotted keys for CSV.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn write_records<W: Write>(records: &[Record], format: Format, out: W) -> Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                writeln!(out)?;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header: Option<Vec<String>> = None;
            for r in records {
                let mut cells = Vec::new();
                flatten("", &Value::Object(r.clone()), &mut cells);
                let keys: Vec<String> = cells.iter().map(|(k, _)| k.clone()).collect();
                match &header {
                    None => {
                        w.write_record(&keys)?;
                        header = Some(keys);
                    }
                    Some(h) if *h != keys => {
                        return Err(CliError::Usage("rows with different columns cannot share a CSV file".into()))
                    }
                    Some(_) => {}
                }
                w.write_record(cells.iter().map(|(_, v)| v))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Write to the file at `path`, or stdout when absent.
pub fn emit(records: &[Record], format: Format, path: Option<&std::path::Path>) -> Result<()> {
    match path {
        Some(p) => write_records(records, format, std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => write_records(records, format, std::io::stdout().lock()),
    }
}
