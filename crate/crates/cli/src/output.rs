use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A row of command output with a fixed CSV column order.
pub trait Record: Serialize {
    fn header() -> &'static [&'static str];
    fn row(&self) -> Vec<String>;
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    schema_version: &'static str,
    command: &'static str,
    config: &'a Value,
    meta: &'a Value,
    records: &'a [R],
}

pub struct Report<R: Record> {
    pub command: &'static str,
    pub config: Value,
    pub meta: Value,
    pub records: Vec<R>,
}

impl<R: Record> Report<R> {
    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<(), CliError> {
        match format {
            Format::Json => {
                let env = Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: self.command,
                    config: &self.config,
                    meta: &self.meta,
                    records: &self.records,
                };
                serde_json::to_writer_pretty(&mut *out, &env).map_err(CliError::internal)?;
                writeln!(out).map_err(CliError::internal)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(R::header()).map_err(CliError::internal)?;
                for r in &self.records {
                    w.write_record(r.row()).map_err(CliError::internal)?;
                }
                w.flush().map_err(CliError::internal)
            }
        }
    }
}

/// Fixed-format float for CSV cells and messages.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}
