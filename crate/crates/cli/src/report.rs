use std::io::Write;

use anyhow::Result;
use serde::Serialize;

use crate::config::OutputFormat;

/// Writes `rows` as CSV with a header line, or as a JSON array.
pub fn write_rows<T: Serialize>(rows: &[T], format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
