use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use qpower::report::{Report, CSV_HEADER};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::{Format, OutputArgs};

pub fn read_input(path: &Path) -> Result<(String, String), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let digest = format!("sha256:{}", hex::encode(Sha256::digest(&bytes)));
    let text = String::from_utf8(bytes)
        .map_err(|_| qpower::Error::Parse(format!("{} is not valid UTF-8", path.display())))?;
    Ok((text, digest))
}

fn sink(out: &OutputArgs) -> Result<Box<dyn Write>, CliError> {
    Ok(match &out.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_report(report: &Report, out: &OutputArgs) -> Result<(), CliError> {
    let mut w = sink(out)?;
    match out.format {
        Format::Json => writeln!(w, "{}", report.to_json())?,
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(CSV_HEADER)?;
            for record in report.csv_records() {
                csv.write_record(&record)?;
            }
            csv.flush()?;
        }
    }
    Ok(())
}

/// Rows as a CSV table, or as JSON wrapped with the report header fields.
pub fn write_rows<T: Serialize>(
    header: &Report,
    rows: &[T],
    out: &OutputArgs,
) -> Result<(), CliError> {
    let mut w = sink(out)?;
    match out.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Table<'a, T> {
                tool: &'a str,
                version: &'a str,
                command: &'a str,
                rows: &'a [T],
                #[serde(skip_serializing_if = "<[String]>::is_empty")]
                notes: &'a [String],
            }
            let table = Table {
                tool: &header.tool,
                version: &header.version,
                command: &header.command,
                rows,
                notes: &header.notes,
            };
            let text = serde_json::to_string_pretty(&table).map_err(io::Error::other)?;
            writeln!(w, "{text}")?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            for row in rows {
                csv.serialize(row)?;
            }
            csv.flush()?;
        }
    }
    Ok(())
}
