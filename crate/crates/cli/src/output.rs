use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::error::{CliError, CliResult};

/// A row type with a fixed column order, so empty tables still get a header.
pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
}

pub enum Sink {
    Json(Box<dyn Write>),
    Csv(csv::Writer<Box<dyn Write>>),
}

impl Sink {
    pub fn open<R: Row>(format: Format, out: Option<&Path>) -> CliResult<Self> {
        let writer: Box<dyn Write> = match out {
            Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| CliError::io(path, e))?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(match format {
            Format::JsonLines => Sink::Json(writer),
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
                w.write_record(R::HEADER)?;
                Sink::Csv(w)
            }
        })
    }

    pub fn row<R: Row>(&mut self, row: &R) -> CliResult<()> {
        match self {
            Sink::Json(w) => {
                let line = serde_json::to_string(row).map_err(|e| CliError::Validation(e.to_string()))?;
                writeln!(w, "{line}").map_err(|e| CliError::io("<output>", e))
            }
            Sink::Csv(w) => Ok(w.serialize(row)?),
        }
    }

    pub fn finish(self) -> CliResult<()> {
        match self {
            Sink::Json(mut w) => w.flush().map_err(|e| CliError::io("<output>", e)),
            Sink::Csv(mut w) => w.flush().map_err(|e| CliError::io("<output>", e)),
        }
    }
}
