//! Append-only cache of search records and decompositions.
//!
//! Every line is re-validated when the file is opened, and entries are checked
//! again before reuse.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sumprod_core::regularity::DecompositionReport;
use sumprod_core::sumprod::SearchRecord;
use sumprod_core::GridFunction64;

use crate::error::{CliError, CliResult};

const SEARCH: &str = "search";
const REGULARITY: &str = "regularity";

#[derive(Serialize, Deserialize)]
struct Line {
    command: String,
    key: String,
    payload: serde_json::Value,
}

pub struct ResultCache {
    path: PathBuf,
    search: HashMap<String, SearchRecord>,
    decompositions: HashMap<String, DecompositionReport>,
}

impl ResultCache {
    /// Loads `path`, creating an empty cache if it does not exist yet.
    pub fn open(path: &Path) -> CliResult<Self> {
        let mut cache = Self { path: path.to_path_buf(), search: HashMap::new(), decompositions: HashMap::new() };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(CliError::io(path, e)),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| CliError::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |msg: String| CliError::Validation(format!("{}:{}: {msg}", path.display(), i + 1));
            let entry: Line = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
            match entry.command.as_str() {
                SEARCH => {
                    let rec: SearchRecord = serde_json::from_value(entry.payload).map_err(|e| bad(e.to_string()))?;
                    cache.search.insert(entry.key, rec);
                }
                REGULARITY => {
                    let report: DecompositionReport =
                        serde_json::from_value(entry.payload).map_err(|e| bad(e.to_string()))?;
                    report.factor.validate().map_err(|e| bad(e.to_string()))?;
                    report.replay_chain().map_err(|e| bad(e.to_string()))?;
                    cache.decompositions.insert(entry.key, report);
                }
                other => return Err(bad(format!("unknown command {other:?}"))),
            }
        }
        Ok(cache)
    }

    pub fn len(&self) -> usize {
        self.search.len() + self.decompositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn search(&self, key: &str) -> CliResult<Option<SearchRecord>> {
        match self.search.get(key) {
            Some(rec) => {
                rec.validate()?;
                Ok(Some(rec.clone()))
            }
            None => Ok(None),
        }
    }

    /// A cached decomposition of `f`, verified against `f` before it is returned.
    pub fn decomposition(&self, key: &str, f: &GridFunction64) -> CliResult<Option<DecompositionReport>> {
        match self.decompositions.get(key) {
            Some(report) => {
                report.verify_against(f)?;
                Ok(Some(report.clone()))
            }
            None => Ok(None),
        }
    }

    pub fn put_search(&mut self, key: &str, rec: &SearchRecord) -> CliResult<()> {
        self.append(SEARCH, key, serde_json::to_value(rec))?;
        self.search.insert(key.to_string(), rec.clone());
        Ok(())
    }

    pub fn put_decomposition(&mut self, key: &str, report: &DecompositionReport) -> CliResult<()> {
        self.append(REGULARITY, key, serde_json::to_value(report))?;
        self.decompositions.insert(key.to_string(), report.clone());
        Ok(())
    }

    fn append(&self, command: &str, key: &str, payload: serde_json::Result<serde_json::Value>) -> CliResult<()> {
        let payload = payload.map_err(|e| CliError::Validation(e.to_string()))?;
        let line = Line { command: command.to_string(), key: key.to_string(), payload };
        let text = serde_json::to_string(&line).map_err(|e| CliError::Validation(e.to_string()))?;
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| CliError::io(&self.path, e))?;
        writeln!(file, "{text}").map_err(|e| CliError::io(&self.path, e))
    }
}
