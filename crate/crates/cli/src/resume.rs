//! Restarting an interrupted scan from its own output file.

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::path::Path;

use anyhow::{bail, Context, Result};
use binsum_core::InstanceRecord;

use crate::output::{CsvInstanceRow, Format, CSV_INSTANCE_HEADER};

/// What an existing output file already covers.
#[derive(Debug, Default)]
pub struct ResumeState {
    pub done: HashSet<u64>,
    /// The file already holds a header or records.
    pub has_content: bool,
    /// Some existing record is an integral value.
    pub integral_found: bool,
}

/// Reads `path` if it exists, drops a torn trailing line, and checks every
/// complete line against the record schema for `r`.
pub fn prepare(path: &Path, format: Format, r: u64) -> Result<ResumeState> {
    let Ok(bytes) = std::fs::read(path) else {
        return Ok(ResumeState::default());
    };
    if bytes.is_empty() {
        return Ok(ResumeState::default());
    }
    if format == Format::Human {
        bail!("{} exists; resuming is only supported for jsonl and csv output", path.display());
    }
    let complete = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    if complete < bytes.len() {
        OpenOptions::new()
            .write(true)
            .open(path)?
            .set_len(complete as u64)
            .with_context(|| format!("truncating torn line in {}", path.display()))?;
    }
    let text = std::str::from_utf8(&bytes[..complete]).context("output file is not UTF-8")?;

    let mut state = ResumeState { has_content: complete > 0, ..Default::default() };
    let mut lines = text.lines().enumerate();
    if format == Format::Csv {
        match lines.next() {
            Some((_, header)) if header == CSV_INSTANCE_HEADER => {}
            Some(_) => bail!("{}: unexpected CSV header", path.display()),
            None => return Ok(state),
        }
    }
    for (i, line) in lines {
        let (rec_r, n, classification) = match format {
            Format::Jsonl => {
                let rec: InstanceRecord = serde_json::from_str(line)
                    .with_context(|| format!("{}:{}: not a scan record", path.display(), i + 1))?;
                (rec.r, rec.n, rec.classification)
            }
            _ => {
                let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(line.as_bytes());
                let row: CsvInstanceRow = reader
                    .deserialize()
                    .next()
                    .context("empty CSV row")?
                    .with_context(|| format!("{}:{}: not a scan row", path.display(), i + 1))?;
                (row.r, row.n, row.classification)
            }
        };
        if rec_r != r {
            bail!("{}:{}: record has r = {rec_r}, scan has r = {r}", path.display(), i + 1);
        }
        state.integral_found |= classification == "oracle_integral";
        state.done.insert(n);
    }
    Ok(state)
}
