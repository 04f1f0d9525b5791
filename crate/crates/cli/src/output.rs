//! Result files.
//!
//! Every subcommand writes `<command>.jsonl` (a header line, then one record
//! per line) and `<command>.csv` (the summary table). Files are rewritten from
//! scratch on each run, never appended to.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, SCHEMA_VERSION};
use crate::{CliError, Command};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub config: ExperimentConfig,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn results_path(dir: &Path, command: Command) -> PathBuf {
    dir.join(format!("{}.jsonl", command.name()))
}

pub fn summary_path(dir: &Path, command: Command) -> PathBuf {
    dir.join(format!("{}.csv", command.name()))
}

pub fn write_results<R: Serialize, S: Serialize>(
    cfg: &ExperimentConfig,
    command: Command,
    records: &[R],
    summary: &[S],
) -> Result<(), CliError> {
    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;

    let path = results_path(dir, command);
    let mut w = BufWriter::new(File::create(&path).map_err(io_err(&path))?);
    let header = Header {
        schema_version: SCHEMA_VERSION,
        command: command.name().into(),
        seed: cfg.seed,
        config: cfg.clone(),
    };
    write_line(&mut w, &header, &path)?;
    for r in records {
        write_line(&mut w, r, &path)?;
    }
    w.flush().map_err(io_err(&path))?;

    let path = summary_path(dir, command);
    let mut w = csv::Writer::from_path(&path).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    for row in summary {
        w.serialize(row).map_err(|e| CliError::Output(e.to_string()))?;
    }
    w.flush().map_err(io_err(&path))?;
    Ok(())
}

fn write_line<T: Serialize>(w: &mut impl Write, value: &T, path: &Path) -> Result<(), CliError> {
    serde_json::to_writer(&mut *w, value).map_err(|e| CliError::Output(e.to_string()))?;
    w.write_all(b"\n").map_err(io_err(path))
}

/// Reads back a results file: the header and the raw records.
pub fn read_results(path: &Path) -> Result<(Header, Vec<serde_json::Value>), CliError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let mut lines = text.lines();
    let bad = |e: serde_json::Error| CliError::Output(format!("{}: {e}", path.display()));
    let header: Header = serde_json::from_str(lines.next().unwrap_or_default()).map_err(bad)?;
    if header.schema_version != SCHEMA_VERSION {
        return Err(CliError::Output(format!(
            "{}: schema_version {} is not supported",
            path.display(),
            header.schema_version
        )));
    }
    let records = lines.map(serde_json::from_str).collect::<Result<Vec<_>, _>>().map_err(bad)?;
    Ok((header, records))
}

/// Renders summary rows as an aligned text table, using the CSV encoding of
/// each row.
pub fn table<S: Serialize>(rows: &[S]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(bytes.as_slice());
    let cells: Vec<Vec<String>> = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(str::to_owned).collect()))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Output(e.to_string()))?;
    let ncols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| cells.iter().filter_map(|row| row.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    Ok(out)
}
