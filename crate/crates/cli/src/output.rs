//! Data sets, CSV/JSON emission and run manifests.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Num(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(v) if v.is_finite() => s.serialize_f64(*v),
            Cell::Num(_) => s.serialize_none(),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

/// One table plus the metadata that goes into its manifest.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// x of rows written as NaN because the point is singular.
    pub flagged: Vec<f64>,
    pub meta: Value,
}

impl Dataset {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Dataset { name: name.into(), columns: columns.to_vec(), rows: Vec::new(), flagged: Vec::new(), meta: json!({}) }
    }

    /// Appends `(x, values)` rows; `None` becomes a flagged NaN row.
    pub fn push_numeric(&mut self, x: f64, values: Option<&[f64]>) {
        let width = self.columns.len() - 1;
        let mut row = vec![Cell::Num(x)];
        match values {
            Some(v) => row.extend(v.iter().map(|&c| Cell::Num(c))),
            None => {
                row.extend(std::iter::repeat_n(Cell::Num(f64::NAN), width));
                self.flagged.push(x);
            }
        }
        self.rows.push(row);
    }

    pub fn with_meta(mut self, meta: Value) -> Self {
        self.meta = meta;
        self
    }

    pub fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "columns": self.columns, "rows": self.rows })
    }
}

/// Everything a subcommand produced.
#[derive(Debug, Default)]
pub struct Output {
    pub datasets: Vec<Dataset>,
    /// Named JSON reports (residual certification and the like).
    pub reports: Vec<(String, Value)>,
    /// Per-item failures that did not abort the run.
    pub failures: Vec<String>,
    /// Candidates whose residual exceeded tolerance.
    pub uncertified: Vec<String>,
}

pub fn manifest(config: &RunConfig, dataset: &Dataset, file: &str) -> Value {
    let x_of = |row: &Vec<Cell>| match row.first() {
        Some(Cell::Num(x)) => Some(*x),
        _ => None,
    };
    let sampled = match (dataset.columns.first(), dataset.rows.first(), dataset.rows.last()) {
        (Some(&"x"), Some(a), Some(b)) => json!({
            "x_min": x_of(a),
            "x_max": x_of(b),
            "points": dataset.rows.len(),
        }),
        _ => Value::Null,
    };
    json!({
        "sampled_grid": sampled,
        "dataset": dataset.name,
        "file": file,
        "columns": dataset.columns,
        "rows": dataset.rows.len(),
        "flagged_rows": dataset.flagged,
        "config": config,
        "library": { "name": "complex-susy", "version": complex_susy::VERSION },
        "cli": { "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") },
        "meta": dataset.meta,
    })
}

/// Where output goes: a directory of files or standard output.
#[derive(Debug, Clone)]
pub enum Sink {
    Stdout,
    Dir(PathBuf),
}

impl Sink {
    pub fn from_option(out: Option<PathBuf>) -> Self {
        out.map_or(Sink::Stdout, Sink::Dir)
    }

    /// Writes data files, one manifest per data file, and reports. Returns
    /// the paths written.
    pub fn emit(&self, config: &RunConfig, output: &Output) -> CliResult<Vec<PathBuf>> {
        match self {
            Sink::Stdout => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                write_stream(&mut lock, config.format, output)?;
                Ok(Vec::new())
            }
            Sink::Dir(dir) => write_dir(dir, config, output),
        }
    }
}

fn write_stream<W: Write>(out: &mut W, format: OutputFormat, output: &Output) -> CliResult<()> {
    match format {
        OutputFormat::Csv => {
            for (i, d) in output.datasets.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "# {}", d.name)?;
                d.write_csv(&mut *out)?;
            }
            for (name, report) in &output.reports {
                eprintln!("{name}: {}", serde_json::to_string(report)?);
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "datasets": output.datasets.iter().map(Dataset::to_json).collect::<Vec<_>>(),
                "reports": output.reports.iter().map(|(n, r)| json!({ "name": n, "report": r })).collect::<Vec<_>>(),
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_json_file(path: &Path, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn write_dir(dir: &Path, config: &RunConfig, output: &Output) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for d in &output.datasets {
        let file = match config.format {
            OutputFormat::Csv => format!("{}.csv", d.name),
            OutputFormat::Json => format!("{}.json", d.name),
        };
        let path = dir.join(&file);
        match config.format {
            OutputFormat::Csv => d.write_csv(fs::File::create(&path)?)?,
            OutputFormat::Json => write_json_file(&path, &d.to_json())?,
        }
        written.push(path);
        let mpath = dir.join(format!("{}.manifest.json", d.name));
        write_json_file(&mpath, &manifest(config, d, &file))?;
        written.push(mpath);
    }
    for (name, report) in &output.reports {
        let path = dir.join(format!("{name}.report.json"));
        write_json_file(&path, report)?;
        written.push(path);
    }
    Ok(written)
}
