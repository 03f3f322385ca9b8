//! Reading and writing series files.
//!
//! `plain`: one number per line; `#` starts a comment; blank lines are skipped.
//! `csv`: one series per row, comma or tab separated. A non-numeric first
//! field is taken as the series label (UCR-style archives).

use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeriesFormat {
    /// `.csv`/`.tsv` extension or any delimiter in the content means csv.
    #[default]
    Auto,
    Plain,
    Csv,
}

impl FromStr for SeriesFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "plain" => Ok(Self::Plain),
            "csv" => Ok(Self::Csv),
            other => Err(Error::InvalidParameter(format!(
                "unknown series format {other:?}"
            ))),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head).trim()
}

fn parse_value(path: &Path, line: usize, column: usize, token: &str) -> Result<f64> {
    let parse_err = || Error::Parse {
        path: path.to_path_buf(),
        line,
        column,
        token: token.to_string(),
    };
    let v: f64 = token.trim().parse().map_err(|_| parse_err())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(parse_err())
    }
}

fn label_from(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

pub fn load_series(path: impl AsRef<Path>, format: SeriesFormat) -> Result<Vec<TimeSeries>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let format = match format {
        SeriesFormat::Auto => {
            let ext = path
                .extension()
                .map(|e| e.to_ascii_lowercase())
                .unwrap_or_default();
            let delimited = || {
                text.lines()
                    .map(strip_comment)
                    .any(|l| l.contains(',') || l.contains('\t'))
            };
            if ext == "csv" || ext == "tsv" || delimited() {
                SeriesFormat::Csv
            } else {
                SeriesFormat::Plain
            }
        }
        f => f,
    };
    match format {
        SeriesFormat::Plain => parse_plain(path, &text).map(|s| vec![s]),
        _ => parse_csv(path, &text),
    }
}

fn parse_plain(path: &Path, text: &str) -> Result<TimeSeries> {
    let mut values = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        values.push(parse_value(path, k + 1, 1, line)?);
    }
    TimeSeries::with_id(label_from(path), values)
}

fn parse_csv(path: &Path, text: &str) -> Result<Vec<TimeSeries>> {
    let delimiter = if !text.contains(',') && text.contains('\t') {
        b'\t'
    } else {
        b','
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let stem = label_from(path);
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let fields: Vec<&str> = record.iter().filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        let (label, start) = match fields[0].parse::<f64>() {
            Ok(_) => (format!("{stem}:{}", out.len() + 1), 0),
            Err(_) => (fields[0].to_string(), 1),
        };
        let values = fields[start..]
            .iter()
            .enumerate()
            .map(|(c, tok)| parse_value(path, line, start + c + 1, tok))
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "{}:{line}: series {label:?} has no samples",
                path.display()
            )));
        }
        out.push(TimeSeries::with_id(label, values)?);
    }
    if out.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(out)
}

/// Writes a series in the plain format, one shortest round-trip value per line.
pub fn write_plain(path: impl AsRef<Path>, series: &TimeSeries) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::with_capacity(series.len() * 20);
    for v in series.values() {
        writeln!(buf, "{v}").expect("writing to a Vec cannot fail");
    }
    fs::write(path, buf).map_err(io_err(path))
}
