//! Decimal text formats.
//!
//! * Value files: one number per line, no header.
//! * CSV: comma-separated, one header row, LF line endings.
//!
//! Numbers are written with 17 significant digits (`{:.16e}`), enough to
//! round-trip any `f64`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

/// Formats `v` with 17 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders one value per line.
pub fn render_values(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 24);
    for v in values {
        out.push_str(&format_value(*v));
        out.push('\n');
    }
    out
}

/// Renders a CSV with the given header and equal-length columns.
pub fn render_csv(header: &[&str], columns: &[&[f64]]) -> String {
    assert_eq!(header.len(), columns.len(), "one header per column");
    let rows = columns.first().map_or(0, |c| c.len());
    assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
    let mut out = header.join(",");
    out.push('\n');
    for r in 0..rows {
        for (i, col) in columns.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", format_value(col[r]));
        }
        out.push('\n');
    }
    out
}

/// Writes `contents` to `path`.
pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Which column of a multi-column file to read.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Column {
    /// The rightmost column.
    #[default]
    Last,
    /// Zero-based index.
    Index(usize),
    /// Header name.
    Name(String),
}

impl FromStr for Column {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_string()),
        })
    }
}

/// Parses a value file or a CSV.
///
/// Blank lines are skipped. A first line that does not parse as numbers is
/// taken as a header. With several comma-separated fields per row, `column`
/// picks the one to read. Non-finite values are rejected.
pub fn parse_values(text: &str, column: &Column) -> Result<Vec<f64>, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    let mut header: Option<Vec<&str>> = None;
    if let Some(&(_, first)) = lines.peek() {
        if first.split(',').any(|f| parse_number(f).is_none()) {
            header = Some(first.split(',').map(str::trim).collect());
            lines.next();
        }
    }

    let mut index: Option<usize> = match column {
        Column::Index(i) => Some(*i),
        Column::Name(name) => {
            let h = header
                .as_ref()
                .ok_or_else(|| CliError::Invalid(format!("column `{name}` requested but input has no header")))?;
            Some(h.iter().position(|c| c == name).ok_or_else(|| {
                CliError::Invalid(format!("no column `{name}` in header {}", h.join(",")))
            })?)
        }
        Column::Last => header.as_ref().map(|h| h.len() - 1),
    };

    let mut values = Vec::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let i = *index.get_or_insert(fields.len() - 1);
        let field = fields.get(i).ok_or_else(|| {
            CliError::Invalid(format!("line {line_no}: no column {i} in `{line}`"))
        })?;
        let v = parse_number(field)
            .ok_or_else(|| CliError::Invalid(format!("line {line_no}: `{}` is not a finite number", field.trim())))?;
        values.push(v);
    }
    Ok(values)
}

fn parse_number(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads and parses `path` with [`parse_values`].
pub fn read_values(path: &Path, column: &Column) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_values(&text, column)
}
