use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// A flat record with a fixed column order.
pub trait CsvRecord: Sized {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
    fn from_fields(fields: &[&str]) -> Result<Self>;
}

/// Float rendered at 12 significant digits; `inf`, `-inf` and `nan` for
/// non-finite values. The text parses back to the rounded value exactly.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("valid float text");
    format!("{rounded:?}")
}

pub(crate) fn parse_f64(s: &str) -> Result<f64> {
    s.parse().map_err(|e| Error::Parse {
        line: 0,
        message: format!("bad float `{s}`: {e}"),
    })
}

pub(crate) fn parse_int<T: std::str::FromStr>(s: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| Error::Parse {
        line: 0,
        message: format!("bad integer `{s}`: {e}"),
    })
}

pub(crate) fn parse_bool(s: &str) -> Result<bool> {
    s.parse().map_err(|e| Error::Parse {
        line: 0,
        message: format!("bad bool `{s}`: {e}"),
    })
}

pub(crate) fn expect_len(fields: &[&str], n: usize) -> Result<()> {
    if fields.len() == n {
        Ok(())
    } else {
        Err(Error::Parse {
            line: 0,
            message: format!("expected {n} fields, found {}", fields.len()),
        })
    }
}

/// Header line plus one line per record, LF-terminated.
pub fn emit_csv<R: CsvRecord>(records: &[R], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = R::header().join(",");
    out.push('\n');
    for r in records {
        out.push_str(&r.fields().join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn read_csv<R: CsvRecord>(path: impl AsRef<Path>) -> Result<Vec<R>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != R::header().join(",") {
        return Err(Error::Parse {
            line: 1,
            message: format!("unexpected header `{header}`"),
        });
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            R::from_fields(&fields).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse {
                    line: i + 2,
                    message,
                },
                other => other,
            })
        })
        .collect()
}
