//! Output formats. JSON reports carry a `command` tag; CSV is only offered
//! for tabular results.

use serde::Serialize;

use crate::{CliError, Format};

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// A report body plus its alternative renderings. Renderings are produced
/// lazily so that large point sets are only formatted once.
pub struct Report<'a, T: Serialize> {
    pub command: &'a str,
    pub body: &'a T,
    pub text: Box<dyn FnOnce() -> String + 'a>,
    pub csv: Option<Box<dyn FnOnce() -> Csv + 'a>>,
}

/// Rows for the CSV writer; `header` is omitted for bare matrices.
pub struct Csv {
    pub header: Option<Vec<String>>,
    pub rows: Vec<Vec<String>>,
}

impl<T: Serialize> Report<'_, T> {
    pub fn render(self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let tagged = Tagged {
                    command: self.command,
                    body: self.body,
                };
                let mut s = serde_json::to_string(&tagged)
                    .map_err(|e| CliError::Internal(format!("serializing report: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok((self.text)()),
            Format::Csv => match self.csv {
                Some(rows) => write_csv(rows()),
                None => Err(CliError::Input(format!(
                    "csv output is not available for '{}'; use json or text",
                    self.command
                ))),
            },
        }
    }
}

fn write_csv(table: Csv) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let wrap = |e: csv::Error| CliError::Internal(format!("writing csv: {e}"));
    if let Some(h) = &table.header {
        w.write_record(h).map_err(wrap)?;
    }
    for r in &table.rows {
        w.write_record(r).map_err(wrap)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(format!("writing csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn coordinate_header(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("x{i}")).collect()
}

pub fn tuple<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
