//! Deterministic rendering of command results as an aligned table or CSV.

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I, S>(header: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Table(Table),
    /// Free text, only renderable in table mode.
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    /// Hex sha256 of the input file, when the command read one.
    pub input_digest: Option<String>,
    pub payload: Payload,
    /// Trailing lines shown in table mode only.
    pub notes: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("this command has no CSV form")]
    NotTabular,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: impl Into<String>, payload: Payload) -> Self {
        Self {
            command: command.into(),
            input_digest: None,
            payload,
            notes: Vec::new(),
        }
    }

    pub fn with_input(mut self, bytes: &[u8]) -> Self {
        self.input_digest = Some(sha256_hex(bytes));
        self
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    pub fn render(&self, format: Format) -> Result<String, ReportError> {
        match format {
            Format::Table => Ok(emit_table(self)),
            Format::Csv => Ok(String::from_utf8(emit_csv(self)?).expect("csv of strings is UTF-8")),
        }
    }
}

/// Header row plus data rows, RFC 4180 quoting, `\n` line endings.
pub fn emit_csv(report: &Report) -> Result<Vec<u8>, ReportError> {
    let Payload::Table(table) = &report.payload else {
        return Err(ReportError::NotTabular);
    };
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(&table.header)?;
    for row in &table.rows {
        writer.write_record(row)?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(writer.into_inner().map_err(|e| csv::Error::from(e.into_error()))?)
}

pub fn emit_table(report: &Report) -> String {
    let mut out = format!("# command: {}\n", report.command);
    if let Some(d) = &report.input_digest {
        out.push_str(&format!("# input sha256: {d}\n"));
    }
    match &report.payload {
        Payload::Text(text) => {
            out.push_str(text);
            if !text.ends_with('\n') {
                out.push('\n');
            }
        }
        Payload::Table(table) => {
            let width = |i: usize| {
                std::iter::once(&table.header[i])
                    .chain(table.rows.iter().map(|r| &r[i]))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            };
            let widths: Vec<usize> = (0..table.header.len()).map(width).collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(&table.header));
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&line(&rule));
            for row in &table.rows {
                out.push_str(&line(row));
            }
            if table.rows.is_empty() {
                out.push_str("(no rows)\n");
            }
        }
    }
    for n in &report.notes {
        out.push_str(n);
        out.push('\n');
    }
    out
}
