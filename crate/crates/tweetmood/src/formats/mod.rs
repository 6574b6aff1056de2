//! Readers and writers for the plain-text resource and report files.

mod events;
mod lexicons;
mod places;
mod reports;
mod textrules;

pub use events::{annotate_series, parse_events, Annotated, Event};
pub use lexicons::{parse_afinn, parse_emolex, write_afinn, write_emolex};
pub use places::{parse_country_boxes, parse_place_names, write_country_boxes, write_place_names};
pub use reports::{
    emotions_csv, fmt6, model_text, sentiment_csv, topic_weights_csv, topics_report_csv, tweets_index_csv, IndexRow,
    WeekTopics,
};
pub use textrules::{parse_lemmas, parse_stopwords};

use std::fmt;
use std::path::{Path, PathBuf};

/// Problem in a text resource, with the 1-based line when one applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line: Some(line), message: message.into() }
    }

    pub fn whole(message: impl Into<String>) -> Self {
        Self { line: None, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
}

/// Read a whole file and hand it to `parse`, attaching the path to errors.
pub fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.into(), source })?;
    parse(&text).map_err(|source| LoadError::Parse { path: path.into(), source })
}

/// Tab-separated records with line numbers. Blank lines and `#` comments
/// are skipped, as is a first record equal to `header`.
pub(crate) fn tsv_records<'a>(text: &'a str, header: &'a [&'a str]) -> impl Iterator<Item = (usize, Vec<&'a str>)> + 'a {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut first = true;
    text.lines().enumerate().filter_map(move |(i, raw)| {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            return None;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let is_header = first && !header.is_empty() && fields == header;
        first = false;
        (!is_header).then_some((i + 1, fields))
    })
}

pub(crate) fn expect_fields(line: usize, fields: &[&str], n: usize) -> Result<(), ParseError> {
    if fields.len() != n {
        return Err(ParseError::at(line, format!("expected {n} tab-separated fields, found {}", fields.len())));
    }
    Ok(())
}
