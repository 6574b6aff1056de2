//! Tweet text normalization: URL/mention stripping, tokenization, stopword
//! removal, rule-table lemmatization and Porter stemming.

mod porter;
mod prep;

pub use porter::porter_stem;
pub use prep::{LemmaError, LemmaTable, Preprocessor, StopWords, TokenizedDoc};
