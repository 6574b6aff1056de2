//! File formats, configuration and the batch pipeline around
//! [`tweetmood_core`].

pub mod config;
pub mod formats;
pub mod ingest;
pub mod manifest;
pub mod pipeline;

pub use config::{ConfigError, RunConfig, Settings};
pub use ingest::{parse_tweet_record, read_archive, tweet_record, IngestError};
pub use pipeline::{build_bundle, run_pipeline, Bundle, ErrorClass, RunError, Stage};
