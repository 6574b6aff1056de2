//! Lexicon sentiment scoring, NRC emotion tallies and LDA topic modelling
//! over tweet corpora, with day/week/region aggregation.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! filesystem, JSON or CSV lives in the `tweetmood` companion crate.

#![no_std]

extern crate alloc;

pub mod emotion;
pub mod geo;
pub mod lda;
pub mod lexicon;
pub mod sentiment;
pub mod text;
pub mod tweet;
pub mod window;

pub use emotion::{tally_emotions, weekly_emotion_proportions, EmotionProportions, EmotionTally, Region};
pub use geo::{resolve_location, BoundingBox, Gazetteer, GeoLocation, GeoSource};
pub use lexicon::{lookup, AfinnLexicon, EmoLexicon, Emotion, Label, LabelSet, Lexicon, Match, MatchKind};
pub use sentiment::{daily_sentiment_series, score_tweet, Polarity, SentimentResult, SeriesPoint, SeriesStat};
pub use text::{porter_stem, LemmaTable, Preprocessor, StopWords, TokenizedDoc};
pub use tweet::{CountryCode, Deduplicator, GeoPoint, IngestStats, Tweet, TweetError};
pub use window::{week_index, StudyWindow, WeekSlot};
