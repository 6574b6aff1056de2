//! Tweet records and corpus-level deduplication.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use chrono::{DateTime, Utc};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TweetError {
    #[error("tweet id is empty")]
    EmptyId,
    #[error("latitude {0} outside -90..90")]
    Latitude(f64),
    #[error("longitude {0} outside -180..180")]
    Longitude(f64),
    #[error("invalid ISO 3166-1 alpha-2 code {0:?}")]
    CountryCode(String),
}

/// ISO 3166-1 alpha-2 country code, stored uppercase.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CountryCode([u8; 2]);

impl CountryCode {
    pub fn as_str(&self) -> &str {
        // both bytes are ASCII uppercase by construction
        core::str::from_utf8(&self.0).unwrap_or("??")
    }
}

impl FromStr for CountryCode {
    type Err = TweetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.as_bytes() {
            [a, b] if a.is_ascii_alphabetic() && b.is_ascii_alphabetic() => {
                Ok(CountryCode([a.to_ascii_uppercase(), b.to_ascii_uppercase()]))
            }
            _ => Err(TweetError::CountryCode(t.into())),
        }
    }
}

impl fmt::Display for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CountryCode({})", self.as_str())
    }
}

/// WGS84 point in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    lat: f64,
    lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Result<Self, TweetError> {
        if !(-90.0..=90.0).contains(&lat) {
            return Err(TweetError::Latitude(lat));
        }
        if !(-180.0..=180.0).contains(&lon) {
            return Err(TweetError::Longitude(lon));
        }
        Ok(Self { lat, lon })
    }

    pub fn lat(&self) -> f64 {
        self.lat
    }

    pub fn lon(&self) -> f64 {
        self.lon
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tweet {
    pub id: String,
    pub created_at: DateTime<Utc>,
    pub text: String,
    pub profile_location: Option<String>,
    pub gps: Option<GeoPoint>,
    pub place_country: Option<CountryCode>,
    pub lang: Option<String>,
}

impl Tweet {
    /// Minimal tweet with no location or language metadata.
    pub fn new(
        id: impl Into<String>,
        created_at: DateTime<Utc>,
        text: impl Into<String>,
    ) -> Result<Self, TweetError> {
        let id = id.into();
        if id.is_empty() {
            return Err(TweetError::EmptyId);
        }
        Ok(Self {
            id,
            created_at,
            text: text.into(),
            profile_location: None,
            gps: None,
            place_country: None,
            lang: None,
        })
    }

    /// Records without a language tag count as English.
    pub fn is_english(&self) -> bool {
        match &self.lang {
            None => true,
            Some(tag) => {
                let primary = tag.split(['-', '_']).next().unwrap_or("");
                primary.eq_ignore_ascii_case("en")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub ingested: u64,
    pub kept: u64,
    pub duplicates: u64,
    pub non_english: u64,
}

impl IngestStats {
    pub fn is_consistent(&self) -> bool {
        self.ingested == self.kept + self.duplicates + self.non_english
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admission {
    Kept,
    Duplicate,
    NonEnglish,
}

/// Keeps the first occurrence of every tweet id, dropping non-English
/// records. Feeding partitions in archive order gives the same corpus no
/// matter where the partition boundaries fall.
#[derive(Debug, Default)]
pub struct Deduplicator {
    seen: BTreeSet<String>,
    tweets: Vec<Tweet>,
    stats: IngestStats,
}

impl Deduplicator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, tweet: Tweet) -> Admission {
        self.stats.ingested += 1;
        if !tweet.is_english() {
            self.stats.non_english += 1;
            return Admission::NonEnglish;
        }
        if self.seen.contains(&tweet.id) {
            self.stats.duplicates += 1;
            return Admission::Duplicate;
        }
        self.seen.insert(tweet.id.clone());
        self.tweets.push(tweet);
        self.stats.kept += 1;
        Admission::Kept
    }

    pub fn extend<I: IntoIterator<Item = Tweet>>(&mut self, partition: I) {
        for t in partition {
            self.push(t);
        }
    }

    pub fn stats(&self) -> IngestStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.tweets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tweets.is_empty()
    }

    pub fn finish(self) -> (Vec<Tweet>, IngestStats) {
        (self.tweets, self.stats)
    }
}
