//! JSON Lines tweet archives.
//!
//! One object per line with `id`, `created_at` (RFC 3339), `text` and the
//! optional `user_location`, `coordinates` (`[lon, lat]`), `place_country`
//! and `lang`. Other fields are ignored.

use std::io::BufRead;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use tweetmood_core::{Deduplicator, GeoPoint, Tweet};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("line {line}: malformed record: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: missing required field {field:?}")]
    Schema { line: usize, field: &'static str },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
}

impl IngestError {
    pub fn line(&self) -> Option<usize> {
        match self {
            IngestError::Parse { line, .. } | IngestError::Schema { line, .. } | IngestError::Invalid { line, .. } => {
                Some(*line)
            }
            IngestError::Io(_) => None,
        }
    }
}

#[derive(Deserialize)]
struct RawRecord {
    id: Option<String>,
    created_at: Option<String>,
    text: Option<String>,
    user_location: Option<String>,
    coordinates: Option<Vec<f64>>,
    place_country: Option<String>,
    lang: Option<String>,
}

#[derive(Serialize)]
struct OutRecord<'a> {
    id: &'a str,
    created_at: String,
    text: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    user_location: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coordinates: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    place_country: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lang: Option<&'a str>,
}

fn non_empty(s: Option<String>) -> Option<String> {
    s.filter(|v| !v.trim().is_empty())
}

/// Parse and validate one archive line. `line` is only used in errors.
pub fn parse_tweet_record(text: &str, line: usize) -> Result<Tweet, IngestError> {
    let raw: RawRecord =
        serde_json::from_str(text).map_err(|e| IngestError::Parse { line, message: e.to_string() })?;
    let id = raw.id.ok_or(IngestError::Schema { line, field: "id" })?;
    let created_at = raw.created_at.ok_or(IngestError::Schema { line, field: "created_at" })?;
    let body = raw.text.ok_or(IngestError::Schema { line, field: "text" })?;
    let invalid = |message: String| IngestError::Invalid { line, message };

    let created_at: DateTime<Utc> = DateTime::parse_from_rfc3339(&created_at)
        .map_err(|e| invalid(format!("created_at {created_at:?}: {e}")))?
        .with_timezone(&Utc);
    let mut tweet = Tweet::new(id, created_at, body).map_err(|e| invalid(e.to_string()))?;
    tweet.profile_location = non_empty(raw.user_location);
    tweet.lang = non_empty(raw.lang);
    if let Some(c) = raw.coordinates {
        let [lon, lat] = c[..] else {
            return Err(invalid(format!("coordinates must be [lon, lat], got {} values", c.len())));
        };
        tweet.gps = Some(GeoPoint::new(lat, lon).map_err(|e| invalid(e.to_string()))?);
    }
    if let Some(code) = non_empty(raw.place_country) {
        tweet.place_country = Some(code.parse().map_err(|e: tweetmood_core::TweetError| invalid(e.to_string()))?);
    }
    Ok(tweet)
}

/// Inverse of [`parse_tweet_record`], without a trailing newline.
pub fn tweet_record(t: &Tweet) -> String {
    let rec = OutRecord {
        id: &t.id,
        created_at: t.created_at.to_rfc3339_opts(SecondsFormat::AutoSi, true),
        text: &t.text,
        user_location: t.profile_location.as_deref(),
        coordinates: t.gps.map(|p| [p.lon(), p.lat()]),
        place_country: t.place_country.as_ref().map(|c| c.as_str()),
        lang: t.lang.as_deref(),
    };
    serde_json::to_string(&rec).expect("record serializes")
}

/// Read a whole archive into a deduplicator. Blank lines are skipped; the
/// first invalid record aborts the read.
pub fn read_archive<R: BufRead>(reader: R) -> Result<Deduplicator, IngestError> {
    let mut dedup = Deduplicator::new();
    for (i, line) in reader.lines().enumerate() {
        let line_text = line?;
        if line_text.trim().is_empty() {
            continue;
        }
        dedup.push(parse_tweet_record(&line_text, i + 1)?);
    }
    Ok(dedup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_record() {
        let t = parse_tweet_record(r#"{"id":"1","created_at":"2020-03-12T00:00:00Z","text":"hello"}"#, 1).unwrap();
        assert_eq!(t.id, "1");
        assert_eq!(t.text, "hello");
        assert_eq!(t.created_at.to_rfc3339(), "2020-03-12T00:00:00+00:00");
        assert!(t.gps.is_none() && t.profile_location.is_none() && t.lang.is_none());
    }

    #[test]
    fn missing_fields_are_schema_errors() {
        let e = parse_tweet_record(r#"{"id":"1","created_at":"2020-03-12T00:00:00Z"}"#, 4).unwrap_err();
        assert!(matches!(e, IngestError::Schema { line: 4, field: "text" }), "{e}");
        let e = parse_tweet_record(r#"{"text":"x","created_at":"2020-03-12T00:00:00Z"}"#, 1).unwrap_err();
        assert!(e.to_string().contains("\"id\""));
    }

    #[test]
    fn malformed_json_reports_line() {
        let e = parse_tweet_record("{\"id\":", 17).unwrap_err();
        assert!(matches!(e, IngestError::Parse { line: 17, .. }));
        assert!(e.to_string().starts_with("line 17:"));
    }

    #[test]
    fn invalid_values() {
        let base = |extra: &str| format!(r#"{{"id":"1","created_at":"2020-03-12T00:00:00Z","text":"x"{extra}}}"#);
        assert!(parse_tweet_record(&base(r#","coordinates":[103.85]"#), 1).is_err());
        assert!(parse_tweet_record(&base(r#","coordinates":[200.0,1.0]"#), 1).is_err());
        assert!(parse_tweet_record(&base(r#","place_country":"SGP""#), 1).is_err());
        assert!(parse_tweet_record(r#"{"id":"1","created_at":"12 March","text":"x"}"#, 1).is_err());
        assert!(parse_tweet_record(r#"{"id":"","created_at":"2020-03-12T00:00:00Z","text":"x"}"#, 1).is_err());
    }

    #[test]
    fn offsets_convert_to_utc_and_extras_ignored() {
        let t = parse_tweet_record(
            r#"{"id":"9","created_at":"2020-03-12T07:30:00+08:00","text":"x","retweets":3,"place_country":"","lang":"en"}"#,
            1,
        )
        .unwrap();
        assert_eq!(t.created_at.to_rfc3339(), "2020-03-11T23:30:00+00:00");
        assert!(t.place_country.is_none());
        assert_eq!(t.lang.as_deref(), Some("en"));
    }

    #[test]
    fn archive_dedups_and_filters_language() {
        let archive = concat!(
            r#"{"id":"1","created_at":"2020-03-12T00:00:00Z","text":"a"}"#,
            "\n\n",
            r#"{"id":"1","created_at":"2020-03-13T00:00:00Z","text":"b"}"#,
            "\n",
            r#"{"id":"2","created_at":"2020-03-12T00:00:00Z","text":"c","lang":"fr"}"#,
            "\n",
        );
        let (tweets, stats) = read_archive(archive.as_bytes()).unwrap().finish();
        assert_eq!(tweets.len(), 1);
        assert_eq!(tweets[0].text, "a");
        assert_eq!((stats.ingested, stats.kept, stats.duplicates, stats.non_english), (3, 1, 1, 1));
    }
}
