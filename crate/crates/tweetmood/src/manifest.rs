//! `run_manifest.json`: configuration echo, counts and diagnostics. Holds
//! no timestamps or host details so re-runs produce identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::RunConfig;

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct IngestSection {
    pub ingested: u64,
    pub kept: u64,
    pub duplicates: u64,
    pub non_english: u64,
    /// kept tweets dated outside the study window
    pub out_of_window: u64,
    pub analyzed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SourceCounts {
    pub gps: u64,
    pub place: u64,
    pub profile: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GeoSection {
    pub resolved: u64,
    pub unresolved: u64,
    pub resolution_rate: f64,
    pub by_source: SourceCounts,
    pub by_country: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LexiconHits {
    pub tokens: u64,
    pub surface_hits: u64,
    pub stem_hits: u64,
    pub hit_rate: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SentimentSection {
    pub stat: &'static str,
    pub days: u64,
    pub positive: u64,
    pub negative: u64,
    pub neutral: u64,
    pub afinn: LexiconHits,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EmotionSection {
    pub emolex: LexiconHits,
    /// non-empty (week, region) cells
    pub cells: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateEntry {
    pub topics: usize,
    pub perplexity: Option<f64>,
    pub scored_tokens: u64,
    pub skipped_tokens: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopicSection {
    pub mode: &'static str,
    pub documents: u64,
    pub vocabulary: u64,
    pub tokens: u64,
    /// stem occurrences dropped by the min_count filter
    pub below_min_count_tokens: u64,
    pub heldout_tokens: u64,
    pub selected_topics: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: u32,
    pub candidates: Vec<CandidateEntry>,
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub stage: &'static str,
    pub seed: u64,
    pub config: &'a RunConfig,
    pub ingest: IngestSection,
    pub geolocation: GeoSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sentiment: Option<SentimentSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emotions: Option<EmotionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topics: Option<TopicSection>,
    pub outputs: Vec<&'static str>,
    pub warnings: Vec<String>,
}

impl Manifest<'_> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
