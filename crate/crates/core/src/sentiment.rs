//! AFINN sum-rule scoring and the daily sentiment series.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::AddAssign;
use core::str::FromStr;

use chrono::NaiveDate;

use crate::lexicon::{lookup, AfinnLexicon};
use crate::text::TokenizedDoc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

impl Polarity {
    pub fn of_score(score: i64) -> Self {
        match score {
            s if s > 0 => Polarity::Positive,
            s if s < 0 => Polarity::Negative,
            _ => Polarity::Neutral,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentimentResult {
    pub tweet_id: String,
    pub score: i64,
    pub polarity: Polarity,
    /// tokens that matched the lexicon
    pub hits: usize,
}

/// Sum of AFINN scores over every token occurrence; unmatched tokens add 0.
pub fn score_tweet(doc: &TokenizedDoc, lex: &AfinnLexicon) -> SentimentResult {
    let mut score = 0i64;
    let mut hits = 0;
    for (surface, stem) in doc.tokens() {
        if let Some(m) = lookup(lex, surface, stem) {
            score += i64::from(m.entry);
            hits += 1;
        }
    }
    SentimentResult {
        tweet_id: doc.tweet_id.clone(),
        score,
        polarity: Polarity::of_score(score),
        hits,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SeriesStat {
    #[default]
    Mean,
    Sum,
}

impl SeriesStat {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesStat::Mean => "mean",
            SeriesStat::Sum => "sum",
        }
    }
}

impl FromStr for SeriesStat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mean" => Ok(SeriesStat::Mean),
            "sum" => Ok(SeriesStat::Sum),
            other => Err(alloc::format!("unknown series statistic {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub date: NaiveDate,
    pub stat: SeriesStat,
    pub value: f64,
}

/// Integer running total for one day. Merging is exact, so partial
/// accumulators can be combined in any order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DayAccumulator {
    pub sum: i64,
    pub count: u64,
}

impl DayAccumulator {
    pub fn push(&mut self, score: i64) {
        self.sum += score;
        self.count += 1;
    }

    pub fn value(&self, stat: SeriesStat) -> f64 {
        match stat {
            SeriesStat::Sum => self.sum as f64,
            SeriesStat::Mean => self.sum as f64 / self.count as f64,
        }
    }
}

impl AddAssign for DayAccumulator {
    fn add_assign(&mut self, rhs: Self) {
        self.sum += rhs.sum;
        self.count += rhs.count;
    }
}

pub fn accumulate_days<I>(scores: I) -> BTreeMap<NaiveDate, DayAccumulator>
where
    I: IntoIterator<Item = (NaiveDate, i64)>,
{
    let mut days: BTreeMap<NaiveDate, DayAccumulator> = BTreeMap::new();
    for (date, score) in scores {
        days.entry(date).or_default().push(score);
    }
    days
}

/// One point per date that has at least one tweet, in date order.
pub fn daily_sentiment_series<I>(scores: I, stat: SeriesStat) -> Vec<SeriesPoint>
where
    I: IntoIterator<Item = (NaiveDate, i64)>,
{
    series_from_days(&accumulate_days(scores), stat)
}

pub fn series_from_days(days: &BTreeMap<NaiveDate, DayAccumulator>, stat: SeriesStat) -> Vec<SeriesPoint> {
    days.iter()
        .filter(|(_, acc)| acc.count > 0)
        .map(|(&date, acc)| SeriesPoint { date, stat, value: acc.value(stat) })
        .collect()
}
