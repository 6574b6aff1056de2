//! NRC emotion tallies and weekly per-region emotion shares.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign};

use crate::lexicon::{lookup, EmoLexicon, Emotion, Label};
use crate::text::TokenizedDoc;
use crate::tweet::CountryCode;

/// Token-occurrence counts for the eight emotions and the two polarities.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EmotionTally {
    pub counts: [u64; 8],
    /// `[negative, positive]`
    pub polarity_counts: [u64; 2],
}

impl EmotionTally {
    pub fn count(&self, e: Emotion) -> u64 {
        self.counts[e.index()]
    }

    pub fn negative(&self) -> u64 {
        self.polarity_counts[0]
    }

    pub fn positive(&self) -> u64 {
        self.polarity_counts[1]
    }

    pub fn emotion_total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn add_label(&mut self, label: Label) {
        match label {
            Label::Emotion(e) => self.counts[e.index()] += 1,
            Label::Negative => self.polarity_counts[0] += 1,
            Label::Positive => self.polarity_counts[1] += 1,
        }
    }

    pub fn scaled(&self, factor: u64) -> Self {
        Self {
            counts: self.counts.map(|c| c * factor),
            polarity_counts: self.polarity_counts.map(|c| c * factor),
        }
    }
}

impl AddAssign for EmotionTally {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.counts.iter_mut().zip(rhs.counts) {
            *a += b;
        }
        for (a, b) in self.polarity_counts.iter_mut().zip(rhs.polarity_counts) {
            *a += b;
        }
    }
}

impl Add for EmotionTally {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

/// Each token occurrence adds one to every label associated with it.
pub fn tally_emotions(doc: &TokenizedDoc, lex: &EmoLexicon) -> EmotionTally {
    let mut tally = EmotionTally::default();
    for (surface, stem) in doc.tokens() {
        if let Some(m) = lookup(lex, surface, stem) {
            for label in m.entry.iter() {
                tally.add_label(label);
            }
        }
    }
    tally
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    Country(CountryCode),
    Global,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Country(c) => write!(f, "{c}"),
            Region::Global => f.write_str("global"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmotionProportions {
    pub week: u32,
    pub region: Region,
    /// indexed by [`Emotion::index`]
    pub shares: [f64; 8],
}

impl EmotionProportions {
    pub fn share(&self, e: Emotion) -> f64 {
        self.shares[e.index()]
    }
}

/// Shares of each emotion within a cell; `None` when the cell has no
/// emotion hits. Polarity counts are not part of the denominator.
pub fn cell_shares(tally: &EmotionTally) -> Option<[f64; 8]> {
    let total = tally.emotion_total();
    if total == 0 {
        return None;
    }
    let total = total as f64;
    Some(tally.counts.map(|c| c as f64 / total))
}

/// One row per non-empty (week, region) cell, ordered by region then week.
pub fn weekly_emotion_proportions(cells: &BTreeMap<(u32, Region), EmotionTally>) -> Vec<EmotionProportions> {
    let mut rows: Vec<EmotionProportions> = cells
        .iter()
        .filter_map(|(&(week, region), tally)| {
            cell_shares(tally).map(|shares| EmotionProportions { week, region, shares })
        })
        .collect();
    rows.sort_by_key(|r| (r.region, r.week));
    rows
}
