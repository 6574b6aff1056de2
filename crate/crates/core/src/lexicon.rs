//! AFINN valence scores and NRC EmoLex word-emotion associations.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("empty word")]
    EmptyWord,
    #[error("score {score} for {word:?} is outside -5..=-1 and 1..=5")]
    ScoreOutOfRange { word: String, score: i64 },
    #[error("duplicate entry for {0:?}")]
    Duplicate(String),
    #[error("unknown emotion label {0:?}")]
    UnknownLabel(String),
}

/// Plutchik's eight basic emotions, in report column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Emotion {
    Anger,
    Fear,
    Anticipation,
    Trust,
    Surprise,
    Sadness,
    Joy,
    Disgust,
}

impl Emotion {
    pub const ALL: [Emotion; 8] = [
        Emotion::Anger,
        Emotion::Fear,
        Emotion::Anticipation,
        Emotion::Trust,
        Emotion::Surprise,
        Emotion::Sadness,
        Emotion::Joy,
        Emotion::Disgust,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        Label::Emotion(self).as_str()
    }
}

/// One of the ten EmoLex labels: eight emotions plus two polarities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Emotion(Emotion),
    Negative,
    Positive,
}

impl Label {
    pub const ALL: [Label; 10] = [
        Label::Emotion(Emotion::Anger),
        Label::Emotion(Emotion::Anticipation),
        Label::Emotion(Emotion::Disgust),
        Label::Emotion(Emotion::Fear),
        Label::Emotion(Emotion::Joy),
        Label::Negative,
        Label::Positive,
        Label::Emotion(Emotion::Sadness),
        Label::Emotion(Emotion::Surprise),
        Label::Emotion(Emotion::Trust),
    ];

    fn bit(self) -> u16 {
        match self {
            Label::Emotion(e) => 1 << e.index(),
            Label::Negative => 1 << 8,
            Label::Positive => 1 << 9,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Emotion(Emotion::Anger) => "anger",
            Label::Emotion(Emotion::Fear) => "fear",
            Label::Emotion(Emotion::Anticipation) => "anticipation",
            Label::Emotion(Emotion::Trust) => "trust",
            Label::Emotion(Emotion::Surprise) => "surprise",
            Label::Emotion(Emotion::Sadness) => "sadness",
            Label::Emotion(Emotion::Joy) => "joy",
            Label::Emotion(Emotion::Disgust) => "disgust",
            Label::Negative => "negative",
            Label::Positive => "positive",
        }
    }
}

impl FromStr for Label {
    type Err = LexiconError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        Label::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(t))
            .ok_or_else(|| LexiconError::UnknownLabel(t.into()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Subset of the ten labels.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LabelSet(u16);

impl LabelSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn insert(&mut self, label: Label) {
        self.0 |= label.bit();
    }

    pub fn contains(&self, label: Label) -> bool {
        self.0 & label.bit() != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Labels in alphabetical order.
    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        Label::ALL.into_iter().filter(|l| self.contains(*l))
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Label::as_str)).finish()
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        let mut s = LabelSet::empty();
        for l in iter {
            s.insert(l);
        }
        s
    }
}

fn normalize_word(word: &str) -> Result<String, LexiconError> {
    let w: String = word.trim().chars().flat_map(char::to_lowercase).collect();
    if w.is_empty() {
        Err(LexiconError::EmptyWord)
    } else {
        Ok(w)
    }
}

/// Anything that maps a word to an entry.
pub trait Lexicon {
    type Entry: Copy;

    fn get(&self, word: &str) -> Option<Self::Entry>;
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AfinnLexicon {
    scores: BTreeMap<String, i8>,
}

impl AfinnLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, word: &str, score: i64) -> Result<(), LexiconError> {
        let word = normalize_word(word)?;
        if score == 0 || !(-5..=5).contains(&score) {
            return Err(LexiconError::ScoreOutOfRange { word, score });
        }
        if self.scores.contains_key(&word) {
            return Err(LexiconError::Duplicate(word));
        }
        self.scores.insert(word, score as i8);
        Ok(())
    }

    pub fn score(&self, word: &str) -> Option<i8> {
        self.scores.get(word).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i8)> {
        self.scores.iter().map(|(w, s)| (w.as_str(), *s))
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

impl Lexicon for AfinnLexicon {
    type Entry = i8;

    fn get(&self, word: &str) -> Option<i8> {
        self.score(word)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmoLexicon {
    associations: BTreeMap<String, LabelSet>,
}

impl EmoLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record one (word, label, flag) triple. A false flag adds nothing.
    pub fn set(&mut self, word: &str, label: Label, flag: bool) -> Result<(), LexiconError> {
        let word = normalize_word(word)?;
        if flag {
            self.associations.entry(word).or_default().insert(label);
        }
        Ok(())
    }

    pub fn associations(&self, word: &str) -> Option<LabelSet> {
        self.associations.get(word).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, LabelSet)> {
        self.associations.iter().map(|(w, s)| (w.as_str(), *s))
    }

    pub fn len(&self) -> usize {
        self.associations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.associations.is_empty()
    }
}

impl Lexicon for EmoLexicon {
    type Entry = LabelSet;

    fn get(&self, word: &str) -> Option<LabelSet> {
        self.associations(word)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchKind {
    Surface,
    Stem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Match<E> {
    pub entry: E,
    pub kind: MatchKind,
}

/// Surface form first, then the stem.
pub fn lookup<L: Lexicon + ?Sized>(lex: &L, surface: &str, stem: &str) -> Option<Match<L::Entry>> {
    if let Some(entry) = lex.get(surface) {
        return Some(Match { entry, kind: MatchKind::Surface });
    }
    lex.get(stem).map(|entry| Match { entry, kind: MatchKind::Stem })
}
