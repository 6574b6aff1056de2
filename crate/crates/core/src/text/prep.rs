use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::porter::porter_stem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error("lemma rule {0:?} is not a single lowercase alphanumeric token")]
    InvalidToken(String),
    #[error("conflicting lemmas for {form:?}: {first:?} and {second:?}")]
    Conflict { form: String, first: String, second: String },
    #[error("lemma rules form a cycle through {0:?}")]
    Cycle(String),
}

/// Preprocessed tweet. `stems[i]` is the Porter stem of `surface_tokens[i]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenizedDoc {
    pub tweet_id: String,
    pub surface_tokens: Vec<String>,
    pub stems: Vec<String>,
}

impl TokenizedDoc {
    pub fn len(&self) -> usize {
        self.surface_tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.surface_tokens.is_empty()
    }

    /// (surface, stem) pairs in token order.
    pub fn tokens(&self) -> impl Iterator<Item = (&str, &str)> {
        self.surface_tokens
            .iter()
            .zip(&self.stems)
            .map(|(a, b)| (a.as_str(), b.as_str()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopWords(BTreeSet<String>);

impl StopWords {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, word: &str) {
        let w = word.trim();
        if !w.is_empty() {
            self.0.insert(w.chars().flat_map(char::to_lowercase).collect());
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'a> FromIterator<&'a str> for StopWords {
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        let mut s = StopWords::new();
        for w in iter {
            s.insert(w);
        }
        s
    }
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() && !c.is_uppercase())
}

/// Inflected form -> lemma. Chains (`a -> b`, `b -> c`) are collapsed when
/// the table is finalized so that lemmatizing is idempotent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaTable(BTreeMap<String, String>);

impl LemmaTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, form: &str, lemma: &str) -> Result<(), LemmaError> {
        let form: String = form.trim().chars().flat_map(char::to_lowercase).collect();
        let lemma: String = lemma.trim().chars().flat_map(char::to_lowercase).collect();
        for t in [&form, &lemma] {
            if !is_token(t) {
                return Err(LemmaError::InvalidToken(t.clone()));
            }
        }
        if form == lemma {
            return Ok(());
        }
        match self.0.get(&form) {
            Some(prev) if *prev != lemma => Err(LemmaError::Conflict {
                form,
                first: prev.clone(),
                second: lemma,
            }),
            _ => {
                self.0.insert(form, lemma);
                Ok(())
            }
        }
    }

    /// Collapse chains to their final lemma; fails on cycles.
    pub fn finalize(mut self) -> Result<Self, LemmaError> {
        let keys: Vec<String> = self.0.keys().cloned().collect();
        for key in keys {
            let mut target = self.0[&key].clone();
            let mut steps = 0;
            while let Some(next) = self.0.get(&target) {
                steps += 1;
                if steps > self.0.len() || *next == key {
                    return Err(LemmaError::Cycle(key));
                }
                target = next.clone();
            }
            self.0.insert(key, target);
        }
        Ok(self)
    }

    pub fn lemma<'a>(&'a self, word: &'a str) -> &'a str {
        self.0.get(word).map(String::as_str).unwrap_or(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Lowercase / tokenize / stopword / lemmatize / stem pipeline.
#[derive(Debug, Clone, Default)]
pub struct Preprocessor {
    stopwords: StopWords,
    lemmas: LemmaTable,
}

impl Preprocessor {
    pub fn new(stopwords: StopWords) -> Self {
        Self { stopwords, lemmas: LemmaTable::new() }
    }

    /// `lemmas` should come from [`LemmaTable::finalize`].
    pub fn with_lemmas(mut self, lemmas: LemmaTable) -> Self {
        self.lemmas = lemmas;
        self
    }

    pub fn stopwords(&self) -> &StopWords {
        &self.stopwords
    }

    pub fn process(&self, text: &str) -> TokenizedDoc {
        let cleaned = strip_urls_and_mentions(text);
        let mut surface_tokens = Vec::new();
        let mut stems = Vec::new();
        let lowered: String = cleaned.chars().flat_map(char::to_lowercase).collect();
        for raw in lowered
            .split(|c: char| !c.is_alphanumeric() || c.is_uppercase())
            .filter(|t| !t.is_empty())
        {
            if self.drop(raw) {
                continue;
            }
            let lemma = self.lemmas.lemma(raw);
            if self.drop(lemma) {
                continue;
            }
            stems.push(porter_stem(lemma));
            surface_tokens.push(String::from(lemma));
        }
        TokenizedDoc { tweet_id: String::new(), surface_tokens, stems }
    }

    pub fn process_tweet(&self, id: &str, text: &str) -> TokenizedDoc {
        let mut doc = self.process(text);
        doc.tweet_id = String::from(id);
        doc
    }

    fn drop(&self, token: &str) -> bool {
        self.stopwords.contains(token)
            || token.chars().all(char::is_numeric)
            || token.contains("http")
    }
}

fn starts_with_ignore_case(s: &str, prefix: &str) -> bool {
    s.len() >= prefix.len()
        && s.is_char_boundary(prefix.len())
        && s[..prefix.len()].eq_ignore_ascii_case(prefix)
}

/// Remove URLs (from `http://`, `https://` or a leading `www.` to the end of
/// the whitespace-delimited chunk) and `@handle` mentions. `#` markers are
/// left for the tokenizer, which splits them off the hashtag body.
fn strip_urls_and_mentions(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for chunk in text.split_whitespace() {
        if starts_with_ignore_case(chunk, "www.") {
            continue;
        }
        let mut kept = chunk;
        for (i, _) in chunk.char_indices() {
            let rest = &chunk[i..];
            if starts_with_ignore_case(rest, "http://") || starts_with_ignore_case(rest, "https://") {
                kept = &chunk[..i];
                break;
            }
        }
        let mut chars = kept.chars().peekable();
        while let Some(c) = chars.next() {
            if c == '@' {
                while chars.next_if(|n| n.is_ascii_alphanumeric() || *n == '_').is_some() {}
                out.push(' ');
            } else {
                out.push(c);
            }
        }
        out.push(' ');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pre(stop: &[&str]) -> Preprocessor {
        Preprocessor::new(stop.iter().copied().collect())
    }

    #[test]
    fn empty_input() {
        let d = pre(&["at"]).process("");
        assert!(d.surface_tokens.is_empty() && d.stems.is_empty());
    }

    #[test]
    fn hashtags_urls_mentions() {
        let d = pre(&["at"]).process("Staying SAFE at home! #covid https://t.co/x");
        assert_eq!(d.surface_tokens, vec!["staying", "safe", "home", "covid"]);
        assert_eq!(d.stems, vec!["stai", "safe", "home", "covid"]);
        let d = pre(&[]).process("@WHO_int thanks!see:http://x.y/z www.example.org ok");
        assert_eq!(d.surface_tokens, vec!["thanks", "see", "ok"]);
    }

    #[test]
    fn running_runs() {
        let d = pre(&[]).process("running runs");
        assert_eq!(d.stems, vec!["run", "run"]);
    }

    #[test]
    fn numbers_and_symbols_dropped() {
        let d = pre(&[]).process("2020 covid19 😷 stay-home ١٢");
        assert_eq!(d.surface_tokens, vec!["covid19", "stay", "home"]);
    }

    #[test]
    fn lemma_rules_applied_before_stemming() {
        let mut t = LemmaTable::new();
        t.insert("mice", "mouse").unwrap();
        t.insert("went", "go").unwrap();
        let p = pre(&["go"]).with_lemmas(t.finalize().unwrap());
        let d = p.process("Mice went");
        assert_eq!(d.surface_tokens, vec!["mouse"]);
        assert_eq!(d.stems, vec!["mous"]);
    }

    #[test]
    fn lemma_chains_and_cycles() {
        let mut t = LemmaTable::new();
        t.insert("a1", "b1").unwrap();
        t.insert("b1", "c1").unwrap();
        let t = t.finalize().unwrap();
        assert_eq!(t.lemma("a1"), "c1");

        let mut t = LemmaTable::new();
        t.insert("x", "y").unwrap();
        t.insert("y", "x").unwrap();
        assert!(matches!(t.finalize(), Err(LemmaError::Cycle(_))));

        let mut t = LemmaTable::new();
        assert!(matches!(t.insert("don't", "do"), Err(LemmaError::InvalidToken(_))));
        t.insert("was", "be").unwrap();
        assert!(matches!(t.insert("was", "is"), Err(LemmaError::Conflict { .. })));
    }

    #[test]
    fn non_latin_scripts_kept() {
        let d = pre(&[]).process("Ünïcode ΚΑΛΗΜΕΡΑ");
        assert_eq!(d.surface_tokens, vec!["ünïcode", "καλημερα"]);
        assert_eq!(d.stems, d.surface_tokens);
    }
}
