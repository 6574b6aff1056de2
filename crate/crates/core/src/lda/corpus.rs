use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::LdaError;
use crate::text::TokenizedDoc;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CorpusMode {
    /// one document per study week
    #[default]
    WeeklyPooled,
    /// one document per tweet
    PerTweet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusOptions {
    pub mode: CorpusMode,
    pub min_count: u32,
    pub num_weeks: u32,
}

impl CorpusOptions {
    pub fn new(mode: CorpusMode, num_weeks: u32) -> Self {
        Self { mode, min_count: 2, num_weeks }
    }
}

/// Bag-of-words documents over an indexed vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    vocab: Vec<String>,
    index: BTreeMap<String, u32>,
    docs: Vec<Vec<u32>>,
    doc_weeks: Vec<u32>,
    mode: CorpusMode,
}

impl Corpus {
    /// Validating constructor. `doc_weeks` must have one entry per document.
    pub fn new(
        vocab: Vec<String>,
        docs: Vec<Vec<u32>>,
        doc_weeks: Vec<u32>,
        mode: CorpusMode,
    ) -> Result<Self, LdaError> {
        if doc_weeks.len() != docs.len() {
            return Err(LdaError::Shape("doc_weeks length differs from document count"));
        }
        let mut index = BTreeMap::new();
        for (i, w) in vocab.iter().enumerate() {
            if index.insert(w.clone(), i as u32).is_some() {
                return Err(LdaError::Shape("vocabulary contains duplicates"));
            }
        }
        for (d, doc) in docs.iter().enumerate() {
            if let Some(&bad) = doc.iter().find(|&&w| w as usize >= vocab.len()) {
                return Err(LdaError::IndexOutOfVocab { doc: d, index: bad, vocab: vocab.len() });
            }
        }
        Ok(Self { vocab, index, docs, doc_weeks, mode })
    }

    /// Corpus over the words of `docs`, vocabulary sorted, no frequency cut.
    pub fn from_words<S: AsRef<str>>(docs: &[Vec<S>]) -> Self {
        let mut vocab: Vec<String> = docs.iter().flatten().map(|w| String::from(w.as_ref())).collect();
        vocab.sort();
        vocab.dedup();
        let index: BTreeMap<String, u32> =
            vocab.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let docs: Vec<Vec<u32>> = docs
            .iter()
            .map(|d| d.iter().map(|w| index[w.as_ref()]).collect())
            .collect();
        let doc_weeks = vec![0; docs.len()];
        Self { vocab, index, docs, doc_weeks, mode: CorpusMode::PerTweet }
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn word_index(&self, word: &str) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn docs(&self) -> &[Vec<u32>] {
        &self.docs
    }

    /// Study week of each document.
    pub fn doc_weeks(&self) -> &[u32] {
        &self.doc_weeks
    }

    pub fn mode(&self) -> CorpusMode {
        self.mode
    }

    pub fn num_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn num_tokens(&self) -> usize {
        self.docs.iter().map(Vec::len).sum()
    }

    pub(crate) fn with_docs(&self, docs: Vec<Vec<u32>>) -> Self {
        Self {
            vocab: self.vocab.clone(),
            index: self.index.clone(),
            doc_weeks: self.doc_weeks.clone(),
            docs,
            mode: self.mode,
        }
    }
}

/// Build an LDA corpus from preprocessed tweets tagged with their study
/// week. Stems seen fewer than `min_count` times in total are dropped.
pub fn build_corpus<'a, I>(docs: I, opts: &CorpusOptions) -> Result<Corpus, LdaError>
where
    I: IntoIterator<Item = (u32, &'a TokenizedDoc)>,
{
    let docs: Vec<(u32, &TokenizedDoc)> = docs.into_iter().collect();
    if let Some(&(week, _)) = docs.iter().find(|(w, _)| *w >= opts.num_weeks) {
        return Err(LdaError::WeekOutOfRange { week, num_weeks: opts.num_weeks });
    }
    let mut freq: BTreeMap<&str, u32> = BTreeMap::new();
    for (_, doc) in &docs {
        for s in &doc.stems {
            *freq.entry(s.as_str()).or_default() += 1;
        }
    }
    let vocab: Vec<String> = freq
        .iter()
        .filter(|(_, &n)| n >= opts.min_count.max(1))
        .map(|(w, _)| String::from(*w))
        .collect();
    if vocab.is_empty() {
        return Err(LdaError::EmptyCorpus);
    }
    let index: BTreeMap<String, u32> =
        vocab.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
    let encode = |doc: &TokenizedDoc, out: &mut Vec<u32>| {
        out.extend(doc.stems.iter().filter_map(|s| index.get(s.as_str()).copied()));
    };

    let (out_docs, doc_weeks) = match opts.mode {
        CorpusMode::WeeklyPooled => {
            let mut pooled = vec![Vec::new(); opts.num_weeks as usize];
            for (week, doc) in &docs {
                encode(doc, &mut pooled[*week as usize]);
            }
            (pooled, (0..opts.num_weeks).collect())
        }
        CorpusMode::PerTweet => {
            let mut out = Vec::with_capacity(docs.len());
            for (_, doc) in &docs {
                let mut d = Vec::new();
                encode(doc, &mut d);
                out.push(d);
            }
            (out, docs.iter().map(|(w, _)| *w).collect())
        }
    };
    Ok(Corpus { vocab, index, docs: out_docs, doc_weeks, mode: opts.mode })
}
