use alloc::vec::Vec;

use rand::Rng;

use super::perplexity::{completion_log_likelihood, perplexity_from, CompletionDoc};
use super::{fit_lda, rng_for, Corpus, LdaError, LdaParams, PerplexityReport, Stream};

/// Document-topic prior as a function of the topic count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaPrior {
    /// `alpha = total / K`
    Scaled(f64),
    Fixed(f64),
}

impl AlphaPrior {
    pub fn for_topics(self, k: usize) -> f64 {
        match self {
            AlphaPrior::Scaled(total) => total / k as f64,
            AlphaPrior::Fixed(a) => a,
        }
    }
}

impl Default for AlphaPrior {
    fn default() -> Self {
        AlphaPrior::Scaled(50.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionConfig {
    pub alpha: AlphaPrior,
    pub beta: f64,
    pub iterations: u32,
    pub fold_in_iterations: u32,
    /// share of each document's tokens held out for scoring
    pub holdout_fraction: f64,
    pub seed: u64,
}

impl SelectionConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            alpha: AlphaPrior::default(),
            beta: 0.01,
            iterations: 1000,
            fold_in_iterations: 50,
            holdout_fraction: 0.1,
            seed,
        }
    }

    pub fn params(&self, topics: usize) -> LdaParams {
        LdaParams {
            topics,
            alpha: self.alpha.for_topics(topics),
            beta: self.beta,
            iterations: self.iterations,
            seed: self.seed,
        }
    }
}

/// Per-document token split: `train` keeps the fitting tokens, `heldout[d]`
/// the tokens of document `d` reserved for completion scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct HoldoutSplit {
    pub train: Corpus,
    pub heldout: Vec<Vec<u32>>,
}

/// Seeded token-level split; each token is held out independently with
/// probability `fraction`.
pub fn split_holdout(corpus: &Corpus, fraction: f64, seed: u64) -> Result<HoldoutSplit, LdaError> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(LdaError::BadHoldoutFraction(fraction));
    }
    let mut rng = rng_for(seed, Stream::Split);
    let mut train = Vec::with_capacity(corpus.num_docs());
    let mut heldout = Vec::with_capacity(corpus.num_docs());
    for doc in corpus.docs() {
        let (mut keep, mut hold) = (Vec::new(), Vec::new());
        for &w in doc {
            if rng.random::<f64>() < fraction {
                hold.push(w);
            } else {
                keep.push(w);
            }
        }
        train.push(keep);
        heldout.push(hold);
    }
    Ok(HoldoutSplit { train: corpus.with_docs(train), heldout })
}

/// Fit on the training split and score the held-out tokens, folding in
/// each document's training tokens to estimate its theta.
pub fn score_candidate(split: &HoldoutSplit, topics: usize, cfg: &SelectionConfig) -> Result<PerplexityReport, LdaError> {
    if cfg.fold_in_iterations == 0 {
        return Err(LdaError::ZeroIterations);
    }
    let model = fit_lda(&split.train, cfg.params(topics))?;
    let mut rng = rng_for(cfg.seed, Stream::FoldIn);
    let docs = split
        .train
        .docs()
        .iter()
        .zip(&split.heldout)
        .map(|(o, c)| CompletionDoc { observed: o, completion: c });
    let (log_sum, n) = completion_log_likelihood(&model, docs, cfg.fold_in_iterations, &mut rng);
    Ok(PerplexityReport {
        perplexity: perplexity_from(log_sum, n)?,
        scored_tokens: n,
        skipped_tokens: 0,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateScore {
    pub topics: usize,
    pub outcome: Result<PerplexityReport, LdaError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub best: usize,
    pub scores: Vec<CandidateScore>,
}

/// Argmin of perplexity over the successful candidates; equal scores go to
/// the smaller topic count.
pub fn choose_topic_count(scores: &[CandidateScore]) -> Result<usize, LdaError> {
    let mut best: Option<(usize, f64)> = None;
    for s in scores {
        if let Ok(r) = &s.outcome {
            let better = match best {
                None => true,
                Some((k, p)) => r.perplexity < p || (r.perplexity == p && s.topics < k),
            };
            if better && !r.perplexity.is_nan() {
                best = Some((s.topics, r.perplexity));
            }
        }
    }
    best.map(|(k, _)| k).ok_or(LdaError::AllCandidatesFailed)
}

pub(crate) fn check_candidates(candidates: &[usize]) -> Result<(), LdaError> {
    if candidates.is_empty() || candidates.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LdaError::BadCandidates);
    }
    Ok(())
}

/// Score every candidate topic count on one shared split and pick the one
/// with the lowest held-out perplexity.
pub fn select_topic_count(corpus: &Corpus, candidates: &[usize], cfg: &SelectionConfig) -> Result<Selection, LdaError> {
    check_candidates(candidates)?;
    let split = split_holdout(corpus, cfg.holdout_fraction, cfg.seed)?;
    let scores: Vec<CandidateScore> = candidates
        .iter()
        .map(|&k| CandidateScore { topics: k, outcome: score_candidate(&split, k, cfg) })
        .collect();
    let best = choose_topic_count(&scores)?;
    Ok(Selection { best, scores })
}
