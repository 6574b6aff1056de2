//! Latent Dirichlet allocation fitted by collapsed Gibbs sampling, with
//! document-completion perplexity and perplexity-based topic-count selection.

mod corpus;
mod model;
mod perplexity;
mod sampler;
mod select;

pub use corpus::{build_corpus, Corpus, CorpusMode, CorpusOptions};
pub use model::TopicModel;
pub use perplexity::{perplexity, PerplexityReport};
pub use sampler::{fit_lda, GibbsSampler, LdaParams};
pub use select::{
    choose_topic_count, score_candidate, select_topic_count, split_holdout, AlphaPrior, CandidateScore,
    HoldoutSplit, Selection, SelectionConfig,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LdaError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("empty vocabulary")]
    EmptyVocabulary,
    #[error("document {doc} refers to word index {index} outside a vocabulary of {vocab}")]
    IndexOutOfVocab { doc: usize, index: u32, vocab: usize },
    #[error("week {week} is outside a window of {num_weeks} weeks")]
    WeekOutOfRange { week: u32, num_weeks: u32 },
    #[error("topic count must be at least 1")]
    ZeroTopics,
    #[error("{topics} topics requested for only {tokens} tokens")]
    TooManyTopics { topics: usize, tokens: usize },
    #[error("iteration count must be at least 1")]
    ZeroIterations,
    #[error("prior {name} must be positive and finite, got {value}")]
    InvalidPrior { name: &'static str, value: f64 },
    #[error("matrix shape mismatch: {0}")]
    Shape(&'static str),
    #[error("row {row} of {matrix} is not a probability distribution")]
    NotNormalized { matrix: &'static str, row: usize },
    #[error("no held-out tokens could be scored")]
    NoScoredTokens,
    #[error("candidate topic counts must be non-empty and strictly ascending")]
    BadCandidates,
    #[error("every candidate topic count failed")]
    AllCandidatesFailed,
    #[error("holdout fraction must lie strictly between 0 and 1, got {0}")]
    BadHoldoutFraction(f64),
}

/// Independent random streams derived from one seed.
#[derive(Debug, Clone, Copy)]
#[repr(u64)]
enum Stream {
    Fit = 0,
    Split = 1,
    FoldIn = 2,
}

fn rng_for(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
