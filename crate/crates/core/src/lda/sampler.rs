use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{rng_for, Corpus, LdaError, Stream, TopicModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LdaParams {
    pub topics: usize,
    /// symmetric document-topic prior
    pub alpha: f64,
    /// symmetric topic-word prior
    pub beta: f64,
    pub iterations: u32,
    pub seed: u64,
}

impl LdaParams {
    /// `alpha = 50 / K`, `beta = 0.01`, 1000 sweeps.
    pub fn new(topics: usize, seed: u64) -> Self {
        Self {
            topics,
            alpha: 50.0 / topics.max(1) as f64,
            beta: 0.01,
            iterations: 1000,
            seed,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_iterations(mut self, iterations: u32) -> Self {
        self.iterations = iterations;
        self
    }

    pub(crate) fn validate(&self, corpus: &Corpus) -> Result<(), LdaError> {
        if self.topics == 0 {
            return Err(LdaError::ZeroTopics);
        }
        if self.iterations == 0 {
            return Err(LdaError::ZeroIterations);
        }
        for (name, value) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(LdaError::InvalidPrior { name, value });
            }
        }
        if corpus.vocab().is_empty() {
            return Err(LdaError::EmptyVocabulary);
        }
        let tokens = corpus.num_tokens();
        if self.topics > tokens {
            return Err(LdaError::TooManyTopics { topics: self.topics, tokens });
        }
        Ok(())
    }
}

/// Collapsed Gibbs sampler state. Each [`sweep`](Self::sweep) resamples
/// every token once, in document order.
#[derive(Debug, Clone)]
pub struct GibbsSampler<'c> {
    corpus: &'c Corpus,
    params: LdaParams,
    vocab: usize,
    /// D x K
    doc_topic: Vec<u32>,
    /// K x V
    topic_word: Vec<u32>,
    topic_total: Vec<u32>,
    assignments: Vec<Vec<u32>>,
    rng: ChaCha8Rng,
    cumulative: Vec<f64>,
    sweeps: u32,
}

impl<'c> GibbsSampler<'c> {
    /// Validates the parameters and draws a uniformly random initial topic
    /// for every token.
    pub fn new(corpus: &'c Corpus, params: LdaParams) -> Result<Self, LdaError> {
        params.validate(corpus)?;
        let k = params.topics;
        let vocab = corpus.vocab().len();
        let mut rng = rng_for(params.seed, Stream::Fit);
        let mut doc_topic = vec![0u32; corpus.num_docs() * k];
        let mut topic_word = vec![0u32; k * vocab];
        let mut topic_total = vec![0u32; k];
        let mut assignments = Vec::with_capacity(corpus.num_docs());
        for (d, doc) in corpus.docs().iter().enumerate() {
            let mut z = Vec::with_capacity(doc.len());
            for &w in doc {
                let t = rng.random_range(0..k);
                doc_topic[d * k + t] += 1;
                topic_word[t * vocab + w as usize] += 1;
                topic_total[t] += 1;
                z.push(t as u32);
            }
            assignments.push(z);
        }
        Ok(Self {
            corpus,
            params,
            vocab,
            doc_topic,
            topic_word,
            topic_total,
            assignments,
            rng,
            cumulative: vec![0.0; k],
            sweeps: 0,
        })
    }

    pub fn sweep(&mut self) {
        let k = self.params.topics;
        let alpha = self.params.alpha;
        let beta = self.params.beta;
        let v_beta = self.vocab as f64 * beta;
        for (d, doc) in self.corpus.docs().iter().enumerate() {
            let dt = &mut self.doc_topic[d * k..(d + 1) * k];
            for (i, &w) in doc.iter().enumerate() {
                let w = w as usize;
                let old = self.assignments[d][i] as usize;
                dt[old] -= 1;
                self.topic_word[old * self.vocab + w] -= 1;
                self.topic_total[old] -= 1;

                let mut total = 0.0;
                #[allow(clippy::needless_range_loop)]
                for t in 0..k {
                    let p = (f64::from(dt[t]) + alpha)
                        * (f64::from(self.topic_word[t * self.vocab + w]) + beta)
                        / (f64::from(self.topic_total[t]) + v_beta);
                    total += p;
                    self.cumulative[t] = total;
                }
                let u = self.rng.random::<f64>() * total;
                let new = self.cumulative.iter().position(|&c| u < c).unwrap_or(k - 1);

                dt[new] += 1;
                self.topic_word[new * self.vocab + w] += 1;
                self.topic_total[new] += 1;
                self.assignments[d][i] = new as u32;
            }
        }
        self.sweeps += 1;
    }

    pub fn sweeps(&self) -> u32 {
        self.sweeps
    }

    pub fn params(&self) -> &LdaParams {
        &self.params
    }

    pub fn corpus(&self) -> &Corpus {
        self.corpus
    }

    pub fn doc_topic(&self, doc: usize, topic: usize) -> u32 {
        self.doc_topic[doc * self.params.topics + topic]
    }

    pub fn topic_word(&self, topic: usize, word: usize) -> u32 {
        self.topic_word[topic * self.vocab + word]
    }

    pub fn topic_total(&self, topic: usize) -> u32 {
        self.topic_total[topic]
    }

    pub fn assignments(&self) -> &[Vec<u32>] {
        &self.assignments
    }

    /// Posterior-mean estimates of phi and theta from the current counts.
    pub fn estimate(&self) -> TopicModel {
        let k = self.params.topics;
        let v = self.vocab;
        let LdaParams { alpha, beta, .. } = self.params;
        let v_beta = v as f64 * beta;
        let mut phi = Vec::with_capacity(k * v);
        for t in 0..k {
            let denom = f64::from(self.topic_total[t]) + v_beta;
            phi.extend((0..v).map(|w| (f64::from(self.topic_word[t * v + w]) + beta) / denom));
        }
        let k_alpha = k as f64 * alpha;
        let mut theta = Vec::with_capacity(self.corpus.num_docs() * k);
        for (d, doc) in self.corpus.docs().iter().enumerate() {
            let denom = doc.len() as f64 + k_alpha;
            theta.extend((0..k).map(|t| (f64::from(self.doc_topic[d * k + t]) + alpha) / denom));
        }
        TopicModel::from_fit(
            self.params,
            self.sweeps,
            self.corpus.vocab().to_vec(),
            phi,
            theta,
            self.assignments.clone(),
        )
    }
}

/// Run `params.iterations` sweeps and return the final-state estimate.
pub fn fit_lda(corpus: &Corpus, params: LdaParams) -> Result<TopicModel, LdaError> {
    let mut sampler = GibbsSampler::new(corpus, params)?;
    for _ in 0..params.iterations {
        sampler.sweep();
    }
    Ok(sampler.estimate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lda::CorpusMode;
    use alloc::string::String;

    fn toy() -> Corpus {
        Corpus::from_words(&[
            vec!["a", "b", "a", "c"],
            vec!["c", "d", "d"],
            vec!["a", "d", "e", "e", "b"],
        ])
    }

    #[test]
    fn parameter_validation() {
        let c = toy();
        assert_eq!(fit_lda(&c, LdaParams::new(0, 1)).unwrap_err(), LdaError::ZeroTopics);
        assert_eq!(
            fit_lda(&c, LdaParams::new(13, 1)).unwrap_err(),
            LdaError::TooManyTopics { topics: 13, tokens: 12 }
        );
        assert_eq!(
            fit_lda(&c, LdaParams::new(2, 1).with_iterations(0)).unwrap_err(),
            LdaError::ZeroIterations
        );
        assert!(matches!(
            fit_lda(&c, LdaParams::new(2, 1).with_beta(0.0)),
            Err(LdaError::InvalidPrior { name: "beta", .. })
        ));
        let empty = Corpus::new(Vec::<String>::new(), vec![], vec![], CorpusMode::PerTweet).unwrap();
        assert_eq!(fit_lda(&empty, LdaParams::new(1, 1)).unwrap_err(), LdaError::EmptyVocabulary);
    }

    #[test]
    fn single_topic_is_smoothed_unigram() {
        let c = toy();
        let m = fit_lda(&c, LdaParams::new(1, 7).with_iterations(5)).unwrap();
        let n = c.num_tokens() as f64;
        let v = c.vocab().len() as f64;
        let counts = [3.0, 2.0, 2.0, 3.0, 2.0];
        for (w, &nw) in counts.iter().enumerate() {
            let expected = (nw + 0.01) / (n + v * 0.01);
            assert!((m.phi(0)[w] - expected).abs() < 1e-15);
        }
        for d in 0..c.num_docs() {
            assert_eq!(m.theta(d), [1.0]);
        }
    }

    #[test]
    fn seeded_determinism() {
        let c = toy();
        let a = fit_lda(&c, LdaParams::new(2, 42).with_iterations(50)).unwrap();
        let b = fit_lda(&c, LdaParams::new(2, 42).with_iterations(50)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_documents_get_uniform_theta() {
        let c = Corpus::from_words(&[vec!["a", "b", "a"], vec![], vec!["b", "b"]]);
        let m = fit_lda(&c, LdaParams::new(4, 3).with_iterations(10)).unwrap();
        assert_eq!(m.theta(1), [0.25; 4]);
    }
}
