use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{LdaError, LdaParams};

const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// Fitted (or hand-built) topic model. `phi` is K x V and `theta` is
/// D x K, both row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicModel {
    topics: usize,
    alpha: f64,
    beta: f64,
    seed: u64,
    iterations: u32,
    vocab: Vec<String>,
    phi: Vec<f64>,
    theta: Vec<f64>,
    assignments: Vec<Vec<u32>>,
}

fn check_rows(matrix: &'static str, data: &[f64], width: usize) -> Result<(), LdaError> {
    for (row, r) in data.chunks(width).enumerate() {
        let ok = r.iter().all(|p| p.is_finite() && *p >= 0.0)
            && (r.iter().sum::<f64>() - 1.0).abs() <= SIMPLEX_TOLERANCE;
        if !ok {
            return Err(LdaError::NotNormalized { matrix, row });
        }
    }
    Ok(())
}

impl TopicModel {
    pub(crate) fn from_fit(
        params: LdaParams,
        iterations: u32,
        vocab: Vec<String>,
        phi: Vec<f64>,
        theta: Vec<f64>,
        assignments: Vec<Vec<u32>>,
    ) -> Self {
        Self {
            topics: params.topics,
            alpha: params.alpha,
            beta: params.beta,
            seed: params.seed,
            iterations,
            vocab,
            phi,
            theta,
            assignments,
        }
    }

    /// Build a model from explicit matrices, e.g. one read back from disk.
    /// Every row must lie on the probability simplex.
    pub fn from_parts(
        vocab: Vec<String>,
        phi: Vec<Vec<f64>>,
        theta: Vec<Vec<f64>>,
        alpha: f64,
        beta: f64,
        seed: u64,
        iterations: u32,
    ) -> Result<Self, LdaError> {
        let topics = phi.len();
        if topics == 0 {
            return Err(LdaError::ZeroTopics);
        }
        if vocab.is_empty() {
            return Err(LdaError::EmptyVocabulary);
        }
        if phi.iter().any(|r| r.len() != vocab.len()) {
            return Err(LdaError::Shape("phi row length differs from vocabulary size"));
        }
        if theta.iter().any(|r| r.len() != topics) {
            return Err(LdaError::Shape("theta row length differs from topic count"));
        }
        for (name, value) in [("alpha", alpha), ("beta", beta)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(LdaError::InvalidPrior { name, value });
            }
        }
        let phi: Vec<f64> = phi.into_iter().flatten().collect();
        let theta: Vec<f64> = theta.into_iter().flatten().collect();
        check_rows("phi", &phi, vocab.len())?;
        check_rows("theta", &theta, topics)?;
        Ok(Self {
            topics,
            alpha,
            beta,
            seed,
            iterations,
            vocab,
            phi,
            theta,
            assignments: Vec::new(),
        })
    }

    pub fn topics(&self) -> usize {
        self.topics
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn iterations(&self) -> u32 {
        self.iterations
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn num_docs(&self) -> usize {
        self.theta.len() / self.topics
    }

    pub fn phi(&self, topic: usize) -> &[f64] {
        let v = self.vocab.len();
        &self.phi[topic * v..(topic + 1) * v]
    }

    pub fn theta(&self, doc: usize) -> &[f64] {
        &self.theta[doc * self.topics..(doc + 1) * self.topics]
    }

    /// Final per-token topic labels; empty for models built with
    /// [`from_parts`](Self::from_parts).
    pub fn assignments(&self) -> &[Vec<u32>] {
        &self.assignments
    }

    /// Checks every phi and theta row against the simplex within 1e-9.
    pub fn check_simplex(&self) -> Result<(), LdaError> {
        check_rows("phi", &self.phi, self.vocab.len())?;
        check_rows("theta", &self.theta, self.topics)
    }

    /// The `n` most probable words of `topic`, ties broken alphabetically.
    /// `n` larger than the vocabulary returns the whole vocabulary.
    pub fn top_words(&self, topic: usize, n: usize) -> Vec<(&str, f64)> {
        let row = self.phi(topic);
        let mut idx: Vec<usize> = (0..row.len()).collect();
        idx.sort_by(|&a, &b| {
            row[b]
                .partial_cmp(&row[a])
                .unwrap_or(Ordering::Equal)
                .then_with(|| self.vocab[a].cmp(&self.vocab[b]))
        });
        idx.truncate(n);
        idx.into_iter().map(|w| (self.vocab[w].as_str(), row[w])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lda::{fit_lda, Corpus, LdaParams};
    use alloc::vec;

    fn words(ws: &[&str]) -> Vec<String> {
        ws.iter().map(|s| String::from(*s)).collect()
    }

    #[test]
    fn top_words_tie_break() {
        let m = TopicModel::from_parts(
            words(&["wash", "mask", "home"]),
            vec![vec![0.4, 0.4, 0.2]],
            vec![vec![1.0]],
            1.0,
            0.01,
            0,
            0,
        )
        .unwrap();
        let top: Vec<&str> = m.top_words(0, 1).into_iter().map(|(w, _)| w).collect();
        assert_eq!(top, ["mask"]);
        let all: Vec<&str> = m.top_words(0, 10).into_iter().map(|(w, _)| w).collect();
        assert_eq!(all, ["mask", "wash", "home"]);
    }

    #[test]
    fn most_frequent_stem_tops_single_topic() {
        let c = Corpus::from_words(&[vec!["covid", "mask", "covid"], vec!["covid", "home"]]);
        let m = fit_lda(&c, LdaParams::new(1, 0).with_iterations(3)).unwrap();
        assert_eq!(m.top_words(0, 1)[0].0, "covid");
    }

    #[test]
    fn from_parts_rejects_bad_rows() {
        let r = TopicModel::from_parts(words(&["a", "b"]), vec![vec![0.7, 0.7]], vec![], 1.0, 1.0, 0, 0);
        assert_eq!(r, Err(LdaError::NotNormalized { matrix: "phi", row: 0 }));
        let r = TopicModel::from_parts(words(&["a"]), vec![vec![1.0]], vec![vec![0.5, 0.5]], 1.0, 1.0, 0, 0);
        assert!(matches!(r, Err(LdaError::Shape(_))));
    }
}
