use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{rng_for, Corpus, LdaError, Stream, TopicModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerplexityReport {
    pub perplexity: f64,
    /// completion tokens that contributed to the score
    pub scored_tokens: usize,
    /// held-out tokens missing from the model vocabulary
    pub skipped_tokens: usize,
}

/// Held-out document in model vocabulary indices.
pub(crate) struct CompletionDoc<'a> {
    pub observed: &'a [u32],
    pub completion: &'a [u32],
}

/// Gibbs fold-in of one document's observed tokens with phi frozen. Theta
/// is averaged over the sweeps of the second half of the run; the first
/// half is burn-in.
fn fold_in(model: &TopicModel, observed: &[u32], iterations: u32, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let k = model.topics();
    let alpha = model.alpha();
    let denom = observed.len() as f64 + k as f64 * alpha;
    let mut counts = vec![0u32; k];
    let mut z: Vec<usize> = Vec::with_capacity(observed.len());
    for _ in observed {
        let t = rng.random_range(0..k);
        counts[t] += 1;
        z.push(t);
    }
    if k == 1 || observed.is_empty() {
        return counts.iter().map(|&c| (f64::from(c) + alpha) / denom).collect();
    }
    let burn_in = iterations / 2;
    let mut theta = vec![0.0; k];
    let mut cumulative = vec![0.0; k];
    for sweep in 0..iterations {
        for (i, &w) in observed.iter().enumerate() {
            counts[z[i]] -= 1;
            let mut total = 0.0;
            for t in 0..k {
                total += (f64::from(counts[t]) + alpha) * model.phi(t)[w as usize];
                cumulative[t] = total;
            }
            let u = rng.random::<f64>() * total;
            let new = cumulative.iter().position(|&c| u < c).unwrap_or(k - 1);
            counts[new] += 1;
            z[i] = new;
        }
        if sweep >= burn_in {
            for (th, &c) in theta.iter_mut().zip(&counts) {
                *th += (f64::from(c) + alpha) / denom;
            }
        }
    }
    let samples = f64::from(iterations - burn_in);
    theta.iter_mut().for_each(|th| *th /= samples);
    theta
}

/// Sum of log p(w | d) over completion tokens, and the token count.
pub(crate) fn completion_log_likelihood<'a, I>(
    model: &TopicModel,
    docs: I,
    fold_in_iterations: u32,
    rng: &mut ChaCha8Rng,
) -> (f64, usize)
where
    I: IntoIterator<Item = CompletionDoc<'a>>,
{
    let mut log_sum = 0.0;
    let mut n = 0;
    for doc in docs {
        if doc.completion.is_empty() {
            continue;
        }
        let theta = fold_in(model, doc.observed, fold_in_iterations, rng);
        for &w in doc.completion {
            let p: f64 = theta
                .iter()
                .enumerate()
                .map(|(t, th)| th * model.phi(t)[w as usize])
                .sum();
            log_sum += libm::log(p);
            n += 1;
        }
    }
    (log_sum, n)
}

pub(crate) fn perplexity_from(log_sum: f64, n: usize) -> Result<f64, LdaError> {
    if n == 0 {
        return Err(LdaError::NoScoredTokens);
    }
    Ok(libm::exp(-log_sum / n as f64))
}

/// Document-completion perplexity. Each held-out document is split by token
/// position: even positions are folded in to estimate theta, odd positions
/// are scored. Words outside the model vocabulary are skipped, counted, and
/// do not take up a position.
pub fn perplexity(
    model: &TopicModel,
    heldout: &Corpus,
    fold_in_iterations: u32,
    seed: u64,
) -> Result<PerplexityReport, LdaError> {
    if fold_in_iterations == 0 {
        return Err(LdaError::ZeroIterations);
    }
    let model_index: BTreeMap<&str, u32> =
        model.vocab().iter().enumerate().map(|(i, w)| (w.as_str(), i as u32)).collect();
    let remap: Vec<Option<u32>> = heldout.vocab().iter().map(|w| model_index.get(w.as_str()).copied()).collect();
    let mut skipped = 0;
    let mut halves: Vec<(Vec<u32>, Vec<u32>)> = Vec::with_capacity(heldout.num_docs());
    for doc in heldout.docs() {
        let mut observed = Vec::new();
        let mut completion = Vec::new();
        for &w in doc {
            let Some(m) = remap[w as usize] else {
                skipped += 1;
                continue;
            };
            if observed.len() == completion.len() {
                observed.push(m);
            } else {
                completion.push(m);
            }
        }
        halves.push((observed, completion));
    }
    let mut rng = rng_for(seed, Stream::FoldIn);
    let docs = halves.iter().map(|(o, c)| CompletionDoc { observed: o, completion: c });
    let (log_sum, n) = completion_log_likelihood(model, docs, fold_in_iterations, &mut rng);
    Ok(PerplexityReport {
        perplexity: perplexity_from(log_sum, n)?,
        scored_tokens: n,
        skipped_tokens: skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn words(ws: &[&str]) -> Vec<String> {
        ws.iter().map(|s| String::from(*s)).collect()
    }

    #[test]
    fn uniform_four_words() {
        let m = TopicModel::from_parts(words(&["a", "b", "c", "d"]), vec![vec![0.25; 4]], vec![], 0.1, 0.01, 0, 0)
            .unwrap();
        let held = Corpus::from_words(&[vec!["a", "b", "c", "d", "d", "a"], vec!["c", "b"]]);
        let r = perplexity(&m, &held, 10, 1).unwrap();
        assert!((r.perplexity - 4.0).abs() < 1e-12);
        assert_eq!((r.scored_tokens, r.skipped_tokens), (4, 0));
    }

    #[test]
    fn two_tokens_at_one_half() {
        let m = TopicModel::from_parts(words(&["x", "y"]), vec![vec![0.5, 0.5]], vec![], 1.0, 0.01, 0, 0).unwrap();
        let held = Corpus::from_words(&[vec!["x", "y"], vec!["y", "x"]]);
        let r = perplexity(&m, &held, 5, 0).unwrap();
        assert_eq!(r.scored_tokens, 2);
        assert!((r.perplexity - 2.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_words_skipped() {
        let m = TopicModel::from_parts(words(&["a", "b"]), vec![vec![0.5, 0.5]], vec![], 1.0, 0.01, 0, 0).unwrap();
        let held = Corpus::from_words(&[vec!["a", "zzz", "b", "qqq", "a"]]);
        let r = perplexity(&m, &held, 5, 0).unwrap();
        assert_eq!(r.skipped_tokens, 2);
        assert_eq!(r.scored_tokens, 1);
    }

    #[test]
    fn nothing_to_score() {
        let m = TopicModel::from_parts(words(&["a"]), vec![vec![1.0]], vec![], 1.0, 0.01, 0, 0).unwrap();
        let held = Corpus::from_words(&[vec!["a"]]);
        assert_eq!(perplexity(&m, &held, 5, 0), Err(LdaError::NoScoredTokens));
        assert_eq!(perplexity(&m, &held, 0, 0), Err(LdaError::ZeroIterations));
    }
}
