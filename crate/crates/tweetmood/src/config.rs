//! TOML run configuration.
//!
//! Relative input paths resolve against the directory holding the config
//! file. The output directory is not part of the configuration echo written
//! to the manifest, so the same run written to two places is byte-identical.

use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use tweetmood_core::lda::{AlphaPrior, CorpusMode, SelectionConfig};
use tweetmood_core::{CountryCode, SeriesStat, StudyWindow};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{}: {message}", path.display())]
    Syntax { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    pub archive: PathBuf,
    pub afinn: PathBuf,
    pub emolex: PathBuf,
    pub gazetteer: PathBuf,
    pub country_boxes: PathBuf,
    pub stopwords: PathBuf,
    pub lemmas: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub events: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub start: NaiveDate,
    pub weeks: u32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatSetting {
    #[default]
    Mean,
    Sum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportConfig {
    #[serde(default)]
    pub regions: Vec<String>,
    #[serde(default)]
    pub sentiment_stat: StatSetting,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self { regions: Vec::new(), sentiment_stat: StatSetting::Mean }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSetting {
    #[default]
    WeeklyPooled,
    PerTweet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LdaConfig {
    pub mode: ModeSetting,
    pub candidates: Vec<usize>,
    /// fixed document-topic prior; when absent alpha = alpha_total / K
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub alpha_total: f64,
    pub beta: f64,
    pub iterations: u32,
    pub fold_in_iterations: u32,
    pub holdout_fraction: f64,
    pub min_count: u32,
    pub top_words: usize,
}

impl Default for LdaConfig {
    fn default() -> Self {
        Self {
            mode: ModeSetting::WeeklyPooled,
            candidates: (2..=10).collect(),
            alpha: None,
            alpha_total: 50.0,
            beta: 0.01,
            iterations: 1000,
            fold_in_iterations: 50,
            holdout_fraction: 0.1,
            min_count: 2,
            top_words: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    #[serde(default, skip_serializing)]
    pub out_dir: Option<PathBuf>,
    pub inputs: Inputs,
    pub window: WindowConfig,
    #[serde(default)]
    pub report: ReportConfig,
    #[serde(default)]
    pub lda: LdaConfig,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

/// Checked, typed view of a [`RunConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub window: StudyWindow,
    pub regions: Vec<CountryCode>,
    pub stat: SeriesStat,
    pub mode: CorpusMode,
    pub candidates: Vec<usize>,
    pub selection: SelectionConfig,
    pub min_count: u32,
    pub top_words: usize,
}

impl RunConfig {
    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self, String> {
        let mut cfg: RunConfig = toml::from_str(text).map_err(|e| e.to_string())?;
        cfg.base_dir = base_dir.to_path_buf();
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::from_toml(&text, base).map_err(|message| ConfigError::Syntax { path: path.into(), message })
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        self.base_dir.join(p)
    }

    /// Every input file as (name, resolved path).
    pub fn input_files(&self) -> Vec<(&'static str, PathBuf)> {
        let i = &self.inputs;
        let mut files = vec![
            ("archive", self.resolve(&i.archive)),
            ("afinn", self.resolve(&i.afinn)),
            ("emolex", self.resolve(&i.emolex)),
            ("gazetteer", self.resolve(&i.gazetteer)),
            ("country_boxes", self.resolve(&i.country_boxes)),
            ("stopwords", self.resolve(&i.stopwords)),
            ("lemmas", self.resolve(&i.lemmas)),
        ];
        if let Some(e) = &i.events {
            files.push(("events", self.resolve(e)));
        }
        files
    }

    pub fn out_dir(&self) -> Option<PathBuf> {
        self.out_dir.as_ref().map(|p| self.resolve(p))
    }

    /// Check values and that every input file exists.
    pub fn validate(&self) -> Result<Settings, ConfigError> {
        let bad = |m: String| ConfigError::Invalid(m);
        for (name, path) in self.input_files() {
            if !path.is_file() {
                return Err(bad(format!("input {name} not found: {}", path.display())));
            }
        }
        let window =
            StudyWindow::new(self.window.start, self.window.weeks).map_err(|e| bad(format!("window: {e}")))?;
        let mut regions: Vec<CountryCode> = Vec::new();
        for r in &self.report.regions {
            let code: CountryCode = r.parse().map_err(|e| bad(format!("report.regions: {e}")))?;
            if regions.contains(&code) {
                return Err(bad(format!("report.regions lists {code} twice")));
            }
            regions.push(code);
        }
        let lda = &self.lda;
        if lda.candidates.is_empty() || lda.candidates.windows(2).any(|w| w[0] >= w[1]) || lda.candidates[0] == 0 {
            return Err(bad("lda.candidates must be positive and strictly ascending".into()));
        }
        let alpha = match lda.alpha {
            Some(a) => AlphaPrior::Fixed(a),
            None => AlphaPrior::Scaled(lda.alpha_total),
        };
        for (name, v) in [("alpha", lda.alpha.unwrap_or(1.0)), ("alpha_total", lda.alpha_total), ("beta", lda.beta)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(bad(format!("lda.{name} must be positive, got {v}")));
            }
        }
        if lda.iterations == 0 || lda.fold_in_iterations == 0 {
            return Err(bad("lda.iterations and lda.fold_in_iterations must be at least 1".into()));
        }
        if !(lda.holdout_fraction > 0.0 && lda.holdout_fraction < 1.0) {
            return Err(bad(format!("lda.holdout_fraction must lie in (0, 1), got {}", lda.holdout_fraction)));
        }
        if lda.top_words == 0 {
            return Err(bad("lda.top_words must be at least 1".into()));
        }
        let selection = SelectionConfig {
            alpha,
            beta: lda.beta,
            iterations: lda.iterations,
            fold_in_iterations: lda.fold_in_iterations,
            holdout_fraction: lda.holdout_fraction,
            seed: self.seed,
        };
        Ok(Settings {
            window,
            regions,
            stat: match self.report.sentiment_stat {
                StatSetting::Mean => SeriesStat::Mean,
                StatSetting::Sum => SeriesStat::Sum,
            },
            mode: match lda.mode {
                ModeSetting::WeeklyPooled => CorpusMode::WeeklyPooled,
                ModeSetting::PerTweet => CorpusMode::PerTweet,
            },
            candidates: lda.candidates.clone(),
            selection,
            min_count: lda.min_count,
            top_words: lda.top_words,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
seed = 7

[inputs]
archive = "tweets.jsonl"
afinn = "afinn.tsv"
emolex = "emolex.tsv"
gazetteer = "gazetteer.tsv"
country_boxes = "boxes.tsv"
stopwords = "stop.txt"
lemmas = "lemmas.tsv"

[window]
start = "2020-03-12"
weeks = 13
"#;

    #[test]
    fn defaults_fill_in() {
        let cfg = RunConfig::from_toml(MINIMAL, Path::new("/data")).unwrap();
        assert_eq!(cfg.lda, LdaConfig::default());
        assert_eq!(cfg.report.sentiment_stat, StatSetting::Mean);
        assert_eq!(cfg.resolve(&cfg.inputs.archive), Path::new("/data/tweets.jsonl"));
        assert!(cfg.out_dir().is_none());
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = format!("{MINIMAL}\n[lda]\niterashuns = 5\n");
        assert!(RunConfig::from_toml(&text, Path::new("")).unwrap_err().contains("iterashuns"));
    }

    #[test]
    fn missing_files_fail_validation() {
        let cfg = RunConfig::from_toml(MINIMAL, Path::new("/nonexistent")).unwrap();
        let e = cfg.validate().unwrap_err().to_string();
        assert!(e.contains("archive"), "{e}");
    }

    #[test]
    fn echo_omits_out_dir() {
        let text = format!("out_dir = \"out\"\n{MINIMAL}");
        let cfg = RunConfig::from_toml(&text, Path::new("")).unwrap();
        assert_eq!(cfg.out_dir.as_deref(), Some(Path::new("out")));
        let echo = serde_json::to_string(&cfg).unwrap();
        assert!(!echo.contains("out_dir") && !echo.contains("base_dir"), "{echo}");
    }
}
