//! Batch run: ingest, resolve locations, preprocess, score, tally emotions,
//! fit topics. Every output is built in memory first and only then written.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use chrono::NaiveDate;
use tweetmood_core::lda::{
    build_corpus, choose_topic_count, fit_lda, score_candidate, split_holdout, CandidateScore, Corpus, CorpusMode,
    CorpusOptions, LdaError, TopicModel,
};
use tweetmood_core::sentiment::accumulate_days;
use tweetmood_core::{
    lookup, resolve_location, score_tweet, tally_emotions, weekly_emotion_proportions, AfinnLexicon, EmoLexicon,
    EmotionTally, Gazetteer, GeoLocation, GeoSource, MatchKind, Polarity, Preprocessor, Region, TokenizedDoc,
};

use crate::config::{RunConfig, Settings};
use crate::formats::{self, Event, IndexRow, LoadError, WeekTopics};
use crate::ingest::{read_archive, IngestError};
use crate::manifest::{
    CandidateEntry, EmotionSection, GeoSection, IngestSection, LexiconHits, Manifest, SentimentSection, TopicSection,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Ingest,
    Score,
    Emotions,
    Topics,
    All,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Ingest => "ingest",
            Stage::Score => "score",
            Stage::Emotions => "emotions",
            Stage::Topics => "topics",
            Stage::All => "all",
        }
    }

    fn runs(self, part: Stage) -> bool {
        self == Stage::All || self == part
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [Stage::Ingest, Stage::Score, Stage::Emotions, Stage::Topics, Stage::All]
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| format!("unknown stage {s:?} (expected ingest, score, emotions, topics or all)"))
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// bad configuration or input data
    Validation,
    /// IO failure or a computation that could not complete
    Runtime,
}

#[derive(Debug, thiserror::Error)]
#[error("{stage}: {message}")]
pub struct RunError {
    pub stage: &'static str,
    pub class: ErrorClass,
    pub message: String,
}

impl RunError {
    pub fn validation(stage: &'static str, message: impl Into<String>) -> Self {
        Self { stage, class: ErrorClass::Validation, message: message.into() }
    }

    pub fn runtime(stage: &'static str, message: impl Into<String>) -> Self {
        Self { stage, class: ErrorClass::Runtime, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self.class {
            ErrorClass::Validation => 1,
            ErrorClass::Runtime => 2,
        }
    }
}

fn load_error(e: LoadError) -> RunError {
    match e {
        LoadError::Io { .. } => RunError::runtime("load", e.to_string()),
        LoadError::Parse { .. } => RunError::validation("load", e.to_string()),
    }
}

/// Lexicons, gazetteer, text rules and events read from the configured files.
#[derive(Debug, Clone)]
pub struct Resources {
    pub afinn: AfinnLexicon,
    pub emolex: EmoLexicon,
    pub gazetteer: Gazetteer,
    pub preprocessor: Preprocessor,
    pub events: Option<Vec<Event>>,
}

impl Resources {
    pub fn load(cfg: &RunConfig) -> Result<Self, RunError> {
        let i = &cfg.inputs;
        let afinn = formats::load(&cfg.resolve(&i.afinn), formats::parse_afinn).map_err(load_error)?;
        let emolex = formats::load(&cfg.resolve(&i.emolex), formats::parse_emolex).map_err(load_error)?;
        let mut gazetteer = Gazetteer::new();
        formats::load(&cfg.resolve(&i.gazetteer), |t| formats::parse_place_names(t, &mut gazetteer))
            .map_err(load_error)?;
        formats::load(&cfg.resolve(&i.country_boxes), |t| formats::parse_country_boxes(t, &mut gazetteer))
            .map_err(load_error)?;
        let stopwords = formats::load(&cfg.resolve(&i.stopwords), |t| Ok(formats::parse_stopwords(t))).map_err(load_error)?;
        let lemmas = formats::load(&cfg.resolve(&i.lemmas), formats::parse_lemmas).map_err(load_error)?;
        let events = match &i.events {
            Some(p) => Some(formats::load(&cfg.resolve(p), formats::parse_events).map_err(load_error)?),
            None => None,
        };
        Ok(Self {
            afinn,
            emolex,
            gazetteer,
            preprocessor: Preprocessor::new(stopwords).with_lemmas(lemmas),
            events,
        })
    }
}

/// Run `f` over `items` on all available cores. Output order matches input
/// order regardless of scheduling.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    const BLOCK: usize = 256;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let blocks = items.len().div_ceil(BLOCK);
    if workers <= 1 || blocks <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let done: Mutex<Vec<(usize, Vec<R>)>> = Mutex::new(Vec::with_capacity(blocks));
    std::thread::scope(|s| {
        for _ in 0..workers.min(blocks) {
            s.spawn(|| loop {
                let b = next.fetch_add(1, Ordering::Relaxed);
                if b >= blocks {
                    break;
                }
                let chunk = &items[b * BLOCK..((b + 1) * BLOCK).min(items.len())];
                let out: Vec<R> = chunk.iter().map(&f).collect();
                done.lock().expect("no worker panicked").push((b, out));
            });
        }
    });
    let mut done = done.into_inner().expect("no worker panicked");
    done.sort_by_key(|(b, _)| *b);
    done.into_iter().flat_map(|(_, v)| v).collect()
}

/// Like [`parallel_map`] with one task per item, for a few expensive items.
fn parallel_each<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len());
    if workers <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                *slots[i].lock().expect("no worker panicked") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("no worker panicked").expect("every slot filled"))
        .collect()
}

/// An in-window tweet after location inference and preprocessing.
#[derive(Debug, Clone)]
struct Analyzed {
    date: NaiveDate,
    week: u32,
    location: Option<GeoLocation>,
    doc: TokenizedDoc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputFile {
    pub name: &'static str,
    pub contents: String,
}

/// All report files of one run, in write order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Bundle {
    pub files: Vec<OutputFile>,
}

impl Bundle {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|f| f.name == name).map(|f| f.contents.as_str())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.files.iter().map(|f| f.name).collect()
    }

    fn push(&mut self, name: &'static str, contents: String) {
        self.files.push(OutputFile { name, contents });
    }

    /// Write every file to `dir`. Files are staged under temporary names and
    /// renamed at the end; on failure everything written so far is removed.
    pub fn write_to(&self, dir: &Path) -> Result<(), RunError> {
        let fail = |what: &str, path: &Path, e: std::io::Error| {
            RunError::runtime("write", format!("{what} {}: {e}", path.display()))
        };
        fs::create_dir_all(dir).map_err(|e| fail("cannot create", dir, e))?;
        let mut staged: Vec<(PathBuf, PathBuf)> = Vec::new();
        let cleanup = |paths: &mut dyn Iterator<Item = &PathBuf>| {
            for p in paths {
                let _ = fs::remove_file(p);
            }
        };
        for f in &self.files {
            let tmp = dir.join(format!(".{}.partial", f.name));
            if let Err(e) = fs::write(&tmp, &f.contents) {
                cleanup(&mut staged.iter().map(|(t, _)| t).chain([&tmp]));
                return Err(fail("cannot write", &tmp, e));
            }
            staged.push((tmp, dir.join(f.name)));
        }
        for (i, (tmp, dest)) in staged.iter().enumerate() {
            if let Err(e) = fs::rename(tmp, dest) {
                cleanup(&mut staged[..i].iter().map(|(_, d)| d).chain(staged[i..].iter().map(|(t, _)| t)));
                return Err(fail("cannot move into place", dest, e));
            }
        }
        Ok(())
    }
}

pub const TWEETS_INDEX: &str = "tweets_index.csv";
pub const SENTIMENT_DAILY: &str = "sentiment_daily.csv";
pub const SENTIMENT_ANNOTATED: &str = "sentiment_daily_annotated.csv";
pub const EMOTIONS_WEEKLY: &str = "emotions_weekly.csv";
pub const TOPICS_REPORT: &str = "topics_report.csv";
pub const TOPIC_WEIGHTS: &str = "topic_weights.csv";
pub const TOPIC_MODEL: &str = "topic_model.txt";
pub const MANIFEST: &str = "run_manifest.json";

fn rate(part: u64, whole: u64) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 / whole as f64
    }
}

fn ingest(cfg: &RunConfig, settings: &Settings, res: &Resources) -> Result<(Vec<Analyzed>, IngestSection, GeoSection), RunError> {
    let path = cfg.resolve(&cfg.inputs.archive);
    let file = fs::File::open(&path).map_err(|e| RunError::runtime("ingest", format!("{}: {e}", path.display())))?;
    let dedup = read_archive(BufReader::new(file)).map_err(|e| match e {
        IngestError::Io(_) => RunError::runtime("ingest", format!("{}: {e}", path.display())),
        _ => RunError::validation("ingest", format!("{}: {e}", path.display())),
    })?;
    let (tweets, stats) = dedup.finish();
    let window = &settings.window;
    let in_window: Vec<_> = tweets
        .iter()
        .filter_map(|t| window.week_of_date(t.created_at.date_naive()).week().map(|w| (t, w)))
        .collect();
    let out_of_window = tweets.len() - in_window.len();
    if in_window.is_empty() {
        let detail = if tweets.is_empty() { String::new() } else { format!(" ({out_of_window} tweets outside the study window)") };
        return Err(RunError::validation("ingest", format!("empty corpus{detail}")));
    }
    let analyzed: Vec<Analyzed> = parallel_map(&in_window, |(t, week)| Analyzed {
        date: t.created_at.date_naive(),
        week: *week,
        location: resolve_location(t, &res.gazetteer),
        doc: res.preprocessor.process_tweet(&t.id, &t.text),
    });

    let mut geo = GeoSection::default();
    for a in &analyzed {
        match a.location {
            None => geo.unresolved += 1,
            Some(l) => {
                geo.resolved += 1;
                match l.source {
                    GeoSource::Gps => geo.by_source.gps += 1,
                    GeoSource::Place => geo.by_source.place += 1,
                    GeoSource::Profile => geo.by_source.profile += 1,
                }
                *geo.by_country.entry(l.country.to_string()).or_default() += 1;
            }
        }
    }
    geo.resolution_rate = rate(geo.resolved, analyzed.len() as u64);
    let section = IngestSection {
        ingested: stats.ingested,
        kept: stats.kept,
        duplicates: stats.duplicates,
        non_english: stats.non_english,
        out_of_window: out_of_window as u64,
        analyzed: analyzed.len() as u64,
    };
    Ok((analyzed, section, geo))
}

fn index_csv(analyzed: &[Analyzed]) -> String {
    let rows: Vec<IndexRow<'_>> = analyzed
        .iter()
        .map(|a| IndexRow { id: &a.doc.tweet_id, date: a.date, week: a.week, location: a.location })
        .collect();
    formats::tweets_index_csv(&rows)
}

fn sentiment(
    settings: &Settings,
    res: &Resources,
    analyzed: &[Analyzed],
    bundle: &mut Bundle,
    warnings: &mut Vec<String>,
) -> Result<SentimentSection, RunError> {
    let mut hits = LexiconHits::default();
    let mut section = SentimentSection { stat: settings.stat.as_str(), ..Default::default() };
    let mut scores = Vec::with_capacity(analyzed.len());
    for a in analyzed {
        let r = score_tweet(&a.doc, &res.afinn);
        for (surface, stem) in a.doc.tokens() {
            hits.count(lookup(&res.afinn, surface, stem).map(|m| m.kind));
        }
        match r.polarity {
            Polarity::Positive => section.positive += 1,
            Polarity::Negative => section.negative += 1,
            Polarity::Neutral => section.neutral += 1,
        }
        scores.push((a.date, r.score));
    }
    hits.finish();
    section.afinn = hits;
    let days = accumulate_days(scores);
    let series = tweetmood_core::sentiment::series_from_days(&days, settings.stat);
    section.days = series.len() as u64;
    let csv = formats::sentiment_csv(&series);
    if let Some(events) = &res.events {
        let annotated = formats::annotate_series(&csv, events)
            .map_err(|e| RunError::runtime("score", format!("annotating series: {e}")))?;
        for e in &annotated.unmatched {
            warnings.push(format!("event {} {:?} matches no date in the sentiment series", e.date, e.label));
        }
        bundle.push(SENTIMENT_DAILY, csv);
        bundle.push(SENTIMENT_ANNOTATED, annotated.csv);
    } else {
        bundle.push(SENTIMENT_DAILY, csv);
    }
    Ok(section)
}

fn emotions(settings: &Settings, res: &Resources, analyzed: &[Analyzed], bundle: &mut Bundle, warnings: &mut Vec<String>) -> EmotionSection {
    let mut hits = LexiconHits::default();
    let mut cells: BTreeMap<(u32, Region), EmotionTally> = BTreeMap::new();
    for a in analyzed {
        for (surface, stem) in a.doc.tokens() {
            hits.count(lookup(&res.emolex, surface, stem).map(|m| m.kind));
        }
        let tally = tally_emotions(&a.doc, &res.emolex);
        *cells.entry((a.week, Region::Global)).or_default() += tally;
        if let Some(l) = a.location.filter(|l| settings.regions.contains(&l.country)) {
            *cells.entry((a.week, Region::Country(l.country))).or_default() += tally;
        }
    }
    hits.finish();
    let rows = weekly_emotion_proportions(&cells);
    for code in &settings.regions {
        if !rows.iter().any(|r| r.region == Region::Country(*code)) {
            warnings.push(format!("region {code} has no tweets with emotion words"));
        }
    }
    bundle.push(EMOTIONS_WEEKLY, formats::emotions_csv(&rows, &settings.window, &settings.regions));
    EmotionSection { emolex: hits, cells: rows.len() as u64 }
}

fn lda_error(e: LdaError) -> RunError {
    match e {
        LdaError::EmptyCorpus => RunError::validation("topics", "empty corpus after min_count filtering"),
        LdaError::BadCandidates => RunError::validation("topics", e.to_string()),
        other => RunError::runtime("topics", other.to_string()),
    }
}

/// Topic mixture per study week: the mean theta over that week's non-empty
/// documents. Weeks without tokens are left out.
fn week_topics(model: &TopicModel, corpus: &Corpus) -> Vec<WeekTopics> {
    let mut sums: BTreeMap<u32, (Vec<f64>, u32)> = BTreeMap::new();
    for (d, (doc, &week)) in corpus.docs().iter().zip(corpus.doc_weeks()).enumerate() {
        if doc.is_empty() {
            continue;
        }
        let entry = sums.entry(week).or_insert_with(|| (vec![0.0; model.topics()], 0));
        for (s, t) in entry.0.iter_mut().zip(model.theta(d)) {
            *s += t;
        }
        entry.1 += 1;
    }
    sums.into_iter()
        .map(|(week, (s, n))| WeekTopics { week, weights: s.into_iter().map(|x| x / f64::from(n)).collect() })
        .collect()
}

fn topics(settings: &Settings, analyzed: &[Analyzed], bundle: &mut Bundle, warnings: &mut Vec<String>) -> Result<TopicSection, RunError> {
    let opts = CorpusOptions { mode: settings.mode, min_count: settings.min_count, num_weeks: settings.window.num_weeks() };
    let corpus = build_corpus(analyzed.iter().map(|a| (a.week, &a.doc)), &opts).map_err(lda_error)?;
    let all_stems: usize = analyzed.iter().map(|a| a.doc.len()).sum();
    let cfg = &settings.selection;
    let split = split_holdout(&corpus, cfg.holdout_fraction, cfg.seed).map_err(lda_error)?;
    let scores: Vec<CandidateScore> = parallel_each(&settings.candidates, |&k| CandidateScore {
        topics: k,
        outcome: score_candidate(&split, k, cfg),
    });
    let mut entries = Vec::with_capacity(scores.len());
    for s in &scores {
        let entry = match &s.outcome {
            Ok(r) => CandidateEntry {
                topics: s.topics,
                perplexity: Some(r.perplexity),
                scored_tokens: r.scored_tokens as u64,
                skipped_tokens: r.skipped_tokens as u64,
                error: None,
            },
            Err(e) => {
                warnings.push(format!("topic count {} failed: {e}", s.topics));
                CandidateEntry { topics: s.topics, perplexity: None, scored_tokens: 0, skipped_tokens: 0, error: Some(e.to_string()) }
            }
        };
        entries.push(entry);
    }
    let best = choose_topic_count(&scores).map_err(lda_error)?;
    let params = cfg.params(best);
    let model = fit_lda(&corpus, params).map_err(lda_error)?;
    let weeks = week_topics(&model, &corpus);
    bundle.push(TOPICS_REPORT, formats::topics_report_csv(&model, &weeks, &settings.window, settings.top_words));
    bundle.push(TOPIC_WEIGHTS, formats::topic_weights_csv(&weeks, &settings.window));
    bundle.push(TOPIC_MODEL, formats::model_text(&model));
    Ok(TopicSection {
        mode: match settings.mode {
            CorpusMode::WeeklyPooled => "weekly_pooled",
            CorpusMode::PerTweet => "per_tweet",
        },
        documents: corpus.num_docs() as u64,
        vocabulary: corpus.vocab().len() as u64,
        tokens: corpus.num_tokens() as u64,
        below_min_count_tokens: (all_stems - corpus.num_tokens()) as u64,
        heldout_tokens: split.heldout.iter().map(Vec::len).sum::<usize>() as u64,
        selected_topics: best,
        alpha: params.alpha,
        beta: params.beta,
        iterations: params.iterations,
        candidates: entries,
    })
}

/// Validate `cfg`, load its inputs and compute the outputs of `stage`
/// without touching the file system beyond reading.
pub fn build_bundle(cfg: &RunConfig, stage: Stage) -> Result<Bundle, RunError> {
    let settings = cfg.validate().map_err(|e| RunError::validation("config", e.to_string()))?;
    let res = Resources::load(cfg)?;
    let (analyzed, ingest_section, geo) = ingest(cfg, &settings, &res)?;

    let mut bundle = Bundle::default();
    let mut warnings = Vec::new();
    if stage.runs(Stage::Ingest) {
        bundle.push(TWEETS_INDEX, index_csv(&analyzed));
    }
    let sentiment_section = if stage.runs(Stage::Score) {
        Some(sentiment(&settings, &res, &analyzed, &mut bundle, &mut warnings)?)
    } else {
        None
    };
    let emotion_section =
        stage.runs(Stage::Emotions).then(|| emotions(&settings, &res, &analyzed, &mut bundle, &mut warnings));
    let topic_section = if stage.runs(Stage::Topics) {
        Some(topics(&settings, &analyzed, &mut bundle, &mut warnings)?)
    } else {
        None
    };

    let mut outputs = bundle.names();
    outputs.push(MANIFEST);
    let manifest = Manifest {
        tool: "tweetmood",
        version: env!("CARGO_PKG_VERSION"),
        stage: stage.as_str(),
        seed: cfg.seed,
        config: cfg,
        ingest: ingest_section,
        geolocation: geo,
        sentiment: sentiment_section,
        emotions: emotion_section,
        topics: topic_section,
        outputs,
        warnings,
    };
    bundle.push(MANIFEST, manifest.to_json());
    Ok(bundle)
}

/// [`build_bundle`] followed by writing the files into `out_dir`.
pub fn run_pipeline(cfg: &RunConfig, stage: Stage, out_dir: &Path) -> Result<Bundle, RunError> {
    let bundle = build_bundle(cfg, stage)?;
    bundle.write_to(out_dir)?;
    Ok(bundle)
}

impl LexiconHits {
    fn count(&mut self, m: Option<MatchKind>) {
        self.tokens += 1;
        match m {
            Some(MatchKind::Surface) => self.surface_hits += 1,
            Some(MatchKind::Stem) => self.stem_hits += 1,
            None => {}
        }
    }

    fn finish(&mut self) {
        self.hit_rate = rate(self.surface_hits + self.stem_hits, self.tokens);
    }
}
