#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use chrono::{Duration, TimeZone, Utc};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tweetmood::tweet_record;
use tweetmood_core::{GeoPoint, Tweet};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

const POSITIVE: &[&str] = &[
    "grateful for the frontline heroes",
    "stay safe and healthy everyone",
    "so happy to see friends again",
    "hope things get better soon",
    "love this community spirit",
    "proud of our nurses and doctors",
    "good news on recovery numbers",
    "thankful for the volunteers delivering food",
];

const NEGATIVE: &[&str] = &[
    "scared about the virus spreading",
    "lockdown is terrible and boring",
    "so angry at the panic buying",
    "sad news about more deaths",
    "worried about losing my job",
    "the crisis keeps getting worse",
    "furious about the protests and violence",
    "lonely and anxious at home",
];

const TOPICAL: &[&str] = &[
    "wash your hands",
    "wear a mask outside",
    "circuit breaker measures extended",
    "working from home today",
    "schools closed again",
    "vaccine research progress",
    "testing capacity increases",
    "social distancing in parks",
    "hawker centres reopen for takeaway",
    "road map for easing lockdown",
];

const HASHTAGS: &[&str] = &["#covid19", "#StaySafe", "#CircuitBreaker", "#lockdown", "#coronavirus", "#NHS"];

const PROFILES: &[&str] = &["London, UK", "Singapore", "Manchester", "Tampines, SG", "New York, USA", "somewhere", "Paris, Texas"];

/// Synthetic archive of `n` JSON lines: mixed sentiment, GPS/place/profile
/// metadata, a few non-English records, duplicates and dates on both sides
/// of the study window starting 2020-03-12.
pub fn generate_archive(n: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Utc.with_ymd_and_hms(2020, 3, 5, 0, 0, 0).unwrap();
    let mut lines = Vec::with_capacity(n);
    let mut ids: Vec<String> = Vec::new();
    for i in 0..n {
        let id = if i > 10 && rng.random_bool(0.03) {
            ids.choose(&mut rng).unwrap().clone()
        } else {
            format!("{}", 1_000_000 + i)
        };
        ids.push(id.clone());
        let created = start + Duration::seconds(rng.random_range(0..(104 * 86_400)));
        let mut parts: Vec<String> = Vec::new();
        let mood = if rng.random_bool(0.5) { POSITIVE } else { NEGATIVE };
        parts.push(mood.choose(&mut rng).unwrap().to_string());
        parts.push(TOPICAL.choose(&mut rng).unwrap().to_string());
        if rng.random_bool(0.4) {
            parts.push(TOPICAL.choose(&mut rng).unwrap().to_string());
        }
        parts.push(HASHTAGS.choose(&mut rng).unwrap().to_string());
        if rng.random_bool(0.3) {
            parts.push(format!("https://t.co/{}", rng.random_range(1000..9999)));
        }
        if rng.random_bool(0.2) {
            parts.insert(0, "@someone".into());
        }
        let mut t = Tweet::new(id, created, parts.join(" ")).unwrap();
        match rng.random_range(0..10) {
            0..=2 => {
                let (lat, lon) = if rng.random_bool(0.5) {
                    (rng.random_range(1.25..1.42), rng.random_range(103.7..104.0))
                } else {
                    (rng.random_range(51.3..53.5), rng.random_range(-2.5..0.2))
                };
                t.gps = Some(GeoPoint::new(lat, lon).unwrap());
            }
            3..=4 => t.place_country = Some(["SG", "GB", "US"].choose(&mut rng).unwrap().parse().unwrap()),
            5..=8 => t.profile_location = Some(PROFILES.choose(&mut rng).unwrap().to_string()),
            _ => {}
        }
        t.lang = match rng.random_range(0..20) {
            0 => Some("es".into()),
            1..=3 => None,
            4 => Some("en-GB".into()),
            _ => Some("en".into()),
        };
        lines.push(tweet_record(&t));
    }
    lines.join("\n") + "\n"
}

/// Config text using the shipped resource files and an archive in `dir`.
pub fn config_text(archive: &Path, seed: u64, extra: &str) -> String {
    let d = data_dir();
    let p = |name: &str| d.join(name).display().to_string().replace('\\', "/");
    format!(
        r#"seed = {seed}

[inputs]
archive = "{archive}"
afinn = "{afinn}"
emolex = "{emolex}"
gazetteer = "{gaz}"
country_boxes = "{boxes}"
stopwords = "{stop}"
lemmas = "{lemmas}"
{extra}
[window]
start = "2020-03-12"
weeks = 13

[report]
regions = ["SG", "GB"]

[lda]
candidates = [2, 3, 4]
iterations = 300
"#,
        archive = archive.display().to_string().replace('\\', "/"),
        afinn = p("afinn-en-165.tsv"),
        emolex = p("emolex.tsv"),
        gaz = p("gazetteer.tsv"),
        boxes = p("country_boxes.tsv"),
        stop = p("stopwords.txt"),
        lemmas = p("lemmas.tsv"),
    )
}

/// Write `archive` and a config next to it; returns the config path.
pub fn write_fixture(dir: &Path, archive: &str, seed: u64, extra: &str) -> PathBuf {
    let archive_path = dir.join("tweets.jsonl");
    fs::write(&archive_path, archive).unwrap();
    let cfg = dir.join("run.toml");
    fs::write(&cfg, config_text(&archive_path, seed, extra)).unwrap();
    cfg
}
