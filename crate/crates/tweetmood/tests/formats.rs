mod common;

use std::fs;

use chrono::{DateTime, TimeZone, Utc};
use proptest::prelude::*;
use tweetmood::formats::{
    parse_afinn, parse_country_boxes, parse_emolex, parse_lemmas, parse_place_names, parse_stopwords, write_afinn,
    write_emolex,
};
use tweetmood::{parse_tweet_record, tweet_record};
use tweetmood_core::{
    lookup, resolve_location, score_tweet, AfinnLexicon, CountryCode, EmoLexicon, Emotion, Gazetteer, GeoPoint,
    GeoSource, Label, MatchKind, Preprocessor, Tweet,
};

fn shipped(name: &str) -> String {
    fs::read_to_string(common::data_dir().join(name)).unwrap()
}

fn shipped_gazetteer() -> Gazetteer {
    let mut g = Gazetteer::new();
    parse_place_names(&shipped("gazetteer.tsv"), &mut g).unwrap();
    parse_country_boxes(&shipped("country_boxes.tsv"), &mut g).unwrap();
    g
}

#[test]
fn shipped_afinn_is_in_range() {
    let lex = parse_afinn(&shipped("afinn-en-165.tsv")).unwrap();
    assert!(lex.len() > 3000);
    for (word, score) in lex.iter() {
        assert!(score != 0 && (-5..=5).contains(&score), "{word} {score}");
    }
    assert_eq!(lex.score("good"), Some(3));
}

#[test]
fn shipped_emolex_has_known_rows() {
    let lex = parse_emolex(&shipped("emolex.tsv")).unwrap();
    let abandon = lex.associations("abandon").unwrap();
    assert!(abandon.contains(Label::Emotion(Emotion::Fear)));
    assert!(!abandon.contains(Label::Emotion(Emotion::Joy)));
}

#[test]
fn shipped_lexicons_survive_a_write_and_reload() {
    let afinn = parse_afinn(&shipped("afinn-en-165.tsv")).unwrap();
    assert_eq!(parse_afinn(&write_afinn(&afinn)).unwrap(), afinn);
    let emolex = parse_emolex(&shipped("emolex.tsv")).unwrap();
    assert_eq!(parse_emolex(&write_emolex(&emolex)).unwrap(), emolex);
}

#[test]
fn stem_fallback_scores_through_the_real_preprocessor() {
    let afinn = parse_afinn(&shipped("afinn-en-165.tsv")).unwrap();
    let prep = Preprocessor::new(parse_stopwords(&shipped("stopwords.txt")))
        .with_lemmas(parse_lemmas(&shipped("lemmas.tsv")).unwrap());
    let doc = prep.process_tweet("1", "Affectionately, with some bitterness");
    assert_eq!(doc.surface_tokens, ["affectionately", "bitterness"]);
    assert_eq!(doc.stems, ["affection", "bitter"]);
    for (surface, stem) in doc.tokens() {
        assert_eq!(lookup(&afinn, surface, stem).unwrap().kind, MatchKind::Stem);
    }
    assert_eq!(score_tweet(&doc, &afinn).score, 3 - 2);
}

#[test]
fn coordinates_are_longitude_first() {
    let line = r#"{"id":"9","created_at":"2020-04-01T08:00:00+08:00","text":"hi","coordinates":[103.85,1.29]}"#;
    let t = parse_tweet_record(line, 1).unwrap();
    let p = t.gps.unwrap();
    assert_eq!((p.lat(), p.lon()), (1.29, 103.85));
    assert_eq!(t.created_at, Utc.with_ymd_and_hms(2020, 4, 1, 0, 0, 0).unwrap());
    assert!(tweet_record(&t).contains(r#""coordinates":[103.85,1.29]"#));
}

#[test]
fn shipped_gazetteer_examples() {
    let g = shipped_gazetteer();
    let created = Utc.with_ymd_and_hms(2020, 4, 1, 0, 0, 0).unwrap();
    let mut t = Tweet::new("1", created, "").unwrap();
    t.profile_location = Some("London, UK".into());
    let l = resolve_location(&t, &g).unwrap();
    assert_eq!((l.country.as_str(), l.source), ("GB", GeoSource::Profile));
    t.gps = Some(GeoPoint::new(1.29, 103.85).unwrap());
    let l = resolve_location(&t, &g).unwrap();
    assert_eq!((l.country.as_str(), l.source), ("SG", GeoSource::Gps));
}

fn word() -> impl Strategy<Value = String> {
    "[a-z][a-z'-]{0,11}"
}

proptest! {
    #[test]
    fn afinn_round_trip(entries in prop::collection::btree_map(word(), (-5i64..=5).prop_filter("nonzero", |s| *s != 0), 0..40)) {
        let mut lex = AfinnLexicon::new();
        for (w, s) in &entries {
            lex.insert(w, *s).unwrap();
        }
        let back = parse_afinn(&write_afinn(&lex)).unwrap();
        prop_assert_eq!(&back, &lex);
        prop_assert_eq!(write_afinn(&back), write_afinn(&lex));
    }

    #[test]
    fn emolex_round_trip(entries in prop::collection::btree_map(word(), prop::collection::vec(any::<bool>(), 10), 0..30)) {
        let mut lex = EmoLexicon::new();
        for (w, flags) in &entries {
            for (label, flag) in Label::ALL.iter().zip(flags) {
                lex.set(w, *label, *flag).unwrap();
            }
        }
        let back = parse_emolex(&write_emolex(&lex)).unwrap();
        prop_assert_eq!(&back, &lex);
    }

    #[test]
    fn tweet_record_round_trip(
        id in "[0-9a-z]{1,12}",
        secs in 1_500_000_000i64..1_700_000_000,
        millis in prop::option::of(0u32..1000),
        text in "\\PC{0,60}",
        profile in prop::option::of("[A-Za-z][A-Za-z ,]{0,19}"),
        gps in prop::option::of((-90.0f64..=90.0, -180.0f64..=180.0)),
        place in prop::option::of("[A-Z]{2}"),
        lang in prop::option::of("[a-z]{2}(-[A-Z]{2})?"),
    ) {
        let created: DateTime<Utc> = DateTime::from_timestamp(secs, millis.unwrap_or(0) * 1_000_000).unwrap();
        let mut t = Tweet::new(id, created, text).unwrap();
        t.profile_location = profile;
        t.gps = gps.map(|(lat, lon)| GeoPoint::new(lat, lon).unwrap());
        t.place_country = place.map(|p| p.parse::<CountryCode>().unwrap());
        t.lang = lang;
        let line = tweet_record(&t);
        prop_assert!(!line.contains('\n'));
        prop_assert_eq!(parse_tweet_record(&line, 1).unwrap(), t);
    }
}
