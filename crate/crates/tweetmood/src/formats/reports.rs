use std::fmt::Write;

use chrono::NaiveDate;
use tweetmood_core::emotion::EmotionProportions;
use tweetmood_core::lda::TopicModel;
use tweetmood_core::{CountryCode, Emotion, GeoLocation, Region, SeriesPoint, StudyWindow};

/// Fixed six decimals, without a negative sign on zero.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        s[1..].to_string()
    } else {
        s
    }
}

/// Nine significant digits.
fn fmt_sci(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn sentiment_csv(points: &[SeriesPoint]) -> String {
    let mut out = String::from("date,stat,value\n");
    for p in points {
        let _ = writeln!(out, "{},{},{}", p.date.format("%Y-%m-%d"), p.stat.as_str(), fmt6(p.value));
    }
    out
}

/// One block per requested region, in the given order, then `global`.
pub fn emotions_csv(rows: &[EmotionProportions], window: &StudyWindow, regions: &[CountryCode]) -> String {
    let mut out = String::from("week_start,region");
    for e in Emotion::ALL {
        out.push(',');
        out.push_str(e.as_str());
    }
    out.push('\n');
    let order = regions.iter().map(|c| Region::Country(*c)).chain([Region::Global]);
    for region in order {
        for row in rows.iter().filter(|r| r.region == region) {
            let _ = write!(out, "{},{}", window.week_start(row.week).format("%Y-%m-%d"), region);
            for share in row.shares {
                out.push(',');
                out.push_str(&fmt6(share));
            }
            out.push('\n');
        }
    }
    out
}

/// Topic mixture of one study week.
#[derive(Debug, Clone, PartialEq)]
pub struct WeekTopics {
    pub week: u32,
    pub weights: Vec<f64>,
}

impl WeekTopics {
    /// Topic ids by descending weight, lower id first on ties.
    pub fn ranked(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.weights.len()).collect();
        ids.sort_by(|&a, &b| self.weights[b].total_cmp(&self.weights[a]).then(a.cmp(&b)));
        ids
    }
}

pub fn topic_weights_csv(weeks: &[WeekTopics], window: &StudyWindow) -> String {
    let mut out = String::from("week_start,topic,weight\n");
    for w in weeks {
        let start = window.week_start(w.week).format("%Y-%m-%d");
        for (k, weight) in w.weights.iter().enumerate() {
            let _ = writeln!(out, "{start},{k},{}", fmt6(*weight));
        }
    }
    out
}

/// For each week, topics in order of their weight that week, each with its
/// `top_n` words and their topic-word probabilities.
pub fn topics_report_csv(model: &TopicModel, weeks: &[WeekTopics], window: &StudyWindow, top_n: usize) -> String {
    let mut out = String::from("week_start,topic,rank,word,probability\n");
    let tops: Vec<Vec<(&str, f64)>> = (0..model.topics()).map(|k| model.top_words(k, top_n)).collect();
    for w in weeks {
        let start = window.week_start(w.week).format("%Y-%m-%d");
        for k in w.ranked() {
            for (rank, (word, p)) in tops[k].iter().enumerate() {
                let _ = writeln!(out, "{start},{k},{},{word},{}", rank + 1, fmt6(*p));
            }
        }
    }
    out
}

/// Plain-text model dump: header fields, vocabulary, then phi (K x V) and
/// theta (D x K) row-major with nine significant digits.
pub fn model_text(model: &TopicModel) -> String {
    let mut out = String::from("tweetmood-topic-model 1\n");
    let _ = writeln!(out, "topics {}", model.topics());
    let _ = writeln!(out, "alpha {}", fmt_sci(model.alpha()));
    let _ = writeln!(out, "beta {}", fmt_sci(model.beta()));
    let _ = writeln!(out, "seed {}", model.seed());
    let _ = writeln!(out, "iterations {}", model.iterations());
    let _ = writeln!(out, "vocabulary {}", model.vocab().len());
    for w in model.vocab() {
        out.push_str(w);
        out.push('\n');
    }
    let row = |out: &mut String, values: &[f64]| {
        let cells: Vec<String> = values.iter().map(|v| fmt_sci(*v)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    };
    let _ = writeln!(out, "phi {} {}", model.topics(), model.vocab().len());
    for k in 0..model.topics() {
        row(&mut out, model.phi(k));
    }
    let _ = writeln!(out, "theta {} {}", model.num_docs(), model.topics());
    for d in 0..model.num_docs() {
        row(&mut out, model.theta(d));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexRow<'a> {
    pub id: &'a str,
    pub date: NaiveDate,
    pub week: u32,
    pub location: Option<GeoLocation>,
}

/// Per-tweet week and resolved location: `id,date,week,country,source`.
pub fn tweets_index_csv(rows: &[IndexRow<'_>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let _ = w.write_record(["id", "date", "week", "country", "source"]);
    for r in rows {
        let (country, source) = match r.location {
            Some(l) => (l.country.as_str().to_string(), l.source.as_str()),
            None => (String::new(), ""),
        };
        let date = r.date.format("%Y-%m-%d").to_string();
        let _ = w.write_record([r.id, &date, &r.week.to_string(), &country, source]);
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use tweetmood_core::SeriesStat;

    fn window() -> StudyWindow {
        StudyWindow::new(NaiveDate::from_ymd_opt(2020, 3, 12).unwrap(), 13).unwrap()
    }

    #[test]
    fn six_decimals() {
        assert_eq!(fmt6(-4.0), "-4.000000");
        assert_eq!(fmt6(2.0 / 3.0), "0.666667");
        assert_eq!(fmt6(-1e-9), "0.000000");
    }

    #[test]
    fn sentiment_rows() {
        let p = SeriesPoint { date: NaiveDate::from_ymd_opt(2020, 3, 12).unwrap(), stat: SeriesStat::Mean, value: -0.5 };
        assert_eq!(sentiment_csv(&[p]), "date,stat,value\n2020-03-12,mean,-0.500000\n");
    }

    #[test]
    fn emotion_blocks_follow_region_order() {
        let mut shares = [0.0; 8];
        shares[Emotion::Fear.index()] = 0.75;
        shares[Emotion::Joy.index()] = 0.25;
        let sg: CountryCode = "SG".parse().unwrap();
        let gb: CountryCode = "GB".parse().unwrap();
        let rows = [
            EmotionProportions { week: 1, region: Region::Country(gb), shares },
            EmotionProportions { week: 0, region: Region::Country(sg), shares },
            EmotionProportions { week: 0, region: Region::Global, shares },
        ];
        let csv = emotions_csv(&rows, &window(), &[sg, gb]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "week_start,region,anger,fear,anticipation,trust,surprise,sadness,joy,disgust");
        assert_eq!(lines[1], "2020-03-12,SG,0.000000,0.750000,0.000000,0.000000,0.000000,0.000000,0.250000,0.000000");
        assert!(lines[2].starts_with("2020-03-19,GB,"));
        assert!(lines[3].starts_with("2020-03-12,global,"));
    }

    #[test]
    fn topic_ranking_ties_to_lower_id() {
        let w = WeekTopics { week: 0, weights: vec![0.2, 0.4, 0.4] };
        assert_eq!(w.ranked(), [1, 2, 0]);
    }

    #[test]
    fn model_dump_layout() {
        let m = TopicModel::from_parts(
            vec!["a".into(), "b".into()],
            vec![vec![0.25, 0.75]],
            vec![vec![1.0]],
            50.0,
            0.01,
            7,
            10,
        )
        .unwrap();
        let text = model_text(&m);
        assert!(text.contains("\nalpha 5.00000000e1\n"));
        assert!(text.contains("\nphi 1 2\n2.50000000e-1 7.50000000e-1\ntheta 1 1\n1.00000000e0\n"));
    }

    #[test]
    fn index_quotes_awkward_ids() {
        let row = IndexRow { id: "a,b", date: NaiveDate::from_ymd_opt(2020, 3, 12).unwrap(), week: 0, location: None };
        assert_eq!(tweets_index_csv(&[row]), "id,date,week,country,source\n\"a,b\",2020-03-12,0,,\n");
    }
}
