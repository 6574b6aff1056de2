use std::collections::BTreeMap;

use chrono::NaiveDate;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub date: NaiveDate,
    pub label: String,
}

fn csv_error(e: csv::Error) -> ParseError {
    match e.position() {
        Some(p) => ParseError::at(p.line() as usize, e.to_string()),
        None => ParseError::whole(e.to_string()),
    }
}

fn parse_date(line: usize, s: &str) -> Result<NaiveDate, ParseError> {
    NaiveDate::parse_from_str(s.trim(), "%Y-%m-%d")
        .map_err(|_| ParseError::at(line, format!("invalid date {s:?}, expected YYYY-MM-DD")))
}

/// CSV with header `date,label`. An empty file holds no events.
pub fn parse_events(text: &str) -> Result<Vec<Event>, ParseError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(csv_error)?.clone();
    if !headers.is_empty() && (headers.len() != 2 || &headers[0] != "date" || &headers[1] != "label") {
        return Err(ParseError::at(1, "expected header \"date,label\""));
    }
    let mut events = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        events.push(Event { date: parse_date(line, &record[0])?, label: record[1].to_string() });
    }
    Ok(events)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotated {
    pub csv: String,
    /// events whose date is not in the series
    pub unmatched: Vec<Event>,
}

/// Append an `event` column to a series CSV whose header has a `date`
/// column. Several events on one date are joined with "; ".
pub fn annotate_series(series: &str, events: &[Event]) -> Result<Annotated, ParseError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(series.as_bytes());
    let headers = reader.headers().map_err(csv_error)?.clone();
    let date_col = headers
        .iter()
        .position(|h| h == "date")
        .ok_or_else(|| ParseError::at(1, "series has no \"date\" column"))?;
    let mut labels: BTreeMap<NaiveDate, Vec<&str>> = BTreeMap::new();
    for e in events {
        labels.entry(e.date).or_default().push(&e.label);
    }

    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let mut out_headers = headers.clone();
    out_headers.push_field("event");
    writer.write_record(&out_headers).map_err(csv_error)?;
    let mut seen = Vec::new();
    for record in reader.records() {
        let mut record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let date = parse_date(line, &record[date_col])?;
        let label = labels.get(&date).map(|l| l.join("; ")).unwrap_or_default();
        if !label.is_empty() {
            seen.push(date);
        }
        record.push_field(&label);
        writer.write_record(&record).map_err(csv_error)?;
    }
    let bytes = writer.into_inner().map_err(|e| ParseError::whole(e.to_string()))?;
    let unmatched = events.iter().filter(|e| !seen.contains(&e.date)).cloned().collect();
    Ok(Annotated { csv: String::from_utf8(bytes).expect("csv output is utf-8"), unmatched })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SERIES: &str = "date,stat,value\n2020-03-11,mean,0.500000\n2020-03-12,mean,-1.250000\n";

    #[test]
    fn joins_labels_onto_dates() {
        let events = parse_events("date,label\n2020-03-12,\"WHO pandemic declaration, +1d\"\n").unwrap();
        let a = annotate_series(SERIES, &events).unwrap();
        assert_eq!(
            a.csv,
            "date,stat,value,event\n2020-03-11,mean,0.500000,\n2020-03-12,mean,-1.250000,\"WHO pandemic declaration, +1d\"\n"
        );
        assert!(a.unmatched.is_empty());
    }

    #[test]
    fn empty_events_add_empty_column() {
        let a = annotate_series(SERIES, &parse_events("").unwrap()).unwrap();
        assert_eq!(a.csv, "date,stat,value,event\n2020-03-11,mean,0.500000,\n2020-03-12,mean,-1.250000,\n");
    }

    #[test]
    fn unmatched_event_is_reported() {
        let events = parse_events("date,label\n2020-04-07,circuit breaker\n").unwrap();
        let a = annotate_series(SERIES, &events).unwrap();
        assert_eq!(a.unmatched, events);
        assert!(a.csv.lines().all(|l| l.ends_with(',') || l.ends_with("event")));
    }

    #[test]
    fn malformed_date_names_line() {
        let e = parse_events("date,label\n2020-03-12,a\n12/03/2020,b\n").unwrap_err();
        assert_eq!(e.line, Some(3));
        assert!(e.message.contains("12/03/2020"));
    }
}
