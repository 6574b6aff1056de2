use std::fmt::Write;

use tweetmood_core::{BoundingBox, CountryCode, Gazetteer};

use super::{expect_fields, tsv_records, ParseError};

const NAMES_HEADER: [&str; 2] = ["name", "country_code"];
const BOXES_HEADER: [&str; 5] = ["country_code", "lat_min", "lat_max", "lon_min", "lon_max"];

fn country(line: usize, s: &str) -> Result<CountryCode, ParseError> {
    s.trim().parse().map_err(|e: tweetmood_core::TweetError| ParseError::at(line, e.to_string()))
}

/// `name<TAB>country_code` rows added to `g`.
pub fn parse_place_names(text: &str, g: &mut Gazetteer) -> Result<(), ParseError> {
    for (line, fields) in tsv_records(text, &NAMES_HEADER) {
        expect_fields(line, &fields, 2)?;
        let code = country(line, fields[1])?;
        g.insert_name(fields[0], code).map_err(|e| ParseError::at(line, e.to_string()))?;
    }
    Ok(())
}

/// `country_code<TAB>lat_min<TAB>lat_max<TAB>lon_min<TAB>lon_max` rows added
/// to `g`. A country may have several boxes.
pub fn parse_country_boxes(text: &str, g: &mut Gazetteer) -> Result<(), ParseError> {
    for (line, fields) in tsv_records(text, &BOXES_HEADER) {
        expect_fields(line, &fields, 5)?;
        let code = country(line, fields[0])?;
        let mut v = [0.0; 4];
        for (slot, (raw, name)) in v.iter_mut().zip(fields[1..].iter().zip(&BOXES_HEADER[1..])) {
            *slot = raw
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| ParseError::at(line, format!("invalid {name} {raw:?}")))?;
        }
        let bbox = BoundingBox { lat_min: v[0], lat_max: v[1], lon_min: v[2], lon_max: v[3] };
        g.insert_box(code, bbox).map_err(|e| ParseError::at(line, e.to_string()))?;
    }
    Ok(())
}

pub fn write_place_names(g: &Gazetteer) -> String {
    let mut out = NAMES_HEADER.join("\t");
    out.push('\n');
    for (name, code) in g.names() {
        let _ = writeln!(out, "{name}\t{code}");
    }
    out
}

pub fn write_country_boxes(g: &Gazetteer) -> String {
    let mut out = BOXES_HEADER.join("\t");
    out.push('\n');
    for (code, b) in g.boxes() {
        let _ = writeln!(out, "{code}\t{}\t{}\t{}\t{}", b.lat_min, b.lat_max, b.lon_min, b.lon_max);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use tweetmood_core::GeoPoint;

    #[test]
    fn names_and_boxes() {
        let mut g = Gazetteer::new();
        parse_place_names("name\tcountry_code\nLondon\tGB\nsingapore\tsg\n", &mut g).unwrap();
        parse_country_boxes("SG\t1.15\t1.48\t103.6\t104.1\n", &mut g).unwrap();
        assert_eq!(g.name("LONDON").unwrap().as_str(), "GB");
        assert_eq!(g.country_at(&GeoPoint::new(1.29, 103.85).unwrap()).unwrap().as_str(), "SG");
    }

    #[test]
    fn bad_rows() {
        let mut g = Gazetteer::new();
        assert_eq!(parse_place_names("x\tGB\ny\tGBR\n", &mut g).unwrap_err().line, Some(2));
        let e = parse_country_boxes("SG\t1.48\t1.15\t103.6\t104.1\n", &mut g).unwrap_err();
        assert!(e.message.contains("SG"), "{e}");
        let e = parse_country_boxes("SG\t1\tnan\t103.6\t104.1\n", &mut g).unwrap_err();
        assert!(e.message.contains("lat_max"), "{e}");
        let e = parse_place_names("paris\tFR\nParis\tUS\n", &mut g).unwrap_err();
        assert_eq!(e.line, Some(2));
    }

    #[test]
    fn round_trip() {
        let mut g = Gazetteer::new();
        parse_place_names("new york\tUS\nuk\tGB\n", &mut g).unwrap();
        parse_country_boxes("SG\t1.15\t1.48\t103.6\t104.1\nUS\t24.5\t49.4\t-124.8\t-66.9\n", &mut g).unwrap();
        let mut h = Gazetteer::new();
        parse_place_names(&write_place_names(&g), &mut h).unwrap();
        parse_country_boxes(&write_country_boxes(&g), &mut h).unwrap();
        assert!(g.names().eq(h.names()));
        assert_eq!(g.boxes(), h.boxes());
    }
}
