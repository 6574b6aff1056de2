//! Country-level location inference: GPS point, then place metadata, then
//! the free-text profile location matched against a gazetteer.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::tweet::{CountryCode, GeoPoint, Tweet};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GazetteerError {
    #[error("place name is empty after normalization")]
    EmptyName,
    #[error("place name {name:?} maps to both {existing} and {new}")]
    Conflict {
        name: String,
        existing: CountryCode,
        new: CountryCode,
    },
    #[error("invalid bounding box for {0}")]
    InvalidBox(CountryCode),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GeoSource {
    Gps,
    Place,
    Profile,
}

impl GeoSource {
    pub fn as_str(self) -> &'static str {
        match self {
            GeoSource::Gps => "gps",
            GeoSource::Place => "place",
            GeoSource::Profile => "profile",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeoLocation {
    pub country: CountryCode,
    pub source: GeoSource,
}

/// Inclusive lat/lon rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub lat_min: f64,
    pub lat_max: f64,
    pub lon_min: f64,
    pub lon_max: f64,
}

impl BoundingBox {
    pub fn contains(&self, p: &GeoPoint) -> bool {
        (self.lat_min..=self.lat_max).contains(&p.lat())
            && (self.lon_min..=self.lon_max).contains(&p.lon())
    }

    fn area(&self) -> f64 {
        (self.lat_max - self.lat_min) * (self.lon_max - self.lon_min)
    }

    fn is_valid(&self) -> bool {
        self.lat_min <= self.lat_max
            && self.lon_min <= self.lon_max
            && self.lat_min >= -90.0
            && self.lat_max <= 90.0
            && self.lon_min >= -180.0
            && self.lon_max <= 180.0
    }
}

/// Lowercase, replace every non-alphanumeric character with a space and
/// collapse runs of whitespace.
pub fn normalize_place(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for word in s
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
    {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    names: BTreeMap<String, CountryCode>,
    boxes: Vec<(CountryCode, BoundingBox)>,
    known: BTreeSet<CountryCode>,
    longest_name: usize,
}

impl Gazetteer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register a place name. Re-adding the same (name, country) pair is a
    /// no-op; a second country for the same normalized name is an error.
    pub fn insert_name(&mut self, name: &str, country: CountryCode) -> Result<(), GazetteerError> {
        let key = normalize_place(name);
        if key.is_empty() {
            return Err(GazetteerError::EmptyName);
        }
        if let Some(&existing) = self.names.get(&key) {
            if existing != country {
                return Err(GazetteerError::Conflict { name: key, existing, new: country });
            }
            return Ok(());
        }
        self.longest_name = self.longest_name.max(key.split(' ').count());
        self.names.insert(key, country);
        self.known.insert(country);
        Ok(())
    }

    pub fn insert_box(&mut self, country: CountryCode, bbox: BoundingBox) -> Result<(), GazetteerError> {
        if !bbox.is_valid() {
            return Err(GazetteerError::InvalidBox(country));
        }
        self.boxes.push((country, bbox));
        self.known.insert(country);
        Ok(())
    }

    pub fn is_known(&self, country: CountryCode) -> bool {
        self.known.contains(&country)
    }

    pub fn name(&self, name: &str) -> Option<CountryCode> {
        self.names.get(&normalize_place(name)).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = (&str, CountryCode)> {
        self.names.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn boxes(&self) -> &[(CountryCode, BoundingBox)] {
        &self.boxes
    }

    /// Country whose box contains the point. Nested boxes resolve to the
    /// smallest one; equally small boxes of different countries are ambiguous.
    pub fn country_at(&self, p: &GeoPoint) -> Option<CountryCode> {
        let mut best: Option<(f64, CountryCode)> = None;
        let mut tied = false;
        for (code, bbox) in self.boxes.iter().filter(|(_, b)| b.contains(p)) {
            let area = bbox.area();
            match best {
                None => best = Some((area, *code)),
                Some((a, _)) if area < a => {
                    best = Some((area, *code));
                    tied = false;
                }
                Some((a, c)) if area == a && c != *code => tied = true,
                _ => {}
            }
        }
        if tied {
            None
        } else {
            best.map(|(_, c)| c)
        }
    }

    /// Token-wise longest match of a free-text location. When the longest
    /// matching spans disagree on the country the result is `None`.
    pub fn match_profile(&self, text: &str) -> Option<CountryCode> {
        let norm = normalize_place(text);
        let tokens: Vec<&str> = norm.split(' ').filter(|t| !t.is_empty()).collect();
        let max_len = self.longest_name.min(tokens.len());
        for len in (1..=max_len).rev() {
            let mut found: Option<CountryCode> = None;
            let mut ambiguous = false;
            let mut key = String::new();
            for window in tokens.windows(len) {
                key.clear();
                for (i, t) in window.iter().enumerate() {
                    if i > 0 {
                        key.push(' ');
                    }
                    key.push_str(t);
                }
                if let Some(&c) = self.names.get(key.as_str()) {
                    match found {
                        None => found = Some(c),
                        Some(prev) if prev != c => ambiguous = true,
                        _ => {}
                    }
                }
            }
            if ambiguous {
                return None;
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Precedence chain gps > place > profile. A stage that cannot decide
    /// falls through to the next one.
    pub fn resolve(
        &self,
        gps: Option<&GeoPoint>,
        place_country: Option<CountryCode>,
        profile: Option<&str>,
    ) -> Option<GeoLocation> {
        if let Some(country) = gps.and_then(|p| self.country_at(p)) {
            return Some(GeoLocation { country, source: GeoSource::Gps });
        }
        if let Some(country) = place_country.filter(|c| self.is_known(*c)) {
            return Some(GeoLocation { country, source: GeoSource::Place });
        }
        profile
            .and_then(|s| self.match_profile(s))
            .map(|country| GeoLocation { country, source: GeoSource::Profile })
    }
}

pub fn resolve_location(tweet: &Tweet, gazetteer: &Gazetteer) -> Option<GeoLocation> {
    gazetteer.resolve(
        tweet.gps.as_ref(),
        tweet.place_country,
        tweet.profile_location.as_deref(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cc(s: &str) -> CountryCode {
        s.parse().unwrap()
    }

    fn gazetteer() -> Gazetteer {
        let mut g = Gazetteer::new();
        for (n, c) in [
            ("London", "GB"),
            ("UK", "GB"),
            ("United Kingdom", "GB"),
            ("Singapore", "SG"),
            ("Paris", "FR"),
            ("Texas", "US"),
            ("New York", "US"),
            ("York", "GB"),
        ] {
            g.insert_name(n, cc(c)).unwrap();
        }
        let sg = BoundingBox { lat_min: 1.15, lat_max: 1.48, lon_min: 103.6, lon_max: 104.1 };
        let my = BoundingBox { lat_min: 0.85, lat_max: 7.4, lon_min: 99.6, lon_max: 119.3 };
        g.insert_box(cc("MY"), my).unwrap();
        g.insert_box(cc("SG"), sg).unwrap();
        g
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_place("  London,  UK!! "), "london uk");
        assert_eq!(normalize_place("São Paulo"), "são paulo");
        assert_eq!(normalize_place("..."), "");
    }

    #[test]
    fn nested_box_prefers_smallest() {
        let g = gazetteer();
        let p = GeoPoint::new(1.29, 103.85).unwrap();
        assert_eq!(g.country_at(&p), Some(cc("SG")));
        let kl = GeoPoint::new(3.15, 101.69).unwrap();
        assert_eq!(g.country_at(&kl), Some(cc("MY")));
        assert_eq!(g.country_at(&GeoPoint::new(0.0, 0.0).unwrap()), None);
    }

    #[test]
    fn profile_matching() {
        let g = gazetteer();
        assert_eq!(g.match_profile("London, UK"), Some(cc("GB")));
        assert_eq!(g.match_profile("new york city"), Some(cc("US")));
        assert_eq!(g.match_profile("Paris, Texas"), None);
        assert_eq!(g.match_profile("somewhere over the rainbow"), None);
        assert_eq!(g.match_profile(""), None);
    }

    #[test]
    fn conflicting_entry_rejected() {
        let mut g = gazetteer();
        assert!(g.insert_name("london", cc("GB")).is_ok());
        assert!(matches!(g.insert_name("LONDON", cc("CA")), Err(GazetteerError::Conflict { .. })));
        assert_eq!(g.insert_name(" , ", cc("GB")), Err(GazetteerError::EmptyName));
    }

    #[test]
    fn precedence_and_fallthrough() {
        let g = gazetteer();
        let sg = GeoPoint::new(1.29, 103.85).unwrap();
        let nowhere = GeoPoint::new(-60.0, 0.0).unwrap();
        let r = g.resolve(Some(&sg), Some(cc("FR")), Some("London")).unwrap();
        assert_eq!((r.country, r.source), (cc("SG"), GeoSource::Gps));
        let r = g.resolve(Some(&nowhere), Some(cc("FR")), Some("London")).unwrap();
        assert_eq!((r.country, r.source), (cc("FR"), GeoSource::Place));
        let r = g.resolve(None, Some(cc("ZZ")), Some("London")).unwrap();
        assert_eq!((r.country, r.source), (cc("GB"), GeoSource::Profile));
        assert_eq!(g.resolve(None, None, None), None);
    }
}
