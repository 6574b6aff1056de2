use tweetmood_core::{LemmaTable, StopWords};

use super::{expect_fields, tsv_records, ParseError};

/// One word per line.
pub fn parse_stopwords(text: &str) -> StopWords {
    text.lines().map(str::trim).filter(|w| !w.is_empty()).collect()
}

/// `inflected_form<TAB>lemma` rules, chains collapsed.
pub fn parse_lemmas(text: &str) -> Result<LemmaTable, ParseError> {
    let mut table = LemmaTable::new();
    for (line, fields) in tsv_records(text, &["inflected_form", "lemma"]) {
        expect_fields(line, &fields, 2)?;
        table
            .insert(fields[0].trim(), fields[1].trim())
            .map_err(|e| ParseError::at(line, e.to_string()))?;
    }
    table.finalize().map_err(|e| ParseError::whole(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stopwords_lowercased() {
        let s = parse_stopwords("The\n\n  at \r\n");
        assert!(s.contains("the") && s.contains("at"));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn lemma_rules() {
        let t = parse_lemmas("inflected_form\tlemma\nmice\tmouse\nwent\tgo\n").unwrap();
        assert_eq!(t.lemma("mice"), "mouse");
        assert_eq!(t.lemma("cats"), "cats");
        assert_eq!(parse_lemmas("a\tb\nb\ta\n").unwrap_err().line, None);
        assert_eq!(parse_lemmas("two words\tx\n").unwrap_err().line, Some(1));
    }
}
