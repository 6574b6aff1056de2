use std::fmt::Write;

use tweetmood_core::{AfinnLexicon, EmoLexicon, Label};

use super::{expect_fields, tsv_records, ParseError};

/// `word<TAB>score`, one entry per line.
pub fn parse_afinn(text: &str) -> Result<AfinnLexicon, ParseError> {
    let mut lex = AfinnLexicon::new();
    for (line, fields) in tsv_records(text, &[]) {
        expect_fields(line, &fields, 2)?;
        let score: i64 = fields[1]
            .trim()
            .parse()
            .map_err(|_| ParseError::at(line, format!("invalid score {:?} for {:?}", fields[1], fields[0])))?;
        lex.insert(fields[0], score).map_err(|e| ParseError::at(line, e.to_string()))?;
    }
    Ok(lex)
}

pub fn write_afinn(lex: &AfinnLexicon) -> String {
    let mut out = String::new();
    for (word, score) in lex.iter() {
        let _ = writeln!(out, "{word}\t{score}");
    }
    out
}

/// Long format `word<TAB>label<TAB>flag` with flag 0 or 1.
pub fn parse_emolex(text: &str) -> Result<EmoLexicon, ParseError> {
    let mut lex = EmoLexicon::new();
    for (line, fields) in tsv_records(text, &[]) {
        expect_fields(line, &fields, 3)?;
        let label: Label = fields[1].parse().map_err(|e: tweetmood_core::lexicon::LexiconError| {
            ParseError::at(line, e.to_string())
        })?;
        let flag = match fields[2].trim() {
            "0" => false,
            "1" => true,
            other => return Err(ParseError::at(line, format!("flag must be 0 or 1, got {other:?}"))),
        };
        lex.set(fields[0], label, flag).map_err(|e| ParseError::at(line, e.to_string()))?;
    }
    Ok(lex)
}

/// Every stored word with all ten labels, flags spelled out.
pub fn write_emolex(lex: &EmoLexicon) -> String {
    let mut out = String::new();
    for (word, labels) in lex.iter() {
        for label in Label::ALL {
            let _ = writeln!(out, "{word}\t{label}\t{}", u8::from(labels.contains(label)));
        }
    }
    out
}
