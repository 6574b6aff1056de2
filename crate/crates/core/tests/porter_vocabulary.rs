use tweetmood_core::porter_stem;

const VOCABULARY: &str = include_str!("fixtures/porter_voc.txt");
const EXPECTED: &str = include_str!("fixtures/porter_output.txt");

#[test]
fn matches_published_vocabulary() {
    let words: Vec<&str> = VOCABULARY.lines().collect();
    let stems: Vec<&str> = EXPECTED.lines().collect();
    assert_eq!(words.len(), 23531);
    assert_eq!(words.len(), stems.len());
    let mismatches: Vec<_> = words
        .iter()
        .zip(&stems)
        .filter(|(w, s)| porter_stem(w) != **s)
        .take(20)
        .collect();
    assert!(mismatches.is_empty(), "{mismatches:?}");
}
