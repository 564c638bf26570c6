//! Flesch-Kincaid grade-level score with a frozen heuristic syllable
//! counter, so scores are reproducible without a pronunciation dictionary.

/// Grade-level formula: 0.39*(words/sentences) + 11.8*(syllables/words) - 15.59.
///
/// Sentences = max(1, count of '.', '!', '?'); words = whitespace tokens
/// containing at least one alphanumeric character. Empty text (or text with
/// no words) scores 0 by convention.
pub fn flesch_kincaid(text: &str) -> f64 {
    let words: Vec<&str> = text
        .split_whitespace()
        .filter(|w| w.chars().any(|c| c.is_alphanumeric()))
        .collect();
    if words.is_empty() {
        return 0.0;
    }
    let sentences = text
        .chars()
        .filter(|c| matches!(c, '.' | '!' | '?'))
        .count()
        .max(1);
    let syllables: usize = words.iter().map(|w| count_syllables(w)).sum();
    let w = words.len() as f64;
    0.39 * (w / sentences as f64) + 11.8 * (syllables as f64 / w) - 15.59
}

/// Heuristic syllable count: number of maximal vowel-group runs (aeiouy),
/// minus one for a silent trailing 'e' (unless the word ends in "le"),
/// minimum 1 per word.
pub fn count_syllables(word: &str) -> usize {
    let letters: String = word
        .chars()
        .filter(|c| c.is_alphabetic())
        .collect::<String>()
        .to_lowercase();
    if letters.is_empty() {
        return 1;
    }
    let is_vowel = |c: char| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y');
    let mut groups = 0;
    let mut in_group = false;
    for c in letters.chars() {
        if is_vowel(c) {
            if !in_group {
                groups += 1;
            }
            in_group = true;
        } else {
            in_group = false;
        }
    }
    if groups > 1 && letters.ends_with('e') && !letters.ends_with("le") {
        groups -= 1;
    }
    groups.max(1)
}
