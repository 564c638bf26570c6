//! Character-class counting and stylistic text checks over profile fields.
//!
//! All counts operate on Unicode scalar values. "Tokens" for the stylistic
//! checks are maximal alphanumeric runs, so punctuation attached to a name
//! does not hide it.

/// Digit-for-letter substitutions recognised as l33t style.
const LEET_MAP: [(char, char); 6] = [
    ('0', 'o'),
    ('1', 'l'),
    ('3', 'e'),
    ('5', 's'),
    ('7', 't'),
    ('4', 'a'),
];

/// Emoji-designated Unicode scalar ranges, frozen for reproducibility.
/// Variation selectors and ZWJ sequences are not counted separately.
const EMOJI_RANGES: [(u32, u32); 8] = [
    (0x1F300, 0x1F5FF), // symbols & pictographs
    (0x1F600, 0x1F64F), // emoticons
    (0x1F680, 0x1F6FF), // transport & map
    (0x1F900, 0x1F9FF), // supplemental symbols
    (0x1FA70, 0x1FAFF), // symbols extended-A
    (0x2600, 0x26FF),   // miscellaneous symbols
    (0x2700, 0x27BF),   // dingbats
    (0x1F1E6, 0x1F1FF), // regional indicators
];

pub fn count_chars(text: &str) -> usize {
    text.chars().count()
}

pub fn count_words(text: &str) -> usize {
    text.split_whitespace().count()
}

pub fn count_uppercase(text: &str) -> usize {
    text.chars().filter(|c| c.is_uppercase()).count()
}

pub fn count_lowercase(text: &str) -> usize {
    text.chars().filter(|c| c.is_lowercase()).count()
}

pub fn count_alphabetic(text: &str) -> usize {
    text.chars().filter(|c| c.is_alphabetic()).count()
}

pub fn count_numeric(text: &str) -> usize {
    text.chars().filter(|c| c.is_numeric()).count()
}

/// ASCII punctuation only; the frozen definition for the punctuation count.
pub fn count_punctuation(text: &str) -> usize {
    text.chars().filter(|c| c.is_ascii_punctuation()).count()
}

pub fn is_emoji(c: char) -> bool {
    let cp = c as u32;
    EMOJI_RANGES.iter().any(|&(lo, hi)| cp >= lo && cp <= hi)
}

pub fn count_emoji(text: &str) -> usize {
    text.chars().filter(|&c| is_emoji(c)).count()
}

/// Count `@`-mentions: an `@` immediately followed by a word character.
pub fn count_mentions(text: &str) -> usize {
    count_sigils(text, '@')
}

/// Count `#`-hashtags: a `#` immediately followed by a word character.
pub fn count_hashtags(text: &str) -> usize {
    count_sigils(text, '#')
}

fn count_sigils(text: &str, sigil: char) -> usize {
    let chars: Vec<char> = text.chars().collect();
    chars
        .windows(2)
        .filter(|w| w[0] == sigil && (w[1].is_alphanumeric() || w[1] == '_'))
        .count()
}

/// True iff the text contains an http(s) URL or a `www.` host.
pub fn contains_url(text: &str) -> bool {
    let folded = text.to_lowercase();
    folded.contains("http://") || folded.contains("https://") || folded.contains("www.")
}

fn alnum_tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
}

/// L33t check: some token mixes letters with digits from the substitution
/// map such that replacing those digits by their letters leaves a purely
/// alphabetic token ("h4ck" -> "hack").
pub fn detect_l33t(text: &str) -> bool {
    alnum_tokens(text).any(|token| {
        let mut has_alpha = false;
        let mut has_mapped_digit = false;
        let mut pure_after_substitution = true;
        for c in token.chars() {
            if c.is_alphabetic() {
                has_alpha = true;
            } else if LEET_MAP.iter().any(|&(d, _)| d == c) {
                has_mapped_digit = true;
            } else {
                pure_after_substitution = false;
            }
        }
        has_alpha && has_mapped_digit && pure_after_substitution
    })
}

/// Inner-caps check: some token carries an uppercase letter after its first
/// letter and also contains a lowercase letter ("YourAnonNews").
pub fn detect_inner_caps(text: &str) -> bool {
    alnum_tokens(text).any(|token| {
        let letters: Vec<char> = token.chars().filter(|c| c.is_alphabetic()).collect();
        letters.iter().skip(1).any(|c| c.is_uppercase()) && letters.iter().any(|c| c.is_lowercase())
    })
}
