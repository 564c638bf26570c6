//! Compact lexicon-rule sentiment scorer producing a compound score in
//! (-1, 1).
//!
//! This implements the compound normalisation s / sqrt(s^2 + 15) over summed
//! token valences, with two rule adjustments: a negator within the three
//! preceding tokens multiplies a valence by -0.74, and an ALL-CAPS token
//! gains 0.733 magnitude. Degree modifiers and punctuation emphasis are out
//! of scope; classifier quality, not sentiment fidelity, is the goal here.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use thiserror::Error;

const NEGATION_SCALAR: f64 = -0.74;
const CAPS_BOOST: f64 = 0.733;
const NORMALIZATION_ALPHA: f64 = 15.0;
const NEGATION_WINDOW: usize = 3;

#[rustfmt::skip]
const NEGATORS: [&str; 26] = [
    "not", "no", "never", "none", "nothing", "nobody", "neither", "nor",
    "nowhere", "hardly", "scarcely", "barely", "cannot", "cant", "can't",
    "dont", "don't", "doesnt", "doesn't", "didnt", "didn't", "isnt",
    "isn't", "wasnt", "wasn't", "wont",
];

/// Built-in valence table, token -> valence in [-4, 4]. A deliberately small
/// default; supply a fuller lexicon via file when available.
#[rustfmt::skip]
const BUILTIN_VALENCES: [(&str, f64); 60] = [
    ("good", 1.9), ("great", 3.1), ("excellent", 3.2), ("awesome", 3.1),
    ("amazing", 2.8), ("best", 3.2), ("better", 1.9), ("love", 3.2),
    ("loved", 2.9), ("like", 1.5), ("happy", 2.7), ("joy", 2.8),
    ("win", 2.8), ("winner", 2.8), ("free", 2.3), ("freedom", 3.1),
    ("peace", 2.5), ("hope", 1.9), ("truth", 1.6), ("justice", 2.4),
    ("safe", 1.9), ("strong", 2.3), ("support", 1.7), ("proud", 2.1),
    ("brave", 2.4), ("hero", 2.6), ("friend", 2.2), ("thanks", 1.9),
    ("welcome", 2.0), ("smile", 2.3), ("bad", -2.5), ("worse", -2.1),
    ("worst", -3.1), ("terrible", -2.1), ("horrible", -2.5),
    ("awful", -2.0), ("hate", -2.7), ("hated", -2.4), ("fear", -2.2),
    ("afraid", -2.2), ("angry", -2.3), ("anger", -2.2), ("sad", -2.1),
    ("cry", -2.1), ("death", -2.9), ("dead", -3.3), ("kill", -3.7),
    ("war", -2.9), ("crime", -2.5), ("corrupt", -3.0), ("fraud", -2.8),
    ("evil", -3.4), ("enemy", -2.5), ("attack", -2.1), ("threat", -2.4),
    ("abuse", -3.2), ("censorship", -2.2), ("lie", -2.4), ("liar", -2.7),
    ("wrong", -2.1),
];

#[derive(Debug, Error)]
pub enum SentimentError {
    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: expected `token<TAB or space>valence`")]
    Malformed { line: usize },
    #[error("line {line}: valence {valence} outside [-4, 4]")]
    ValenceOutOfRange { line: usize, valence: f64 },
}

/// Token-to-valence lookup table.
#[derive(Debug, Clone)]
pub struct SentimentLexicon {
    valences: HashMap<String, f64>,
}

impl SentimentLexicon {
    /// The shipped default valence table.
    pub fn builtin() -> Self {
        SentimentLexicon {
            valences: BUILTIN_VALENCES
                .iter()
                .map(|&(t, v)| (t.to_string(), v))
                .collect(),
        }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (String, f64)>) -> Self {
        SentimentLexicon {
            valences: entries.into_iter().collect(),
        }
    }

    /// Load `token valence` lines (tab or space separated, `#` comments).
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, SentimentError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| SentimentError::Read {
            path: path.display().to_string(),
            source,
        })?;
        let mut valences = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (token, valence) = match (parts.next(), parts.next(), parts.next()) {
                (Some(t), Some(v), None) => (t, v),
                _ => return Err(SentimentError::Malformed { line: i + 1 }),
            };
            let valence: f64 = valence
                .parse()
                .map_err(|_| SentimentError::Malformed { line: i + 1 })?;
            if !(-4.0..=4.0).contains(&valence) {
                return Err(SentimentError::ValenceOutOfRange {
                    line: i + 1,
                    valence,
                });
            }
            valences.insert(token.to_lowercase(), valence);
        }
        Ok(SentimentLexicon { valences })
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.valences.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.valences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valences.is_empty()
    }
}

fn strip_edges(token: &str) -> &str {
    token.trim_matches(|c: char| !c.is_alphanumeric() && c != '\'')
}

fn is_all_caps(token: &str) -> bool {
    let letters: Vec<char> = token.chars().filter(|c| c.is_alphabetic()).collect();
    letters.len() >= 2 && letters.iter().all(|c| c.is_uppercase())
}

/// Compound sentiment of a text in (-1, 1); 0 for empty or unmatched text.
pub fn sentiment_compound(text: &str, lexicon: &SentimentLexicon) -> f64 {
    let tokens: Vec<&str> = text.split_whitespace().map(strip_edges).collect();
    let lowered: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
    let mut sum = 0.0;
    for (i, lowered_token) in lowered.iter().enumerate() {
        let Some(mut valence) = lexicon.valence(lowered_token) else {
            continue;
        };
        if is_all_caps(tokens[i]) {
            valence += CAPS_BOOST * valence.signum();
        }
        let negated = lowered[i.saturating_sub(NEGATION_WINDOW)..i]
            .iter()
            .any(|prev| NEGATORS.contains(&prev.as_str()));
        if negated {
            valence *= NEGATION_SCALAR;
        }
        sum += valence;
    }
    sum / (sum * sum + NORMALIZATION_ALPHA).sqrt()
}
