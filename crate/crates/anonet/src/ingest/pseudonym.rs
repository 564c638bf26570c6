//! Stable keyed-hash pseudonyms for account identifiers.
//!
//! Every CLI-facing output refers to accounts by pseudonym, never by raw id.
//! The pseudonym is a keyed SHA-256 truncated to 48 bits, printed as
//! `acct_` + 12 lowercase hex chars. With the same key the mapping is
//! deterministic, so pseudonyms double as join keys between pipeline stages;
//! collision probability is negligible at this space for corpora up to ~10^6
//! accounts.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{AccountId, IngestError};

/// Pseudonymized account identifier, safe to emit in artifacts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pseudonym(pub String);

impl Pseudonym {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Pseudonym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Keyed pseudonym generator.
#[derive(Debug, Clone)]
pub struct Pseudonymizer {
    key: Vec<u8>,
}

impl Pseudonymizer {
    /// Create a generator from a secret key. The key must be non-empty.
    pub fn new(key: impl AsRef<[u8]>) -> Result<Self, IngestError> {
        let key = key.as_ref();
        if key.is_empty() {
            return Err(IngestError::EmptyKey);
        }
        Ok(Pseudonymizer { key: key.to_vec() })
    }

    /// Map an account id to its pseudonym: `acct_` + 12 lowercase hex chars.
    ///
    /// The hash input is length-prefixed so distinct (key, id) pairs cannot
    /// collide by concatenation ambiguity.
    pub fn pseudonymize(&self, id: &AccountId) -> Pseudonym {
        let mut hasher = Sha256::new();
        hasher.update((self.key.len() as u64).to_le_bytes());
        hasher.update(&self.key);
        hasher.update(id.as_str().as_bytes());
        let digest = hasher.finalize();
        let mut out = String::with_capacity(17);
        out.push_str("acct_");
        for byte in &digest[..6] {
            out.push_str(&format!("{byte:02x}"));
        }
        Pseudonym(out)
    }
}
