//! SMS slang dictionary: maps single-token slang onto expansion phrases.
//!
//! File format: one `slang<TAB>expansion phrase` entry per line, `#`
//! starts a comment line, UTF-8 throughout. Keys must be single tokens
//! and unique; both keys and expansions are lowercased at load so lookup
//! after the lowercase pipeline stage is exact-match.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Bundled sample dictionary source, compiled into the binary.
pub const BUNDLED_SOURCE: &str = include_str!("../../../data/lingo_sample.tsv");

/// A loaded normalization dictionary plus a content hash of its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LingoDictionary {
    entries: BTreeMap<String, Vec<String>>,
    version: String,
}

impl LingoDictionary {
    /// Exact-match lookup of a (lowercase) token.
    pub fn lookup(&self, token: &str) -> Option<&[String]> {
        self.entries.get(token).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// sha256 hex digest of the dictionary source bytes.
    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.entries
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Canonical serialization: sorted `key<TAB>expansion` lines.
    /// Reloading the result yields entry-identical content (the version
    /// hash tracks bytes, so it may differ from the original file's).
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (key, expansion) in &self.entries {
            out.push_str(key);
            out.push('\t');
            out.push_str(&expansion.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Loads a dictionary from a file.
pub fn load_dictionary(path: &Path) -> Result<LingoDictionary> {
    let content = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dictionary(&content, path)
}

/// Parses dictionary source text; `origin` is used in error messages.
pub fn parse_dictionary(source: &str, origin: &Path) -> Result<LingoDictionary> {
    let mut entries: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut first_lines: BTreeMap<String, u64> = BTreeMap::new();
    for (idx, raw_line) in source.lines().enumerate() {
        let line_no = idx as u64 + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        if line.trim_start().starts_with('#') {
            continue;
        }
        let malformed = |reason: &str| Error::MalformedEntry {
            path: origin.to_path_buf(),
            line: line_no,
            reason: reason.to_string(),
        };
        let Some((raw_key, raw_expansion)) = line.split_once('\t') else {
            return Err(malformed("missing tab separator"));
        };
        if raw_key.is_empty() {
            return Err(malformed("empty key"));
        }
        if raw_key.chars().any(char::is_whitespace) {
            return Err(malformed("key must be a single token without whitespace"));
        }
        let key = raw_key.to_lowercase();
        let expansion: Vec<String> = raw_expansion
            .split_whitespace()
            .map(str::to_lowercase)
            .collect();
        if expansion.is_empty() {
            return Err(malformed("empty expansion"));
        }
        if let Some(&first_line) = first_lines.get(&key) {
            return Err(Error::DuplicateKey {
                path: origin.to_path_buf(),
                line: line_no,
                first_line,
                key,
            });
        }
        first_lines.insert(key.clone(), line_no);
        entries.insert(key, expansion);
    }
    Ok(LingoDictionary {
        entries,
        version: hex_digest(source.as_bytes()),
    })
}

/// The dictionary shipped with the toolkit.
pub fn bundled_dictionary() -> LingoDictionary {
    parse_dictionary(BUNDLED_SOURCE, Path::new("<bundled lingo dictionary>"))
        .expect("bundled dictionary is valid")
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}
