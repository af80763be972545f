//! Text preprocessing pipeline: tokenize, lowercase, normalize slang,
//! remove stop words, stem. The stages always run in that order; each
//! one can be switched off independently through [`PipelineConfig`].

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lingo::{hex_digest, LingoDictionary};
use crate::porter;

pub use crate::porter::stem;

/// Bundled stop-word list source, compiled into the binary.
pub const BUNDLED_STOPWORD_SOURCE: &str = include_str!("../../../data/stopwords_en.txt");

/// A stop-word set plus a content hash of its source. The shipped list
/// is the behavioural contract: it contains common function words
/// (you, a, your, ...) and deliberately omits high-signal terms such as
/// won, call, free, prize, claim, cash.
#[derive(Debug, Clone)]
pub struct StopwordSet {
    words: HashSet<String>,
    version: String,
}

impl StopwordSet {
    /// Parses a stop-word list: one token per line, `#` comments and
    /// blank lines ignored, tokens lowercased.
    pub fn from_source(source: &str) -> StopwordSet {
        let words = source
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        StopwordSet {
            words,
            version: hex_digest(source.as_bytes()),
        }
    }

    pub fn load(path: &Path) -> Result<StopwordSet> {
        let content = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(StopwordSet::from_source(&content))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// sha256 hex digest of the list's source bytes.
    pub fn version(&self) -> &str {
        &self.version
    }
}

/// The stop-word list shipped with the toolkit.
pub fn bundled_stopwords() -> StopwordSet {
    StopwordSet::from_source(BUNDLED_STOPWORD_SOURCE)
}

/// Pipeline stage switches plus the resources the stages need. Pure
/// data; nothing here mutates, so configs can be shared freely across
/// threads.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub enable_normalization: bool,
    pub enable_stopword_removal: bool,
    pub enable_stemming: bool,
    pub dictionary: LingoDictionary,
    pub stopwords: StopwordSet,
}

impl PipelineConfig {
    /// A config with every stage enabled.
    pub fn new(dictionary: LingoDictionary, stopwords: StopwordSet) -> PipelineConfig {
        PipelineConfig {
            enable_normalization: true,
            enable_stopword_removal: true,
            enable_stemming: true,
            dictionary,
            stopwords,
        }
    }

    /// Binds a model to the exact preprocessing that produced its
    /// training tokens: stage switches plus the content versions of the
    /// dictionary and stop list, hashed. First 16 hex characters of
    /// sha256 over a canonical rendering.
    pub fn fingerprint(&self) -> String {
        let canonical = format!(
            "pipeline-v1\nnormalize={}\nstopwords={}\nstemming={}\ndict={}\nstoplist={}\n",
            self.enable_normalization,
            self.enable_stopword_removal,
            self.enable_stemming,
            self.dictionary.version(),
            self.stopwords.version(),
        );
        hex_digest(canonical.as_bytes())[..16].to_string()
    }
}

/// Preprocessed message: lowercase, non-empty tokens, tagged with the
/// fingerprint of the pipeline that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedMessage {
    pub tokens: Vec<String>,
    pub fingerprint: String,
}

/// True for whitespace-delimited chunks that should survive tokenization
/// unsplit: anything starting with `http://`, `https://` or `www.`
/// (case-insensitive), or containing `://`.
pub fn is_url_like(chunk: &str) -> bool {
    let lower = chunk.to_lowercase();
    lower.starts_with("http://")
        || lower.starts_with("https://")
        || lower.starts_with("www.")
        || lower.contains("://")
}

/// Splits raw text into tokens. URL-looking chunks are kept whole; the
/// rest is broken into maximal runs of Unicode alphanumerics and
/// apostrophes, dropping all other punctuation. Case is preserved.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        if is_url_like(chunk) {
            tokens.push(chunk.to_string());
            continue;
        }
        let mut current = String::new();
        for c in chunk.chars() {
            if c.is_alphanumeric() || c == '\'' {
                current.push(c);
            } else if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            tokens.push(current);
        }
    }
    tokens
}

/// Lowercases every token.
pub fn lowercase(tokens: &[String]) -> Vec<String> {
    tokens.iter().map(|t| t.to_lowercase()).collect()
}

/// Rewrites slang tokens into their expansion phrases, one pass, no
/// recursion: expansion output is never looked up again. Tokens are
/// expected to be lowercase already.
pub fn normalize(tokens: &[String], dictionary: &LingoDictionary) -> Vec<String> {
    let mut out = Vec::with_capacity(tokens.len());
    for token in tokens {
        match dictionary.lookup(token) {
            Some(expansion) => out.extend(expansion.iter().cloned()),
            None => out.push(token.clone()),
        }
    }
    out
}

/// Drops tokens present in the stop-word set.
pub fn remove_stopwords(tokens: &[String], stopwords: &StopwordSet) -> Vec<String> {
    tokens
        .iter()
        .filter(|t| !stopwords.contains(t))
        .cloned()
        .collect()
}

/// Runs the enabled stages in pipeline order over raw text. Stemming can
/// produce an empty token for degenerate inputs (the bare token "s");
/// those are dropped so every output token is non-empty.
pub fn preprocess(text: &str, config: &PipelineConfig) -> NormalizedMessage {
    let tokens = tokenize(text);
    let mut tokens = lowercase(&tokens);
    if config.enable_normalization {
        tokens = normalize(&tokens, &config.dictionary);
    }
    if config.enable_stopword_removal {
        tokens = remove_stopwords(&tokens, &config.stopwords);
    }
    if config.enable_stemming {
        tokens = tokens
            .iter()
            .map(|t| porter::stem(t))
            .filter(|t| !t.is_empty())
            .collect();
    }
    NormalizedMessage {
        tokens,
        fingerprint: config.fingerprint(),
    }
}
