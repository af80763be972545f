//! Document-frequency naive Bayes over preprocessed tokens.
//!
//! Training counts, per class, the number of messages containing each
//! term (terms are de-duplicated within a message, so repeating a word
//! never inflates its weight). A term's class-conditional probability is
//! the raw ratio `containing_docs / class_docs`; smoothing only ever
//! substitutes a value for unseen terms. Scoring sums natural logs of
//! the per-term probabilities; class priors are off by default and can
//! be enabled explicitly. Ties resolve to Ham.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::Path;

use crate::corpus::{Corpus, Label};
use crate::error::{Error, Result};
use crate::lingo::hex_digest;
use crate::pipeline::{preprocess, NormalizedMessage, PipelineConfig};

/// Per-class document-frequency table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassConditionalTable {
    doc_counts: BTreeMap<String, u32>,
    total_docs: u32,
}

impl ClassConditionalTable {
    pub fn new(doc_counts: BTreeMap<String, u32>, total_docs: u32) -> ClassConditionalTable {
        debug_assert!(doc_counts.values().all(|&c| c > 0 && c <= total_docs));
        ClassConditionalTable {
            doc_counts,
            total_docs,
        }
    }

    /// Number of class documents containing `term` (0 when absent).
    pub fn doc_count(&self, term: &str) -> u32 {
        self.doc_counts.get(term).copied().unwrap_or(0)
    }

    pub fn contains(&self, term: &str) -> bool {
        self.doc_counts.contains_key(term)
    }

    pub fn total_docs(&self) -> u32 {
        self.total_docs
    }

    /// Raw document-frequency ratio; 0 for unseen terms.
    pub fn probability(&self, term: &str) -> f64 {
        self.doc_count(term) as f64 / self.total_docs as f64
    }

    /// Number of distinct terms observed for this class.
    pub fn term_count(&self) -> usize {
        self.doc_counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.doc_counts.iter().map(|(t, &c)| (t.as_str(), c))
    }
}

/// What to substitute for a term the class never saw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothingMode {
    /// Unseen terms get the fixed floor `epsilon`.
    FloorEpsilon(f64),
    /// Unseen terms get `alpha / (total_docs + 2 * alpha)` (two-outcome
    /// additive smoothing over contains / does-not-contain).
    Laplace(f64),
    /// Unseen terms get probability 0 (log scores may reach -inf).
    None,
}

impl fmt::Display for SmoothingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothingMode::FloorEpsilon(eps) => write!(f, "floor-epsilon {eps}"),
            SmoothingMode::Laplace(alpha) => write!(f, "laplace {alpha}"),
            SmoothingMode::None => write!(f, "none"),
        }
    }
}

/// How `score` treats terms absent from BOTH class tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownTokenPolicy {
    /// Skip them entirely; a message of only novel words ties at 0 and
    /// therefore classifies as Ham.
    Ignore,
    /// Score them through the smoother's unseen value in both classes.
    TreatAsUnseen,
}

impl fmt::Display for UnknownTokenPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnknownTokenPolicy::Ignore => f.write_str("ignore"),
            UnknownTokenPolicy::TreatAsUnseen => f.write_str("treat-as-unseen"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingConfig {
    pub mode: SmoothingMode,
    pub use_priors: bool,
    pub unknown_token_policy: UnknownTokenPolicy,
}

impl Default for SmoothingConfig {
    fn default() -> SmoothingConfig {
        SmoothingConfig {
            mode: SmoothingMode::FloorEpsilon(1e-6),
            use_priors: false,
            unknown_token_policy: UnknownTokenPolicy::Ignore,
        }
    }
}

impl SmoothingConfig {
    pub fn validate(&self) -> Result<()> {
        match self.mode {
            SmoothingMode::FloorEpsilon(eps) if !(eps > 0.0 && eps.is_finite()) => {
                Err(Error::InvalidSmoothing {
                    reason: format!("epsilon must be a positive finite number, got {eps}"),
                })
            }
            SmoothingMode::Laplace(alpha) if !(alpha > 0.0 && alpha.is_finite()) => {
                Err(Error::InvalidSmoothing {
                    reason: format!("alpha must be a positive finite number, got {alpha}"),
                })
            }
            _ => Ok(()),
        }
    }
}

/// Class-conditional probability of `term` under the given smoothing:
/// the raw ratio when the class has seen the term, otherwise the
/// smoother's unseen value.
pub fn term_probability(
    table: &ClassConditionalTable,
    term: &str,
    smoothing: &SmoothingConfig,
) -> f64 {
    let count = table.doc_count(term);
    if count > 0 {
        return count as f64 / table.total_docs() as f64;
    }
    match smoothing.mode {
        SmoothingMode::FloorEpsilon(eps) => eps,
        SmoothingMode::Laplace(alpha) => alpha / (table.total_docs() as f64 + 2.0 * alpha),
        SmoothingMode::None => 0.0,
    }
}

/// Pipeline metadata a model is bound to; stored in the model file so
/// the CLI can rebuild (and verify) the matching configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineDescriptor {
    pub enable_normalization: bool,
    pub enable_stopword_removal: bool,
    pub enable_stemming: bool,
    pub dictionary_version: String,
    pub stopword_version: String,
    pub fingerprint: String,
}

impl PipelineDescriptor {
    pub fn of(config: &PipelineConfig) -> PipelineDescriptor {
        PipelineDescriptor {
            enable_normalization: config.enable_normalization,
            enable_stopword_removal: config.enable_stopword_removal,
            enable_stemming: config.enable_stemming,
            dictionary_version: config.dictionary.version().to_string(),
            stopword_version: config.stopwords.version().to_string(),
            fingerprint: config.fingerprint(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub ham_table: ClassConditionalTable,
    pub smish_table: ClassConditionalTable,
    pub prior_ham: f64,
    pub prior_smish: f64,
    pub smoothing: SmoothingConfig,
    pub pipeline: PipelineDescriptor,
}

impl TrainedModel {
    pub fn pipeline_fingerprint(&self) -> &str {
        &self.pipeline.fingerprint
    }

    /// The document-frequency table for one class.
    pub fn table(&self, label: Label) -> &ClassConditionalTable {
        match label {
            Label::Ham => &self.ham_table,
            Label::Smish => &self.smish_table,
        }
    }
}

/// Distinct tokens of a message in first-occurrence order.
fn distinct_terms(tokens: &[String]) -> Vec<&str> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for token in tokens {
        if seen.insert(token.as_str()) {
            out.push(token.as_str());
        }
    }
    out
}

/// Trains a model: preprocesses every message through `config` and
/// counts, per class, the documents containing each distinct term.
pub fn train(
    corpus: &Corpus,
    config: &PipelineConfig,
    smoothing: &SmoothingConfig,
) -> Result<TrainedModel> {
    smoothing.validate()?;
    for label in [Label::Ham, Label::Smish] {
        if corpus.class_count(label) == 0 {
            return Err(Error::MissingTrainingClass { label });
        }
    }
    let mut ham_counts: BTreeMap<String, u32> = BTreeMap::new();
    let mut smish_counts: BTreeMap<String, u32> = BTreeMap::new();
    let mut saw_tokens = false;
    for message in corpus.iter() {
        let normalized = preprocess(&message.text, config);
        let counts = match message.label {
            Label::Ham => &mut ham_counts,
            Label::Smish => &mut smish_counts,
        };
        for term in distinct_terms(&normalized.tokens) {
            saw_tokens = true;
            *counts.entry(term.to_string()).or_insert(0) += 1;
        }
    }
    if !saw_tokens {
        return Err(Error::NoTrainingTokens);
    }
    let ham_docs = corpus.ham_count() as u32;
    let smish_docs = corpus.smish_count() as u32;
    let total = (ham_docs + smish_docs) as f64;
    Ok(TrainedModel {
        ham_table: ClassConditionalTable::new(ham_counts, ham_docs),
        smish_table: ClassConditionalTable::new(smish_counts, smish_docs),
        prior_ham: ham_docs as f64 / total,
        prior_smish: smish_docs as f64 / total,
        smoothing: *smoothing,
        pipeline: PipelineDescriptor::of(config),
    })
}

fn score_terms(model: &TrainedModel, message: &NormalizedMessage) -> Result<(f64, f64, usize)> {
    if message.fingerprint != model.pipeline.fingerprint {
        return Err(Error::FingerprintMismatch {
            expected: model.pipeline.fingerprint.clone(),
            actual: message.fingerprint.clone(),
        });
    }
    let mut log_ham = 0.0;
    let mut log_smish = 0.0;
    let mut used = 0usize;
    for term in distinct_terms(&message.tokens) {
        let known = model.ham_table.contains(term) || model.smish_table.contains(term);
        if !known && model.smoothing.unknown_token_policy == UnknownTokenPolicy::Ignore {
            continue;
        }
        log_ham += term_probability(&model.ham_table, term, &model.smoothing).ln();
        log_smish += term_probability(&model.smish_table, term, &model.smoothing).ln();
        used += 1;
    }
    if used == 0 {
        // empty sum, no priors: both classes score 0 and the tie rule
        // decides
        return Ok((0.0, 0.0, 0));
    }
    if model.smoothing.use_priors {
        log_ham += model.prior_ham.ln();
        log_smish += model.prior_smish.ln();
    }
    Ok((log_ham, log_smish, used))
}

/// Log-space class scores `(log_score_ham, log_score_smish)` for a
/// preprocessed message. Errors if the message was preprocessed with a
/// pipeline other than the model's.
pub fn score(model: &TrainedModel, message: &NormalizedMessage) -> Result<(f64, f64)> {
    score_terms(model, message).map(|(ham, smish, _)| (ham, smish))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    pub label: Label,
    pub log_score_ham: f64,
    pub log_score_smish: f64,
    pub tokens_used: usize,
}

/// Preprocesses raw text with `config` (which must match the model's
/// pipeline) and classifies it. Smish wins only on a strictly greater
/// score, so ties go to Ham.
pub fn classify(
    model: &TrainedModel,
    text: &str,
    config: &PipelineConfig,
) -> Result<ClassificationResult> {
    let message = preprocess(text, config);
    let (log_score_ham, log_score_smish, tokens_used) = score_terms(model, &message)?;
    let label = if log_score_smish > log_score_ham {
        Label::Smish
    } else {
        Label::Ham
    };
    Ok(ClassificationResult {
        label,
        log_score_ham,
        log_score_smish,
        tokens_used,
    })
}

const MODEL_MAGIC: &str = "smish-model v1";

/// Serializes a model to its canonical text format: a fixed-order
/// header, lexicographically sorted `term<TAB>ham<TAB>smish` rows, and a
/// sha256 checksum trailer over everything above it. The rendering is
/// canonical, so identical models produce identical bytes.
pub fn save_model(model: &TrainedModel, path: &Path) -> Result<()> {
    let payload = render_model(model);
    let checksum = hex_digest(payload.as_bytes());
    let content = format!("{payload}checksum {checksum}\n");
    std::fs::write(path, content).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn render_model(model: &TrainedModel) -> String {
    let mut terms: BTreeSet<&str> = BTreeSet::new();
    terms.extend(model.ham_table.iter().map(|(t, _)| t));
    terms.extend(model.smish_table.iter().map(|(t, _)| t));
    let mut out = String::new();
    out.push_str(MODEL_MAGIC);
    out.push('\n');
    out.push_str(&format!("fingerprint {}\n", model.pipeline.fingerprint));
    out.push_str(&format!("normalize {}\n", model.pipeline.enable_normalization));
    out.push_str(&format!("stopwords {}\n", model.pipeline.enable_stopword_removal));
    out.push_str(&format!("stemming {}\n", model.pipeline.enable_stemming));
    out.push_str(&format!("dict-version {}\n", model.pipeline.dictionary_version));
    out.push_str(&format!("stoplist-version {}\n", model.pipeline.stopword_version));
    out.push_str(&format!("smoothing {}\n", model.smoothing.mode));
    out.push_str(&format!("use-priors {}\n", model.smoothing.use_priors));
    out.push_str(&format!(
        "unknown-tokens {}\n",
        model.smoothing.unknown_token_policy
    ));
    out.push_str(&format!("ham-docs {}\n", model.ham_table.total_docs()));
    out.push_str(&format!("smish-docs {}\n", model.smish_table.total_docs()));
    out.push_str(&format!("terms {}\n", terms.len()));
    out.push_str("--\n");
    for term in terms {
        debug_assert!(!term.contains('\t') && !term.contains('\n'));
        out.push_str(&format!(
            "{term}\t{}\t{}\n",
            model.ham_table.doc_count(term),
            model.smish_table.doc_count(term)
        ));
    }
    out.push_str("--\n");
    out
}

struct ModelParser<'a> {
    path: &'a Path,
    lines: std::str::Lines<'a>,
    line_no: u64,
}

impl<'a> ModelParser<'a> {
    fn next_line(&mut self, what: &str) -> Result<&'a str> {
        match self.lines.next() {
            Some(line) => {
                self.line_no += 1;
                Ok(line)
            }
            None => Err(Error::ModelTruncated {
                reason: format!("missing {what}"),
            }),
        }
    }

    fn error(&self, reason: String) -> Error {
        Error::ModelParse {
            path: self.path.to_path_buf(),
            line: self.line_no,
            reason,
        }
    }

    fn field(&mut self, key: &str) -> Result<&'a str> {
        let line = self.next_line(&format!("{key} header field"))?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v),
            _ => Err(self.error(format!("expected {key:?} header field, found {line:?}"))),
        }
    }

    fn bool_field(&mut self, key: &str) -> Result<bool> {
        match self.field(key)? {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(self.error(format!("{key} must be true or false, found {other:?}"))),
        }
    }

    fn u32_field(&mut self, key: &str) -> Result<u32> {
        let value = self.field(key)?;
        value
            .parse()
            .map_err(|_| self.error(format!("{key} must be an unsigned integer, found {value:?}")))
    }
}

/// Loads and fully validates a model file: magic line, checksum over the
/// payload bytes as found on disk, strict header order, sorted term
/// rows, count bounds, and fingerprint consistency with the stored
/// pipeline metadata. Probabilities and priors are recomputed from the
/// stored integer counts, so a round trip is field-identical.
pub fn load_model(path: &Path) -> Result<TrainedModel> {
    let content = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    if content.is_empty() {
        return Err(Error::ModelTruncated {
            reason: "empty file".to_string(),
        });
    }

    let Some(checksum_at) = content.rfind("\nchecksum ") else {
        return Err(match content.lines().next() {
            Some(first) if first != MODEL_MAGIC => Error::ModelVersion {
                expected: MODEL_MAGIC.to_string(),
                found: first.to_string(),
            },
            _ => Error::ModelTruncated {
                reason: "missing checksum line".to_string(),
            },
        });
    };
    let payload = &content[..checksum_at + 1];
    let trailer = &content[checksum_at + 1..];
    let stored_checksum = trailer
        .strip_prefix("checksum ")
        .map(|rest| rest.strip_suffix('\n').unwrap_or(rest))
        .filter(|hex| hex.len() == 64 && hex.chars().all(|c| c.is_ascii_hexdigit()))
        .ok_or_else(|| Error::ModelTruncated {
            reason: "malformed checksum line".to_string(),
        })?;
    let computed = hex_digest(payload.as_bytes());
    if stored_checksum != computed {
        return Err(Error::ModelChecksum {
            stored: stored_checksum.to_string(),
            computed,
        });
    }

    let mut parser = ModelParser {
        path,
        lines: payload.lines(),
        line_no: 0,
    };
    let magic = parser.next_line("header")?;
    if magic != MODEL_MAGIC {
        return Err(Error::ModelVersion {
            expected: MODEL_MAGIC.to_string(),
            found: magic.to_string(),
        });
    }
    let fingerprint = parser.field("fingerprint")?.to_string();
    let enable_normalization = parser.bool_field("normalize")?;
    let enable_stopword_removal = parser.bool_field("stopwords")?;
    let enable_stemming = parser.bool_field("stemming")?;
    let dictionary_version = parser.field("dict-version")?.to_string();
    let stopword_version = parser.field("stoplist-version")?.to_string();
    let mode = parse_smoothing_mode(&mut parser)?;
    let use_priors = parser.bool_field("use-priors")?;
    let unknown_token_policy = match parser.field("unknown-tokens")? {
        "ignore" => UnknownTokenPolicy::Ignore,
        "treat-as-unseen" => UnknownTokenPolicy::TreatAsUnseen,
        other => {
            return Err(parser.error(format!("unknown unknown-tokens policy {other:?}")))
        }
    };
    let ham_docs = parser.u32_field("ham-docs")?;
    let smish_docs = parser.u32_field("smish-docs")?;
    if ham_docs == 0 || smish_docs == 0 {
        return Err(parser.error("per-class document totals must be at least 1".to_string()));
    }
    let term_total: usize = {
        let value = parser.field("terms")?;
        value
            .parse()
            .map_err(|_| parser.error(format!("terms must be an unsigned integer, found {value:?}")))?
    };
    let separator = parser.next_line("term table")?;
    if separator != "--" {
        return Err(parser.error(format!("expected \"--\" separator, found {separator:?}")));
    }

    let mut ham_counts = BTreeMap::new();
    let mut smish_counts = BTreeMap::new();
    let mut previous_term: Option<String> = None;
    loop {
        let line = parser.next_line("term table terminator")?;
        if line == "--" {
            break;
        }
        let mut parts = line.split('\t');
        let (Some(term), Some(ham_str), Some(smish_str), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(parser.error(format!(
                "expected term<TAB>ham_count<TAB>smish_count, found {line:?}"
            )));
        };
        if term.is_empty() {
            return Err(parser.error("empty term".to_string()));
        }
        let ham_count: u32 = ham_str
            .parse()
            .map_err(|_| parser.error(format!("bad ham count {ham_str:?}")))?;
        let smish_count: u32 = smish_str
            .parse()
            .map_err(|_| parser.error(format!("bad smish count {smish_str:?}")))?;
        if ham_count == 0 && smish_count == 0 {
            return Err(parser.error(format!("term {term:?} has no observations")));
        }
        if ham_count > ham_docs || smish_count > smish_docs {
            return Err(parser.error(format!(
                "term {term:?} count exceeds class document total"
            )));
        }
        if let Some(prev) = &previous_term {
            if term <= prev.as_str() {
                return Err(parser.error(format!("terms out of order at {term:?}")));
            }
        }
        previous_term = Some(term.to_string());
        if ham_count > 0 {
            ham_counts.insert(term.to_string(), ham_count);
        }
        if smish_count > 0 {
            smish_counts.insert(term.to_string(), smish_count);
        }
        if ham_counts.len() + smish_counts.len() > 2 * term_total {
            return Err(parser.error("more term rows than the terms header declares".to_string()));
        }
    }
    let distinct: BTreeSet<&String> = ham_counts.keys().chain(smish_counts.keys()).collect();
    if distinct.len() != term_total {
        return Err(parser.error(format!(
            "terms header declares {term_total}, file contains {}",
            distinct.len()
        )));
    }
    drop(distinct);
    if parser.lines.next().is_some() {
        return Err(parser.error("trailing data after term table".to_string()));
    }

    let smoothing = SmoothingConfig {
        mode,
        use_priors,
        unknown_token_policy,
    };
    smoothing
        .validate()
        .map_err(|e| parser.error(e.to_string()))?;
    let pipeline = PipelineDescriptor {
        enable_normalization,
        enable_stopword_removal,
        enable_stemming,
        dictionary_version,
        stopword_version,
        fingerprint,
    };
    let expected_fingerprint = fingerprint_of_descriptor(&pipeline);
    if pipeline.fingerprint != expected_fingerprint {
        return Err(parser.error(format!(
            "stored fingerprint {} does not match pipeline metadata (expected {})",
            pipeline.fingerprint, expected_fingerprint
        )));
    }
    let total = (ham_docs + smish_docs) as f64;
    Ok(TrainedModel {
        ham_table: ClassConditionalTable::new(ham_counts, ham_docs),
        smish_table: ClassConditionalTable::new(smish_counts, smish_docs),
        prior_ham: ham_docs as f64 / total,
        prior_smish: smish_docs as f64 / total,
        smoothing,
        pipeline,
    })
}

fn parse_smoothing_mode(parser: &mut ModelParser<'_>) -> Result<SmoothingMode> {
    let value = parser.field("smoothing")?;
    if value == "none" {
        return Ok(SmoothingMode::None);
    }
    let parsed = value.split_once(' ').and_then(|(kind, number)| {
        let number: f64 = number.parse().ok()?;
        match kind {
            "floor-epsilon" => Some(SmoothingMode::FloorEpsilon(number)),
            "laplace" => Some(SmoothingMode::Laplace(number)),
            _ => None,
        }
    });
    parsed.ok_or_else(|| parser.error(format!("unknown smoothing {value:?}")))
}

/// Recomputes the fingerprint from stored descriptor fields, mirroring
/// [`PipelineConfig::fingerprint`].
fn fingerprint_of_descriptor(descriptor: &PipelineDescriptor) -> String {
    let canonical = format!(
        "pipeline-v1\nnormalize={}\nstopwords={}\nstemming={}\ndict={}\nstoplist={}\n",
        descriptor.enable_normalization,
        descriptor.enable_stopword_removal,
        descriptor.enable_stemming,
        descriptor.dictionary_version,
        descriptor.stopword_version,
    );
    hex_digest(canonical.as_bytes())[..16].to_string()
}
