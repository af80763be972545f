//! Labeled SMS corpus loading, stratified splitting and descriptive stats.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pipeline::is_url_like;

/// Message class. `Smish` is the positive class everywhere in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Ham,
    Smish,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Ham => "ham",
            Label::Smish => "smish",
        }
    }

    /// The other class.
    pub fn flipped(self) -> Label {
        match self {
            Label::Ham => Label::Smish,
            Label::Smish => Label::Ham,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single SMS message with its gold label. `text` keeps the original
/// casing and punctuation; loaders reject records whose text is empty
/// after trimming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMessage {
    pub text: String,
    pub label: Label,
}

/// An ordered collection of labeled messages with cached class counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    messages: Vec<LabeledMessage>,
    ham_count: usize,
    smish_count: usize,
}

impl Corpus {
    /// Builds a corpus, counting classes. The counts are derived here so
    /// they can never disagree with the message list.
    pub fn new(messages: Vec<LabeledMessage>) -> Corpus {
        let ham_count = messages.iter().filter(|m| m.label == Label::Ham).count();
        let smish_count = messages.len() - ham_count;
        Corpus {
            messages,
            ham_count,
            smish_count,
        }
    }

    pub fn messages(&self) -> &[LabeledMessage] {
        &self.messages
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn ham_count(&self) -> usize {
        self.ham_count
    }

    pub fn smish_count(&self) -> usize {
        self.smish_count
    }

    pub fn class_count(&self, label: Label) -> usize {
        match label {
            Label::Ham => self.ham_count,
            Label::Smish => self.smish_count,
        }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabeledMessage> {
        self.messages.iter()
    }
}

/// On-disk corpus layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    /// `label<TAB>text`, one record per line. Text may contain anything
    /// except tab and newline.
    Tsv,
    /// RFC 4180 two-column `label,text` records (quoting supported).
    Csv,
}

impl CorpusFormat {
    /// Picks a format from the file extension; everything that is not
    /// `.csv` is treated as TSV.
    pub fn infer(path: &Path) -> CorpusFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => CorpusFormat::Csv,
            _ => CorpusFormat::Tsv,
        }
    }
}

/// Maps label tokens found in files onto [`Label`]s. Matching is
/// case-insensitive. The default accepts `ham`, `smish` and `spam`
/// (public SMS corpora label the positive class `spam`).
#[derive(Debug, Clone)]
pub struct LabelAliases {
    map: BTreeMap<String, Label>,
}

impl Default for LabelAliases {
    fn default() -> LabelAliases {
        let mut aliases = LabelAliases {
            map: BTreeMap::new(),
        };
        aliases.insert("ham", Label::Ham);
        aliases.insert("smish", Label::Smish);
        aliases.insert("spam", Label::Smish);
        aliases
    }
}

impl LabelAliases {
    /// An alias table with no entries.
    pub fn empty() -> LabelAliases {
        LabelAliases {
            map: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, token: &str, label: Label) {
        self.map.insert(token.to_lowercase(), label);
    }

    pub fn resolve(&self, token: &str) -> Option<Label> {
        self.map.get(&token.to_lowercase()).copied()
    }
}

/// Loads a corpus with the default label aliases.
pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus> {
    load_corpus_with_aliases(path, format, &LabelAliases::default())
}

/// Loads a corpus, resolving label tokens through `aliases`. Every line
/// must be a record; malformed records and unknown labels are reported
/// with their 1-based line number.
pub fn load_corpus_with_aliases(
    path: &Path,
    format: CorpusFormat,
    aliases: &LabelAliases,
) -> Result<Corpus> {
    let messages = match format {
        CorpusFormat::Tsv => load_tsv(path, aliases)?,
        CorpusFormat::Csv => load_csv(path, aliases)?,
    };
    if messages.is_empty() {
        return Err(Error::EmptyCorpus {
            context: path.display().to_string(),
        });
    }
    Ok(Corpus::new(messages))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn resolve_label(
    aliases: &LabelAliases,
    token: &str,
    path: &Path,
    line: u64,
) -> Result<Label> {
    aliases.resolve(token).ok_or_else(|| Error::UnknownLabel {
        path: path.to_path_buf(),
        line,
        token: token.to_string(),
    })
}

fn check_text(text: &str, path: &Path, line: u64) -> Result<()> {
    if text.trim().is_empty() {
        return Err(Error::MalformedRecord {
            path: path.to_path_buf(),
            line,
            reason: "empty message text".to_string(),
        });
    }
    Ok(())
}

fn load_tsv(path: &Path, aliases: &LabelAliases) -> Result<Vec<LabeledMessage>> {
    let content = read_file(path)?;
    let mut messages = Vec::new();
    for (idx, raw_line) in content.lines().enumerate() {
        let line_no = idx as u64 + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let Some((label_token, text)) = line.split_once('\t') else {
            return Err(Error::MalformedRecord {
                path: path.to_path_buf(),
                line: line_no,
                reason: "expected label<TAB>text".to_string(),
            });
        };
        let label = resolve_label(aliases, label_token, path, line_no)?;
        check_text(text, path, line_no)?;
        messages.push(LabeledMessage {
            text: text.to_string(),
            label,
        });
    }
    Ok(messages)
}

fn load_csv(path: &Path, aliases: &LabelAliases) -> Result<Vec<LabeledMessage>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let mut messages = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line_no = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(Error::MalformedRecord {
                path: path.to_path_buf(),
                line: line_no,
                reason: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let label = resolve_label(aliases, &record[0], path, line_no)?;
        check_text(&record[1], path, line_no)?;
        messages.push(LabeledMessage {
            text: record[1].to_string(),
            label,
        });
    }
    Ok(messages)
}

fn csv_error(path: &Path, err: csv::Error) -> Error {
    let line = err
        .position()
        .map_or(0, |p| p.line());
    match err.kind() {
        csv::ErrorKind::Io(_) => Error::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::Other, err.to_string()),
        },
        _ => Error::MalformedRecord {
            path: path.to_path_buf(),
            line,
            reason: err.to_string(),
        },
    }
}

/// A train/test partition of a corpus together with the parameters that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSplit {
    pub train: Corpus,
    pub test: Corpus,
    pub ratio: f64,
    pub seed: u64,
    pub stratified: bool,
}

/// Splits a corpus into train/test with a seeded Fisher-Yates shuffle
/// (ChaCha8, so splits are reproducible across platforms and releases).
///
/// The train side takes `ceil(ratio * n)` messages; when `stratified` is
/// set the rule is applied per class, the ham class is shuffled first,
/// and both output corpora preserve the input's relative message order.
pub fn split_corpus(
    corpus: &Corpus,
    ratio: f64,
    seed: u64,
    stratified: bool,
) -> Result<DatasetSplit> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::RatioOutOfRange { ratio });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (train_idx, test_idx) = if stratified {
        let mut train_idx = Vec::new();
        let mut test_idx = Vec::new();
        for label in [Label::Ham, Label::Smish] {
            let idx = class_indices(corpus, label);
            if idx.is_empty() {
                return Err(Error::EmptyClass { label });
            }
            let take = (ratio * idx.len() as f64).ceil() as usize;
            shuffle_and_take(idx, take, &mut rng, &mut train_idx, &mut test_idx);
        }
        (train_idx, test_idx)
    } else {
        let idx: Vec<usize> = (0..corpus.len()).collect();
        let take = (ratio * idx.len() as f64).ceil() as usize;
        let mut train_idx = Vec::new();
        let mut test_idx = Vec::new();
        shuffle_and_take(idx, take, &mut rng, &mut train_idx, &mut test_idx);
        (train_idx, test_idx)
    };
    Ok(assemble_split(corpus, train_idx, test_idx, ratio, seed, stratified))
}

/// Stratified split with explicit per-class train counts instead of a
/// ratio. Useful when a published experiment's class counts do not come
/// from one uniform ratio. The recorded `ratio` is the effective overall
/// train fraction.
pub fn split_corpus_with_counts(
    corpus: &Corpus,
    train_ham: usize,
    train_smish: usize,
    seed: u64,
) -> Result<DatasetSplit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for (label, requested) in [(Label::Ham, train_ham), (Label::Smish, train_smish)] {
        let idx = class_indices(corpus, label);
        if idx.is_empty() {
            return Err(Error::EmptyClass { label });
        }
        if requested == 0 {
            return Err(Error::TrainCountZero { label });
        }
        if requested > idx.len() {
            return Err(Error::TrainCountOutOfRange {
                label,
                requested,
                available: idx.len(),
            });
        }
        shuffle_and_take(idx, requested, &mut rng, &mut train_idx, &mut test_idx);
    }
    let ratio = (train_ham + train_smish) as f64 / corpus.len() as f64;
    Ok(assemble_split(corpus, train_idx, test_idx, ratio, seed, true))
}

fn class_indices(corpus: &Corpus, label: Label) -> Vec<usize> {
    corpus
        .iter()
        .enumerate()
        .filter(|(_, m)| m.label == label)
        .map(|(i, _)| i)
        .collect()
}

fn shuffle_and_take(
    mut idx: Vec<usize>,
    take: usize,
    rng: &mut ChaCha8Rng,
    train_idx: &mut Vec<usize>,
    test_idx: &mut Vec<usize>,
) {
    idx.shuffle(rng);
    let take = take.min(idx.len());
    train_idx.extend_from_slice(&idx[..take]);
    test_idx.extend_from_slice(&idx[take..]);
}

fn assemble_split(
    corpus: &Corpus,
    mut train_idx: Vec<usize>,
    mut test_idx: Vec<usize>,
    ratio: f64,
    seed: u64,
    stratified: bool,
) -> DatasetSplit {
    train_idx.sort_unstable();
    test_idx.sort_unstable();
    let pick = |idx: &[usize]| {
        Corpus::new(
            idx.iter()
                .map(|&i| corpus.messages()[i].clone())
                .collect(),
        )
    };
    DatasetSplit {
        train: pick(&train_idx),
        test: pick(&test_idx),
        ratio,
        seed,
        stratified,
    }
}

/// Per-class descriptive statistics over raw message text.
///
/// `avg_chars` counts Unicode scalar values, `avg_words` counts
/// whitespace-separated chunks, and the two presence rates are the
/// fraction of messages containing at least one URL-looking chunk or at
/// least one `$`/`€` character respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassStats {
    pub message_count: usize,
    pub avg_chars: f64,
    pub url_presence_rate: f64,
    pub avg_words: f64,
    pub currency_symbol_rate: f64,
}

impl ClassStats {
    fn zeroed() -> ClassStats {
        ClassStats {
            message_count: 0,
            avg_chars: 0.0,
            url_presence_rate: 0.0,
            avg_words: 0.0,
            currency_symbol_rate: 0.0,
        }
    }
}

/// Computes [`ClassStats`] for both classes. A class with no messages
/// gets all-zero stats; an entirely empty corpus is an error.
pub fn compute_stats(corpus: &Corpus) -> Result<BTreeMap<Label, ClassStats>> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus {
            context: "stats input".to_string(),
        });
    }
    let mut out = BTreeMap::new();
    for label in [Label::Ham, Label::Smish] {
        let mut count = 0usize;
        let mut chars = 0u64;
        let mut words = 0u64;
        let mut with_url = 0u64;
        let mut with_symbol = 0u64;
        for msg in corpus.iter().filter(|m| m.label == label) {
            count += 1;
            chars += msg.text.chars().count() as u64;
            words += msg.text.split_whitespace().count() as u64;
            if msg.text.split_whitespace().any(is_url_like) {
                with_url += 1;
            }
            if msg.text.chars().any(|c| c == '$' || c == '€') {
                with_symbol += 1;
            }
        }
        let stats = if count == 0 {
            ClassStats::zeroed()
        } else {
            let n = count as f64;
            ClassStats {
                message_count: count,
                avg_chars: chars as f64 / n,
                url_presence_rate: with_url as f64 / n,
                avg_words: words as f64 / n,
                currency_symbol_rate: with_symbol as f64 / n,
            }
        };
        out.insert(label, stats);
    }
    Ok(out)
}
