//! Evaluation: confusion matrices, derived metrics, and the
//! normalization ablation harness.
//!
//! Smish is the positive class everywhere. Metrics with a zero
//! denominator are reported as 0.0 and flagged in
//! [`UndefinedMetrics`] so callers can tell "really zero" from
//! "undefined".

use crate::bayes::{classify, train, SmoothingConfig, TrainedModel};
use crate::corpus::{split_corpus, split_corpus_with_counts, Corpus, DatasetSplit, Label};
use crate::error::{Error, Result};
use crate::lingo::{hex_digest, LingoDictionary};
use crate::pipeline::{PipelineConfig, StopwordSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    /// Smish messages classified Smish.
    pub true_positives: u64,
    /// Ham messages classified Smish.
    pub false_positives: u64,
    /// Ham messages classified Ham.
    pub true_negatives: u64,
    /// Smish messages classified Ham.
    pub false_negatives: u64,
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.true_positives + self.false_positives + self.true_negatives + self.false_negatives
    }

    fn record(&mut self, actual: Label, predicted: Label) {
        match (actual, predicted) {
            (Label::Smish, Label::Smish) => self.true_positives += 1,
            (Label::Ham, Label::Smish) => self.false_positives += 1,
            (Label::Ham, Label::Ham) => self.true_negatives += 1,
            (Label::Smish, Label::Ham) => self.false_negatives += 1,
        }
    }
}

/// Which metrics in a [`MetricsReport`] had a zero denominator (and
/// were therefore reported as 0.0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UndefinedMetrics {
    pub accuracy: bool,
    pub precision: bool,
    pub recall: bool,
    pub f1: bool,
    pub true_positive_rate: bool,
    pub false_positive_rate: bool,
    pub true_negative_rate: bool,
    pub false_negative_rate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub true_positive_rate: f64,
    pub false_positive_rate: f64,
    pub true_negative_rate: f64,
    pub false_negative_rate: f64,
    pub undefined: UndefinedMetrics,
}

fn ratio_or_zero(numerator: u64, denominator: u64, undefined: &mut bool) -> f64 {
    if denominator == 0 {
        *undefined = true;
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}

/// Derives the standard rates from a confusion matrix, Smish positive.
/// `f1` uses the harmonic-mean identity `2tp / (2tp + fp + fn)`.
pub fn metrics(matrix: &ConfusionMatrix) -> MetricsReport {
    let tp = matrix.true_positives;
    let fp = matrix.false_positives;
    let tn = matrix.true_negatives;
    let fn_ = matrix.false_negatives;
    let mut undefined = UndefinedMetrics::default();
    let accuracy = ratio_or_zero(tp + tn, matrix.total(), &mut undefined.accuracy);
    let precision = ratio_or_zero(tp, tp + fp, &mut undefined.precision);
    let recall = ratio_or_zero(tp, tp + fn_, &mut undefined.recall);
    let f1 = ratio_or_zero(2 * tp, 2 * tp + fp + fn_, &mut undefined.f1);
    let true_positive_rate = ratio_or_zero(tp, tp + fn_, &mut undefined.true_positive_rate);
    let false_positive_rate = ratio_or_zero(fp, fp + tn, &mut undefined.false_positive_rate);
    let true_negative_rate = ratio_or_zero(tn, tn + fp, &mut undefined.true_negative_rate);
    let false_negative_rate = ratio_or_zero(fn_, fn_ + tp, &mut undefined.false_negative_rate);
    MetricsReport {
        accuracy,
        precision,
        recall,
        f1,
        true_positive_rate,
        false_positive_rate,
        true_negative_rate,
        false_negative_rate,
        undefined,
    }
}

/// Order-independent 16-hex digest of a labeled corpus, used to prove
/// two evaluation runs saw the same test set. (The digest is over the
/// corpus in its stored order, which the split functions make
/// deterministic.)
pub fn corpus_digest(corpus: &Corpus) -> String {
    let mut buf = String::new();
    for message in corpus.iter() {
        buf.push_str(message.label.as_str());
        buf.push('\t');
        buf.push_str(&message.text);
        buf.push('\n');
    }
    hex_digest(buf.as_bytes())[..16].to_string()
}

/// One evaluated configuration: its pipeline fingerprint, confusion
/// matrix, derived metrics, and the digest of the test set scored.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmReport {
    pub fingerprint: String,
    pub matrix: ConfusionMatrix,
    pub metrics: MetricsReport,
    pub test_digest: String,
}

/// Classifies every message of `test` with `model` and tallies the
/// confusion matrix. `config` must be the pipeline the model was
/// trained with.
pub fn evaluate(model: &TrainedModel, test: &Corpus, config: &PipelineConfig) -> Result<ArmReport> {
    if test.is_empty() {
        return Err(Error::EmptyCorpus {
            context: "evaluation corpus".to_string(),
        });
    }
    let mut matrix = ConfusionMatrix::default();
    for message in test.iter() {
        let result = classify(model, &message.text, config)?;
        matrix.record(message.label, result.label);
    }
    Ok(ArmReport {
        fingerprint: config.fingerprint(),
        matrix,
        metrics: metrics(&matrix),
        test_digest: corpus_digest(test),
    })
}

/// Paired evaluation of the full pipeline against the same pipeline
/// with slang normalization disabled, over one shared train/test split.
#[derive(Debug, Clone, PartialEq)]
pub struct AblationReport {
    pub with_normalization: ArmReport,
    pub without_normalization: ArmReport,
    pub seed: u64,
    pub ratio: f64,
    pub train_ham: usize,
    pub train_smish: usize,
    pub test_ham: usize,
    pub test_smish: usize,
}

/// Runs both ablation arms on an already-made split. Both arms train
/// and evaluate on the identical message sets; only the normalization
/// stage differs.
pub fn run_ablation_on_split(
    split: &DatasetSplit,
    dictionary: &LingoDictionary,
    stopwords: &StopwordSet,
    smoothing: &SmoothingConfig,
) -> Result<AblationReport> {
    let with_config = PipelineConfig::new(dictionary.clone(), stopwords.clone());
    let mut without_config = PipelineConfig::new(dictionary.clone(), stopwords.clone());
    without_config.enable_normalization = false;

    let with_model = train(&split.train, &with_config, smoothing)?;
    let without_model = train(&split.train, &without_config, smoothing)?;
    let with_normalization = evaluate(&with_model, &split.test, &with_config)?;
    let without_normalization = evaluate(&without_model, &split.test, &without_config)?;
    Ok(AblationReport {
        with_normalization,
        without_normalization,
        seed: split.seed,
        ratio: split.ratio,
        train_ham: split.train.ham_count(),
        train_smish: split.train.smish_count(),
        test_ham: split.test.ham_count(),
        test_smish: split.test.smish_count(),
    })
}

/// Splits `corpus` (stratified when `train_counts` is `None`, exact
/// per-class counts otherwise) and runs both ablation arms on the
/// shared split.
pub fn run_ablation(
    corpus: &Corpus,
    ratio: f64,
    seed: u64,
    train_counts: Option<(usize, usize)>,
    dictionary: &LingoDictionary,
    stopwords: &StopwordSet,
    smoothing: &SmoothingConfig,
) -> Result<AblationReport> {
    let split = match train_counts {
        Some((train_ham, train_smish)) => {
            split_corpus_with_counts(corpus, train_ham, train_smish, seed)?
        }
        None => split_corpus(corpus, ratio, seed, true)?,
    };
    run_ablation_on_split(&split, dictionary, stopwords, smoothing)
}
