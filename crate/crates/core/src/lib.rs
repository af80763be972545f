//! Core library for the smishing detection toolkit: corpus handling,
//! text normalization, a document-frequency naive Bayes classifier, and
//! evaluation utilities.
//!
//! The crate is organized as a pipeline. [`corpus`] loads labeled SMS
//! datasets and produces seeded train/test splits. [`pipeline`] turns
//! raw message text into normalized tokens (tokenize, lowercase, slang
//! normalization via [`lingo`], stop-word removal, stemming via
//! [`porter`]). [`bayes`] trains and applies the classifier and owns
//! the model file format. [`eval`] computes confusion matrices and
//! metrics and runs the normalization ablation.
//!
//! ```
//! use smish_core::bayes::{classify, train, SmoothingConfig};
//! use smish_core::corpus::{Corpus, Label, LabeledMessage};
//! use smish_core::lingo::bundled_dictionary;
//! use smish_core::pipeline::{bundled_stopwords, PipelineConfig};
//!
//! let corpus = Corpus::new(vec![
//!     LabeledMessage { text: "lunch tomorrow?".into(), label: Label::Ham },
//!     LabeledMessage { text: "WIN a FREE prize now".into(), label: Label::Smish },
//! ]);
//! let config = PipelineConfig::new(bundled_dictionary(), bundled_stopwords());
//! let model = train(&corpus, &config, &SmoothingConfig::default()).unwrap();
//! let verdict = classify(&model, "free prize!!", &config).unwrap();
//! assert_eq!(verdict.label, Label::Smish);
//! ```

pub mod bayes;
pub mod corpus;
mod error;
pub mod eval;
pub mod lingo;
pub mod pipeline;
pub mod porter;

pub use bayes::{
    classify, load_model, save_model, score, term_probability, train, ClassConditionalTable,
    ClassificationResult, PipelineDescriptor, SmoothingConfig, SmoothingMode, TrainedModel,
    UnknownTokenPolicy,
};
pub use corpus::{
    compute_stats, load_corpus, load_corpus_with_aliases, split_corpus, split_corpus_with_counts,
    ClassStats, Corpus, CorpusFormat, DatasetSplit, Label, LabelAliases, LabeledMessage,
};
pub use error::{Error, Result};
pub use eval::{
    corpus_digest, evaluate, metrics, run_ablation, run_ablation_on_split, AblationReport,
    ArmReport, ConfusionMatrix, MetricsReport, UndefinedMetrics,
};
pub use lingo::{bundled_dictionary, load_dictionary, LingoDictionary};
pub use pipeline::{
    bundled_stopwords, is_url_like, preprocess, NormalizedMessage, PipelineConfig, StopwordSet,
};
pub use porter::stem;
