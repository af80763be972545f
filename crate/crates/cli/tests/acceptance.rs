// Acceptance gates for the toolkit. One test per shipped guarantee:
//
//   1. confusion-matrix rates reproduce the reference evaluation rows
//   2. class-conditional probabilities are exact document-count ratios
//   3. end-to-end result on the public SMS Spam Collection (needs the
//      corpus file on disk; the test says how to supply it)
//   4. normalize output matches the golden files byte for byte, and the
//      stage invariants hold under fuzz
//   5. log-space decisions agree with a linear-space product oracle
//   6. counting and decision invariances: token duplication, uniform
//      probability scaling, label swap
//   7. model persistence round-trips exactly and rejects corruption
//
// Every test is deterministic (fixed RNG seeds).

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sha2::{Digest, Sha256};

use smish_core::bayes::{
    classify, load_model, save_model, score, term_probability, train, ClassConditionalTable,
    SmoothingConfig, SmoothingMode, UnknownTokenPolicy,
};
use smish_core::corpus::{load_corpus, Corpus, CorpusFormat, Label, LabeledMessage};
use smish_core::eval::{metrics, run_ablation, ConfusionMatrix};
use smish_core::lingo::bundled_dictionary;
use smish_core::pipeline::{
    bundled_stopwords, lowercase, normalize, preprocess, remove_stopwords, tokenize,
    PipelineConfig,
};
use smish_core::porter::stem;
use smish_core::Error;

fn workspace_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn corpus_of(docs: &[(Label, String)]) -> Corpus {
    Corpus::new(
        docs.iter()
            .map(|(label, text)| LabeledMessage {
                text: text.clone(),
                label: *label,
            })
            .collect(),
    )
}

/// Pipeline with every stage disabled: tokenize + lowercase only, so
/// plain ascii words pass through untouched.
fn raw_token_config() -> PipelineConfig {
    let mut config = PipelineConfig::new(bundled_dictionary(), bundled_stopwords());
    config.enable_normalization = false;
    config.enable_stopword_removal = false;
    config.enable_stemming = false;
    config
}

// ---------------------------------------------------------------- 1 --

#[test]
fn criterion_1_confusion_matrix_rates_match_reference() {
    // (matrix, expected [tpr, tnr, fpr, fnr, accuracy] in percent)
    let cases = [
        (
            ConfusionMatrix {
                true_positives: 34,
                false_negatives: 1,
                true_negatives: 447,
                false_positives: 18,
            },
            [97.14, 96.12, 3.87, 2.85, 96.2],
        ),
        (
            ConfusionMatrix {
                true_positives: 33,
                false_negatives: 2,
                true_negatives: 408,
                false_positives: 57,
            },
            [94.28, 87.74, 12.25, 5.71, 88.2],
        ),
    ];
    for (matrix, expected) in &cases {
        let report = metrics(matrix);
        let got = [
            report.true_positive_rate,
            report.true_negative_rate,
            report.false_positive_rate,
            report.false_negative_rate,
            report.accuracy,
        ];
        let names = ["tpr", "tnr", "fpr", "fnr", "accuracy"];
        for ((name, value), want) in names.iter().zip(got).zip(expected) {
            let pct = value * 100.0;
            assert!(
                (pct - want).abs() <= 0.01,
                "{name} for {matrix:?}: got {pct}, want {want} (+-0.01pp)"
            );
        }
    }
    // the exact fractions behind the rounded rates
    let first = metrics(&cases[0].0);
    assert_eq!(first.true_positive_rate, 34.0 / 35.0);
    assert_eq!(first.false_positive_rate, 18.0 / 465.0);
    assert_eq!(first.accuracy, 481.0 / 500.0);
    let second = metrics(&cases[1].0);
    assert_eq!(second.true_negative_rate, 408.0 / 465.0);
    assert_eq!(second.accuracy, 441.0 / 500.0);
}

// ---------------------------------------------------------------- 2 --

#[test]
fn criterion_2_probabilities_are_document_count_ratios() {
    let table = |entries: &[(&str, u32)], total: u32| {
        ClassConditionalTable::new(
            entries
                .iter()
                .map(|(term, count)| (term.to_string(), *count))
                .collect(),
            total,
        )
    };
    let smish = table(&[("call", 145), ("prize", 75), ("bank", 4)], 327);
    let ham = table(&[("call", 271), ("bank", 10)], 4342);
    let cases: [(&ClassConditionalTable, &str, f64); 5] = [
        (&smish, "call", 0.443425),
        (&smish, "prize", 0.229358),
        (&smish, "bank", 0.012232),
        (&ham, "call", 0.062414),
        (&ham, "bank", 0.002303),
    ];
    for (table, term, want) in cases {
        let got = table.probability(term);
        assert!(
            (got - want).abs() <= 5e-7,
            "p({term}) = {got}, want {want} (+-5e-7)"
        );
    }

    // conversely: every stored probability in a trained model, times the
    // class document total, lands on an integer (the document count)
    let docs: Vec<(Label, String)> = [
        (Label::Ham, "lunch at noon tomorrow?"),
        (Label::Ham, "running late, be there in 10"),
        (Label::Ham, "thanks for the ride home"),
        (Label::Ham, "movie night friday with the kids"),
        (Label::Ham, "can you pick up milk on the way"),
        (Label::Ham, "meeting moved to room 4"),
        (Label::Smish, "URGENT claim ur FREE prize now http://win.example.com"),
        (Label::Smish, "your account is suspended, verify asap"),
        (Label::Smish, "u won cash!! txt CLAIM to 81010"),
        (Label::Smish, "final notice: unpaid toll, pay at www.toll.example/pay"),
        (Label::Smish, "bank alert: confirm your card number"),
    ]
    .iter()
    .map(|(label, text)| (*label, text.to_string()))
    .collect();
    let corpus = corpus_of(&docs);
    let config = PipelineConfig::new(bundled_dictionary(), bundled_stopwords());
    let smoothings = [
        SmoothingConfig::default(),
        SmoothingConfig {
            mode: SmoothingMode::Laplace(1.0),
            ..SmoothingConfig::default()
        },
        SmoothingConfig {
            mode: SmoothingMode::None,
            ..SmoothingConfig::default()
        },
    ];
    for smoothing in &smoothings {
        let model = train(&corpus, &config, smoothing).unwrap();
        for label in [Label::Ham, Label::Smish] {
            let table = model.table(label);
            let total = table.total_docs() as f64;
            for (term, count) in table.iter() {
                let p = term_probability(table, term, smoothing);
                let scaled = p * total;
                assert!(
                    (scaled - scaled.round()).abs() <= 1e-9,
                    "{label} p({term}) * {total} = {scaled} is not integral"
                );
                assert_eq!(scaled.round() as u32, count);
            }
        }
    }
}

// ---------------------------------------------------------------- 3 --

fn sms_spam_collection() -> Option<PathBuf> {
    let bundled = workspace_path("data/sms_spam_collection.tsv");
    if bundled.exists() {
        return Some(bundled);
    }
    std::env::var_os("SMS_SPAM_CORPUS")
        .map(PathBuf::from)
        .filter(|p| p.exists())
}

#[test]
fn criterion_3_public_sms_spam_collection_benchmark() {
    let Some(path) = sms_spam_collection() else {
        panic!(
            "\nSMS Spam Collection not found. This benchmark needs the public corpus:\n\
             \n\
               1. download the SMS Spam Collection v.1 (UCI machine learning repository),\n\
               2. save it as data/sms_spam_collection.tsv at the repository root\n\
             (tab-separated `label<TAB>text`, labels ham/spam), or point\n\
             SMS_SPAM_CORPUS at the file, then re-run.\n\
             \n\
             The suite never downloads data on its own.\n"
        );
    };
    let started = Instant::now();
    let corpus = load_corpus(&path, CorpusFormat::Tsv).unwrap();
    assert!(
        corpus.len() >= 5000,
        "expected the full 5,574-message collection, got {} messages",
        corpus.len()
    );
    let report = run_ablation(
        &corpus,
        0.9,
        42,
        None,
        &bundled_dictionary(),
        &bundled_stopwords(),
        &SmoothingConfig::default(),
    )
    .unwrap();
    let with = &report.with_normalization;
    let without = &report.without_normalization;
    assert_eq!(
        with.test_digest, without.test_digest,
        "ablation arms must be evaluated on the identical test split"
    );
    assert!(
        with.metrics.accuracy >= 0.90,
        "accuracy {} below 0.90",
        with.metrics.accuracy
    );
    assert!(
        with.metrics.true_positive_rate >= 0.80,
        "tpr {} below 0.80",
        with.metrics.true_positive_rate
    );
    assert!(
        started.elapsed() < Duration::from_secs(30),
        "benchmark took {:?}",
        started.elapsed()
    );
}

// ---------------------------------------------------------------- 4 --

fn fuzz_text(rng: &mut StdRng, slang: &[String]) -> String {
    const WORDS: &[&str] = &[
        "free", "prize", "meeting", "lunch", "account", "verify", "winner", "tomorrow",
        "running", "hopeful", "caresses", "electrical", "apple's",
    ];
    const STOPS: &[&str] = &["the", "is", "at", "your", "you", "of", "a", "on", "and", "for"];
    const URLS: &[&str] = &[
        "http://a.example.com/x",
        "HTTPS://Secure.example.NET/Login",
        "www.track.example/id?q=1",
        "embedded:https://b.example.io/p",
        "notaurl.example",
    ];
    const UNICODE: &[&str] = &["café", "naïve", "привет", "你好", "mañana", "☎", "€", "…", "'"];
    const SEPS: &[&str] = &[" ", " ", " ", "  ", "\t", " -- ", ", ", "! ", "?"];
    let chunks = rng.gen_range(0..=12);
    let mut out = String::new();
    for i in 0..chunks {
        if i > 0 {
            out.push_str(SEPS[rng.gen_range(0..SEPS.len())]);
        }
        let roll = rng.gen_range(0..100);
        let chunk = if roll < 25 {
            slang[rng.gen_range(0..slang.len())].clone()
        } else if roll < 40 {
            STOPS[rng.gen_range(0..STOPS.len())].to_string()
        } else if roll < 55 {
            URLS[rng.gen_range(0..URLS.len())].to_string()
        } else if roll < 65 {
            UNICODE[rng.gen_range(0..UNICODE.len())].to_string()
        } else if roll < 75 {
            format!("{}", rng.gen_range(0..100_000))
        } else {
            WORDS[rng.gen_range(0..WORDS.len())].to_string()
        };
        if rng.gen_bool(0.3) {
            out.push_str(&chunk.to_uppercase());
        } else {
            out.push_str(&chunk);
        }
    }
    out
}

#[test]
fn criterion_4_normalize_golden_files_and_stage_invariants() {
    // byte-for-byte against the checked-in golden outputs
    let messages = workspace_path("data/golden/messages.txt");
    let count = fs::read_to_string(&messages).unwrap().lines().count();
    assert!(count >= 50, "golden corpus has only {count} messages");
    let goldens: [(&str, Option<&str>); 2] = [
        ("data/golden/normalized_default.kv", None),
        ("data/golden/normalized_no_normalize.kv", Some("--no-normalize")),
    ];
    for (golden, flag) in goldens {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_smish"));
        cmd.args(["--format", "kv", "normalize"]);
        if let Some(flag) = flag {
            cmd.arg(flag);
        }
        cmd.arg("--file").arg(&messages);
        let out = cmd.output().unwrap();
        assert!(
            out.status.success(),
            "normalize failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let got = String::from_utf8(out.stdout).unwrap();
        let want = fs::read_to_string(workspace_path(golden)).unwrap();
        assert_eq!(got, want, "{golden} drifted");
    }

    // stage invariants on 10,000 seeded fuzz inputs
    let config = PipelineConfig::new(bundled_dictionary(), bundled_stopwords());
    let mut no_stem = config.clone();
    no_stem.enable_stemming = false;
    let slang: Vec<String> = config.dictionary.iter().map(|(k, _)| k.to_string()).collect();
    assert!(!slang.is_empty());
    let mut rng = StdRng::seed_from_u64(0x4_600D);
    for _ in 0..10_000 {
        let text = fuzz_text(&mut rng, &slang);

        // deterministic
        let once = preprocess(&text, &config);
        assert_eq!(once, preprocess(&text, &config));

        // the pipeline is exactly the composition of its stages
        let lowered = lowercase(&tokenize(&text));
        let expanded = normalize(&lowered, &config.dictionary);
        let kept = remove_stopwords(&expanded, &config.stopwords);
        let manual: Vec<String> = kept.iter().map(|t| stem(t)).filter(|t| !t.is_empty()).collect();
        assert_eq!(once.tokens, manual, "stage composition broke on {text:?}");

        // token-count arithmetic of the expansion stage
        let expected: usize = lowered
            .iter()
            .map(|t| config.dictionary.lookup(t).map_or(1, |words| words.len()))
            .sum();
        assert_eq!(expanded.len(), expected, "expansion count broke on {text:?}");

        // outputs are lowercase and non-empty
        for token in &once.tokens {
            assert!(!token.is_empty());
            assert!(
                !token.chars().any(|c| c.is_uppercase()),
                "uppercase survived: {token:?} in {text:?}"
            );
        }

        // with stemming off, no stop word survives removal
        for token in &preprocess(&text, &no_stem).tokens {
            assert!(
                !no_stem.stopwords.contains(token),
                "stop word survived: {token:?} in {text:?}"
            );
        }
    }
}

// ---------------------------------------------------------------- 5 --

#[test]
fn criterion_5_log_decisions_match_linear_product_oracle() {
    let vocab: Vec<String> = (0..15).map(|i| format!("w{i}")).collect();
    let config = raw_token_config();
    let smoothing = SmoothingConfig {
        mode: SmoothingMode::None,
        use_priors: false,
        unknown_token_policy: UnknownTokenPolicy::Ignore,
    };
    let mut rng = StdRng::seed_from_u64(0x5EED_0005);
    let mut decided = 0usize;
    let mut ties = 0usize;
    while decided < 1000 {
        let n_ham = rng.gen_range(1..=10usize);
        let n_smish = rng.gen_range(1..=10usize);
        let mut docs: Vec<(Label, String)> = Vec::new();
        for (label, n) in [(Label::Ham, n_ham), (Label::Smish, n_smish)] {
            for i in 0..n {
                let text = if i == 0 {
                    // every vocabulary word appears in each class, so no
                    // ratio is ever zero
                    vocab.join(" ")
                } else {
                    let subset: Vec<&str> = vocab
                        .iter()
                        .filter(|_| rng.gen_bool(0.5))
                        .map(|w| w.as_str())
                        .collect();
                    if subset.is_empty() {
                        vocab[rng.gen_range(0..vocab.len())].clone()
                    } else {
                        subset.join(" ")
                    }
                };
                docs.push((label, text));
            }
        }
        let probe: String = (0..rng.gen_range(1..=12))
            .map(|_| vocab[rng.gen_range(0..vocab.len())].as_str())
            .collect::<Vec<_>>()
            .join(" ");
        let Some(want) = linear_oracle(&docs, n_ham, n_smish, &probe) else {
            // exactly tied products exercise only the tie rule, whose
            // outcome depends on rounding order, not on the log/linear
            // question; draw a fresh trial instead
            ties += 1;
            assert!(ties < 200, "tie rate implausibly high");
            continue;
        };
        let model = train(&corpus_of(&docs), &config, &smoothing).unwrap();
        let got = classify(&model, &probe, &config).unwrap().label;
        assert_eq!(
            got, want,
            "trial {decided}: probe {probe:?} docs {docs:?}"
        );
        decided += 1;
    }
}

/// Brute-force linear-space product classifier over raw message text.
/// Products are compared exactly: with k scored terms the comparison
/// `prod(c_smish)/n_smish^k > prod(c_ham)/n_ham^k` cross-multiplies to
/// integer arithmetic (everything fits in u128: counts <= 10, k <= 12).
/// Returns None when the products are exactly equal.
fn linear_oracle(
    docs: &[(Label, String)],
    n_ham: usize,
    n_smish: usize,
    probe: &str,
) -> Option<Label> {
    let containing = |label: Label, term: &str| {
        docs.iter()
            .filter(|(l, text)| *l == label && text.split_whitespace().any(|w| w == term))
            .count() as u128
    };
    let mut seen = HashSet::new();
    let mut product_ham: u128 = 1;
    let mut product_smish: u128 = 1;
    let mut used = 0u32;
    for term in probe.split_whitespace() {
        if !seen.insert(term) {
            continue;
        }
        let in_ham = containing(Label::Ham, term);
        let in_smish = containing(Label::Smish, term);
        if in_ham == 0 && in_smish == 0 {
            continue;
        }
        product_ham *= in_ham;
        product_smish *= in_smish;
        used += 1;
    }
    if used == 0 {
        return Some(Label::Ham);
    }
    let lhs = product_smish * (n_ham as u128).pow(used);
    let rhs = product_ham * (n_smish as u128).pow(used);
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => Some(Label::Smish),
        std::cmp::Ordering::Less => Some(Label::Ham),
        std::cmp::Ordering::Equal => None,
    }
}

// ---------------------------------------------------------------- 6 --

const POOL: &[&str] = &[
    "alpha", "bravo", "cash", "delta", "echo", "free", "golf", "hotel", "india", "prize",
    "kilo", "lima",
];

fn random_docs(rng: &mut StdRng) -> Vec<(Label, String)> {
    let mut docs = Vec::new();
    for label in [Label::Ham, Label::Smish] {
        for _ in 0..rng.gen_range(2..=6usize) {
            let words: Vec<&str> = (0..rng.gen_range(1..=6usize))
                .map(|_| POOL[rng.gen_range(0..POOL.len())])
                .collect();
            docs.push((label, words.join(" ")));
        }
    }
    docs
}

fn random_probe(rng: &mut StdRng) -> String {
    (0..rng.gen_range(1..=8usize))
        .map(|_| POOL[rng.gen_range(0..POOL.len())])
        .collect::<Vec<_>>()
        .join(" ")
}

#[test]
fn criterion_6_counting_and_decision_invariances() {
    let config = raw_token_config();
    let smoothing = SmoothingConfig {
        mode: SmoothingMode::None,
        use_priors: false,
        unknown_token_policy: UnknownTokenPolicy::Ignore,
    };

    // (a) duplicating every token inside a message changes nothing: the
    // counts are document counts
    let mut rng = StdRng::seed_from_u64(0x6A);
    for _ in 0..1000 {
        let docs = random_docs(&mut rng);
        let doubled: Vec<(Label, String)> = docs
            .iter()
            .map(|(label, text)| (*label, format!("{text} {text}")))
            .collect();
        let plain = train(&corpus_of(&docs), &config, &smoothing).unwrap();
        let dup = train(&corpus_of(&doubled), &config, &smoothing).unwrap();
        assert_eq!(plain, dup);
    }

    // (b) scale invariance. Replicating the whole corpus k times leaves
    // every probability and score bit-identical; scaling both classes'
    // totals by k (so every probability is multiplied by 1/k) flips no
    // decision.
    let mut rng = StdRng::seed_from_u64(0x6B);
    for _ in 0..1000 {
        let docs = random_docs(&mut rng);
        let k = rng.gen_range(2..=5u32);
        let replicated: Vec<(Label, String)> = std::iter::repeat(docs.clone())
            .take(k as usize)
            .flatten()
            .collect();
        let base = train(&corpus_of(&docs), &config, &smoothing).unwrap();
        let big = train(&corpus_of(&replicated), &config, &smoothing).unwrap();
        for label in [Label::Ham, Label::Smish] {
            assert_eq!(base.prior_ham, big.prior_ham);
            assert_eq!(base.prior_smish, big.prior_smish);
            for (term, _) in base.table(label).iter() {
                assert_eq!(
                    base.table(label).probability(term),
                    big.table(label).probability(term),
                    "replication changed p({term})"
                );
            }
        }
        let probe = random_probe(&mut rng);
        let message = preprocess(&probe, &config);
        assert_eq!(score(&base, &message).unwrap(), score(&big, &message).unwrap());

        // direct scaling: same counts, totals multiplied by k
        let scaled = |table: &ClassConditionalTable| {
            ClassConditionalTable::new(
                table.iter().map(|(t, c)| (t.to_string(), c)).collect(),
                table.total_docs() * k,
            )
        };
        let decide = |ham: &ClassConditionalTable, smish: &ClassConditionalTable| {
            let mut seen = HashSet::new();
            let mut log_ham = 0.0f64;
            let mut log_smish = 0.0f64;
            let mut used = 0usize;
            for term in &message.tokens {
                if !seen.insert(term.as_str()) {
                    continue;
                }
                if !ham.contains(term) && !smish.contains(term) {
                    continue;
                }
                log_ham += term_probability(ham, term, &smoothing).ln();
                log_smish += term_probability(smish, term, &smoothing).ln();
                used += 1;
            }
            if used > 0 && log_smish > log_ham {
                Label::Smish
            } else {
                Label::Ham
            }
        };
        let unscaled = decide(base.table(Label::Ham), base.table(Label::Smish));
        assert_eq!(unscaled, classify(&base, &probe, &config).unwrap().label);
        assert_eq!(
            unscaled,
            decide(&scaled(base.table(Label::Ham)), &scaled(base.table(Label::Smish))),
            "scaling totals by {k} flipped a decision on {probe:?}"
        );
    }

    // (c) swapping every label swaps the tables, priors, and scores
    let mut rng = StdRng::seed_from_u64(0x6C);
    for _ in 0..1000 {
        let docs = random_docs(&mut rng);
        let flipped: Vec<(Label, String)> = docs
            .iter()
            .map(|(label, text)| (label.flipped(), text.clone()))
            .collect();
        let a = train(&corpus_of(&docs), &config, &smoothing).unwrap();
        let b = train(&corpus_of(&flipped), &config, &smoothing).unwrap();
        assert_eq!(a.table(Label::Ham), b.table(Label::Smish));
        assert_eq!(a.table(Label::Smish), b.table(Label::Ham));
        assert_eq!(a.prior_ham, b.prior_smish);
        assert_eq!(a.prior_smish, b.prior_ham);
        let message = preprocess(&random_probe(&mut rng), &config);
        let (a_ham, a_smish) = score(&a, &message).unwrap();
        let (b_ham, b_smish) = score(&b, &message).unwrap();
        assert_eq!((a_ham, a_smish), (b_smish, b_ham));
    }
}

// ---------------------------------------------------------------- 7 --

fn random_smoothing(rng: &mut StdRng) -> SmoothingConfig {
    let mode = match rng.gen_range(0..3) {
        0 => SmoothingMode::FloorEpsilon(rng.gen_range(1e-9..1e-3)),
        1 => SmoothingMode::Laplace(rng.gen_range(0.1..5.0)),
        _ => SmoothingMode::None,
    };
    SmoothingConfig {
        mode,
        use_priors: rng.gen_bool(0.5),
        unknown_token_policy: if rng.gen_bool(0.5) {
            UnknownTokenPolicy::Ignore
        } else {
            UnknownTokenPolicy::TreatAsUnseen
        },
    }
}

fn random_training_corpus(rng: &mut StdRng) -> Corpus {
    const TEXTS: &[&str] = &[
        "claim ur free prize now",
        "u won cash txt back asap",
        "verify your account at http://bank.example.com/verify",
        "final notice pay the toll at www.toll.example/pay",
        "lunch at noon tomorrow?",
        "thanks for the ride home",
        "movie night friday, bring the kids",
        "running late be there in 10",
        "café tomorrow with naïve friends",
        "meeting moved to room 4",
    ];
    let mut docs = Vec::new();
    for label in [Label::Ham, Label::Smish] {
        for _ in 0..rng.gen_range(2..=5usize) {
            let text = TEXTS[rng.gen_range(0..TEXTS.len())].to_string();
            docs.push((label, text));
        }
    }
    corpus_of(&docs)
}

#[test]
fn criterion_7_model_persistence_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dictionary = bundled_dictionary();
    let stopwords = bundled_stopwords();
    let mut rng = StdRng::seed_from_u64(0x70_F11E);

    // 100 randomly configured models survive save -> load field-identical
    for trial in 0..100 {
        let mut config = PipelineConfig::new(dictionary.clone(), stopwords.clone());
        config.enable_normalization = rng.gen_bool(0.5);
        config.enable_stopword_removal = rng.gen_bool(0.5);
        config.enable_stemming = rng.gen_bool(0.5);
        let smoothing = random_smoothing(&mut rng);
        let model = train(&random_training_corpus(&mut rng), &config, &smoothing).unwrap();
        let path = dir.path().join(format!("model_{trial}.smish"));
        save_model(&model, &path).unwrap();
        let loaded = load_model(&path).unwrap();
        assert_eq!(model, loaded, "trial {trial} did not round-trip");
        // the rendering is canonical: saving the loaded model reproduces
        // the file byte for byte
        let again = dir.path().join(format!("model_{trial}_again.smish"));
        save_model(&loaded, &again).unwrap();
        assert_eq!(fs::read(&path).unwrap(), fs::read(&again).unwrap());
    }

    // corrupted files are rejected with the documented error class
    let config = PipelineConfig::new(dictionary.clone(), stopwords.clone());
    let model = train(
        &random_training_corpus(&mut rng),
        &config,
        &SmoothingConfig::default(),
    )
    .unwrap();
    let path = dir.path().join("victim.smish");
    save_model(&model, &path).unwrap();
    let original = fs::read_to_string(&path).unwrap();
    let reload = |contents: &str| {
        let mangled = dir.path().join("mangled.smish");
        fs::write(&mangled, contents).unwrap();
        load_model(&mangled).unwrap_err()
    };

    // any byte flip in the payload breaks the checksum
    let tampered = original.replacen("ham-docs", "ham-Docs", 1);
    assert_ne!(tampered, original);
    assert!(matches!(reload(&tampered), Error::ModelChecksum { .. }));

    // truncation loses the checksum trailer
    let half: String = original.lines().take(4).collect::<Vec<_>>().join("\n");
    assert!(matches!(reload(&half), Error::ModelTruncated { .. }));

    // a consistent file with an unknown version line is rejected as such
    let future_payload = original
        [..original.rfind("\nchecksum ").unwrap() + 1]
        .replacen("smish-model v1", "smish-model v9", 1);
    let checksum = {
        let mut hasher = Sha256::new();
        hasher.update(future_payload.as_bytes());
        format!("{:x}", hasher.finalize())
    };
    let future = format!("{future_payload}checksum {checksum}\n");
    assert!(matches!(reload(&future), Error::ModelVersion { .. }));
}
