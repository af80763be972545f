//! smish: train, apply, and evaluate the smishing classifier.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or model error.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use clap::{Args, Parser, Subcommand, ValueEnum};
use smish_core::{
    bundled_dictionary, bundled_stopwords, classify, compute_stats, evaluate, load_corpus,
    load_dictionary, load_model, preprocess, run_ablation, save_model, train, ArmReport, Corpus,
    CorpusFormat, LingoDictionary, MetricsReport, PipelineConfig, SmoothingConfig, SmoothingMode,
    StopwordSet, TrainedModel, UnknownTokenPolicy,
};

fn version_string() -> &'static str {
    static VERSION: OnceLock<String> = OnceLock::new();
    VERSION
        .get_or_init(|| {
            format!(
                "{}\nbundled lingo dictionary sha256 {}\nbundled stop list sha256 {}",
                env!("CARGO_PKG_VERSION"),
                bundled_dictionary().version(),
                bundled_stopwords().version()
            )
        })
        .as_str()
}

#[derive(Parser)]
#[command(
    name = "smish",
    version = version_string(),
    about = "SMS smishing detection toolkit",
    arg_required_else_help = true
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Read default option values from a key=value file (explicit flags win)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a model from a labeled corpus
    Train(TrainArgs),
    /// Classify messages with a trained model
    Classify(ClassifyArgs),
    /// Evaluate a trained model against a labeled corpus
    Eval(EvalArgs),
    /// Compare the pipeline with and without slang normalization
    Ablate(AblateArgs),
    /// Per-class descriptive statistics for a corpus
    Stats(StatsArgs),
    /// Run the preprocessing pipeline and print the resulting tokens
    Normalize(NormalizeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Human readable, floats rounded to 4 decimals
    Text,
    /// One `key value` pair per line, floats exact
    Kv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusFormatArg {
    /// Pick by file extension (.csv is CSV, anything else TSV)
    Auto,
    Tsv,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SmoothingKind {
    /// Fixed floor probability for unseen terms
    Floor,
    /// Additive smoothing for unseen terms
    Laplace,
    /// No smoothing; unseen terms score log 0
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnknownTokens {
    /// Skip terms absent from both class tables
    Ignore,
    /// Score unknown terms through the smoother
    Unseen,
}

#[derive(Args)]
struct CorpusArgs {
    /// Labeled corpus file
    #[arg(long, value_name = "PATH")]
    corpus: PathBuf,

    /// Corpus file format
    #[arg(long, value_enum, value_name = "FMT")]
    corpus_format: Option<CorpusFormatArg>,
}

#[derive(Args)]
struct ResourceArgs {
    /// Slang dictionary file (bundled copy if omitted)
    #[arg(long, value_name = "PATH")]
    lingo_dict: Option<PathBuf>,

    /// Stop-word list file (bundled copy if omitted)
    #[arg(long, value_name = "PATH")]
    stopwords: Option<PathBuf>,
}

#[derive(Args)]
struct StageArgs {
    /// Disable slang normalization
    #[arg(long)]
    no_normalize: bool,

    /// Disable stop-word removal
    #[arg(long)]
    no_stopwords: bool,

    /// Disable stemming
    #[arg(long)]
    no_stem: bool,
}

#[derive(Args)]
struct SmoothingArgs {
    /// Smoothing for terms a class never saw
    #[arg(long, value_enum, value_name = "MODE")]
    smoothing: Option<SmoothingKind>,

    /// Floor probability for --smoothing floor
    #[arg(long, value_name = "P")]
    epsilon: Option<f64>,

    /// Pseudo-count for --smoothing laplace
    #[arg(long, value_name = "A")]
    alpha: Option<f64>,

    /// Add log class priors to the scores
    #[arg(long)]
    use_priors: bool,

    /// Handling of terms absent from every class table
    #[arg(long, value_enum, value_name = "POLICY")]
    unknown_tokens: Option<UnknownTokens>,
}

#[derive(Args)]
struct InputArgs {
    /// Process this literal text as one message
    #[arg(long, conflicts_with = "file")]
    text: Option<String>,

    /// Read messages from a file, one per line (stdin if neither is given)
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    resources: ResourceArgs,
    #[command(flatten)]
    stages: StageArgs,
    #[command(flatten)]
    smoothing: SmoothingArgs,

    /// Where to write the trained model
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Trained model file
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    #[command(flatten)]
    resources: ResourceArgs,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Trained model file
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    resources: ResourceArgs,
}

#[derive(Args)]
struct AblateArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    resources: ResourceArgs,
    #[command(flatten)]
    smoothing: SmoothingArgs,

    /// Seed for the train/test shuffle
    #[arg(long)]
    seed: Option<u64>,

    /// Per-class train fraction, strictly between 0 and 1
    #[arg(long)]
    ratio: Option<f64>,

    /// Exact ham training count (overrides --ratio, needs --train-smish)
    #[arg(long, value_name = "N", requires = "train_smish")]
    train_ham: Option<usize>,

    /// Exact smish training count (overrides --ratio, needs --train-ham)
    #[arg(long, value_name = "N", requires = "train_ham")]
    train_smish: Option<usize>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
}

#[derive(Args)]
struct NormalizeArgs {
    #[command(flatten)]
    resources: ResourceArgs,
    #[command(flatten)]
    stages: StageArgs,
    #[command(flatten)]
    input: InputArgs,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn runtime(error: impl std::fmt::Display) -> CliError {
    CliError::Runtime(error.to_string())
}

type CliResult<T> = Result<T, CliError>;

/// Defaults loadable from a --config file; explicit flags override.
#[derive(Default)]
struct FileConfig {
    format: Option<OutputFormat>,
    corpus_format: Option<CorpusFormatArg>,
    lingo_dict: Option<PathBuf>,
    stopwords: Option<PathBuf>,
    no_normalize: Option<bool>,
    no_stopwords: Option<bool>,
    no_stem: Option<bool>,
    smoothing: Option<SmoothingKind>,
    epsilon: Option<f64>,
    alpha: Option<f64>,
    use_priors: Option<bool>,
    unknown_tokens: Option<UnknownTokens>,
    seed: Option<u64>,
    ratio: Option<f64>,
}

fn parse_config_file(path: &Path) -> CliResult<FileConfig> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config file {}: {e}", path.display())))?;
    let mut config = FileConfig::default();
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |message: String| {
            usage(format!("{}:{}: {message}", path.display(), idx + 1))
        };
        let Some((key, value)) = line.split_once('=') else {
            return Err(at(format!("expected key=value, found {line:?}")));
        };
        let key = key.trim();
        let value = value.trim();
        fn enum_value<T: ValueEnum>(value: &str) -> Result<T, String> {
            T::from_str(value, true)
        }
        fn bool_value(value: &str) -> Result<bool, String> {
            match value {
                "true" => Ok(true),
                "false" => Ok(false),
                other => Err(format!("expected true or false, found {other:?}")),
            }
        }
        fn num_value<T: std::str::FromStr>(value: &str) -> Result<T, String> {
            value.parse().map_err(|_| format!("invalid number {value:?}"))
        }
        let result: Result<(), String> = match key {
            "format" => enum_value(value).map(|v| config.format = Some(v)),
            "corpus-format" => enum_value(value).map(|v| config.corpus_format = Some(v)),
            "lingo-dict" => {
                config.lingo_dict = Some(PathBuf::from(value));
                Ok(())
            }
            "stopwords" => {
                config.stopwords = Some(PathBuf::from(value));
                Ok(())
            }
            "no-normalize" => bool_value(value).map(|v| config.no_normalize = Some(v)),
            "no-stopwords" => bool_value(value).map(|v| config.no_stopwords = Some(v)),
            "no-stem" => bool_value(value).map(|v| config.no_stem = Some(v)),
            "smoothing" => enum_value(value).map(|v| config.smoothing = Some(v)),
            "epsilon" => num_value(value).map(|v| config.epsilon = Some(v)),
            "alpha" => num_value(value).map(|v| config.alpha = Some(v)),
            "use-priors" => bool_value(value).map(|v| config.use_priors = Some(v)),
            "unknown-tokens" => enum_value(value).map(|v| config.unknown_tokens = Some(v)),
            "seed" => num_value(value).map(|v| config.seed = Some(v)),
            "ratio" => num_value(value).map(|v| config.ratio = Some(v)),
            other => Err(format!("unknown config key {other:?}")),
        };
        result.map_err(|message| at(format!("{key}: {message}")))?;
    }
    Ok(config)
}

fn main() {
    // die quietly on a closed pipe (smish eval | head) instead of
    // panicking; rust ignores SIGPIPE by default
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    0
                }
                _ => {
                    eprint!("{err}");
                    1
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            1
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<()> {
    let file_config = match &cli.config {
        Some(path) => parse_config_file(path)?,
        None => FileConfig::default(),
    };
    let format = cli
        .format
        .or(file_config.format)
        .unwrap_or(OutputFormat::Text);
    match &cli.command {
        Command::Train(args) => cmd_train(args, &file_config, format),
        Command::Classify(args) => cmd_classify(args, &file_config, format),
        Command::Eval(args) => cmd_eval(args, &file_config, format),
        Command::Ablate(args) => cmd_ablate(args, &file_config, format),
        Command::Stats(args) => cmd_stats(args, format),
        Command::Normalize(args) => cmd_normalize(args, &file_config, format),
    }
}

fn load_corpus_arg(args: &CorpusArgs, config: &FileConfig) -> CliResult<Corpus> {
    let format = match args.corpus_format.or(config.corpus_format) {
        None | Some(CorpusFormatArg::Auto) => CorpusFormat::infer(&args.corpus),
        Some(CorpusFormatArg::Tsv) => CorpusFormat::Tsv,
        Some(CorpusFormatArg::Csv) => CorpusFormat::Csv,
    };
    load_corpus(&args.corpus, format).map_err(runtime)
}

fn resolve_dictionary(args: &ResourceArgs, config: &FileConfig) -> CliResult<LingoDictionary> {
    match args.lingo_dict.as_ref().or(config.lingo_dict.as_ref()) {
        Some(path) => load_dictionary(path).map_err(runtime),
        None => Ok(bundled_dictionary()),
    }
}

fn resolve_stopwords(args: &ResourceArgs, config: &FileConfig) -> CliResult<StopwordSet> {
    match args.stopwords.as_ref().or(config.stopwords.as_ref()) {
        Some(path) => StopwordSet::load(path).map_err(runtime),
        None => Ok(bundled_stopwords()),
    }
}

fn build_pipeline(
    resources: &ResourceArgs,
    stages: &StageArgs,
    config: &FileConfig,
) -> CliResult<PipelineConfig> {
    let mut pipeline = PipelineConfig::new(
        resolve_dictionary(resources, config)?,
        resolve_stopwords(resources, config)?,
    );
    pipeline.enable_normalization =
        !(stages.no_normalize || config.no_normalize.unwrap_or(false));
    pipeline.enable_stopword_removal =
        !(stages.no_stopwords || config.no_stopwords.unwrap_or(false));
    pipeline.enable_stemming = !(stages.no_stem || config.no_stem.unwrap_or(false));
    Ok(pipeline)
}

fn build_smoothing(args: &SmoothingArgs, config: &FileConfig) -> CliResult<SmoothingConfig> {
    let kind = args
        .smoothing
        .or(config.smoothing)
        .unwrap_or(SmoothingKind::Floor);
    let epsilon = args.epsilon.or(config.epsilon).unwrap_or(1e-6);
    let alpha = args.alpha.or(config.alpha).unwrap_or(1.0);
    let smoothing = SmoothingConfig {
        mode: match kind {
            SmoothingKind::Floor => SmoothingMode::FloorEpsilon(epsilon),
            SmoothingKind::Laplace => SmoothingMode::Laplace(alpha),
            SmoothingKind::None => SmoothingMode::None,
        },
        use_priors: args.use_priors || config.use_priors.unwrap_or(false),
        unknown_token_policy: match args.unknown_tokens.or(config.unknown_tokens) {
            None | Some(UnknownTokens::Ignore) => UnknownTokenPolicy::Ignore,
            Some(UnknownTokens::Unseen) => UnknownTokenPolicy::TreatAsUnseen,
        },
    };
    smoothing.validate().map_err(|e| usage(e.to_string()))?;
    Ok(smoothing)
}

/// Rebuilds the pipeline a model was trained with: stage switches come
/// from the model, dictionary and stop list from the given paths (or
/// the bundled copies). Fails when the supplied resources do not match
/// the versions recorded in the model.
fn pipeline_for_model(
    model: &TrainedModel,
    resources: &ResourceArgs,
    config: &FileConfig,
) -> CliResult<PipelineConfig> {
    let mut pipeline = PipelineConfig::new(
        resolve_dictionary(resources, config)?,
        resolve_stopwords(resources, config)?,
    );
    pipeline.enable_normalization = model.pipeline.enable_normalization;
    pipeline.enable_stopword_removal = model.pipeline.enable_stopword_removal;
    pipeline.enable_stemming = model.pipeline.enable_stemming;
    if pipeline.dictionary.version() != model.pipeline.dictionary_version {
        return Err(CliError::Runtime(format!(
            "lingo dictionary does not match the model: model was trained with version {}, supplied dictionary is {}",
            model.pipeline.dictionary_version,
            pipeline.dictionary.version()
        )));
    }
    if pipeline.stopwords.version() != model.pipeline.stopword_version {
        return Err(CliError::Runtime(format!(
            "stop list does not match the model: model was trained with version {}, supplied list is {}",
            model.pipeline.stopword_version,
            pipeline.stopwords.version()
        )));
    }
    let fingerprint = pipeline.fingerprint();
    if fingerprint != model.pipeline.fingerprint {
        return Err(CliError::Runtime(format!(
            "pipeline fingerprint mismatch: model expects {}, rebuilt pipeline is {fingerprint}",
            model.pipeline.fingerprint
        )));
    }
    Ok(pipeline)
}

fn read_messages(input: &InputArgs) -> CliResult<Vec<String>> {
    if let Some(text) = &input.text {
        return Ok(vec![text.clone()]);
    }
    let content = match &input.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Runtime(format!("stdin: {e}")))?;
            buf
        }
    };
    Ok(content.lines().map(str::to_string).collect())
}

fn fmt_float(value: f64, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => format!("{value:.4}"),
        OutputFormat::Kv => format!("{value}"),
    }
}

fn cmd_train(args: &TrainArgs, config: &FileConfig, format: OutputFormat) -> CliResult<()> {
    let corpus = load_corpus_arg(&args.corpus, config)?;
    let pipeline = build_pipeline(&args.resources, &args.stages, config)?;
    let smoothing = build_smoothing(&args.smoothing, config)?;
    let model = train(&corpus, &pipeline, &smoothing).map_err(runtime)?;
    save_model(&model, &args.out).map_err(runtime)?;
    match format {
        OutputFormat::Text => {
            println!("model written to {}", args.out.display());
            println!(
                "train messages: {} (ham {}, smish {})",
                corpus.len(),
                corpus.ham_count(),
                corpus.smish_count()
            );
            println!(
                "distinct terms: ham {}, smish {}",
                model.ham_table.term_count(),
                model.smish_table.term_count()
            );
            println!("smoothing: {}", model.smoothing.mode);
            println!(
                "priors: {}",
                if model.smoothing.use_priors { "on" } else { "off" }
            );
            println!("unknown tokens: {}", model.smoothing.unknown_token_policy);
            println!("pipeline fingerprint: {}", model.pipeline.fingerprint);
        }
        OutputFormat::Kv => {
            println!("model-path {}", args.out.display());
            println!("train-messages {}", corpus.len());
            println!("ham-messages {}", corpus.ham_count());
            println!("smish-messages {}", corpus.smish_count());
            println!("ham-terms {}", model.ham_table.term_count());
            println!("smish-terms {}", model.smish_table.term_count());
            println!("smoothing {}", model.smoothing.mode);
            println!("use-priors {}", model.smoothing.use_priors);
            println!("unknown-tokens {}", model.smoothing.unknown_token_policy);
            println!("fingerprint {}", model.pipeline.fingerprint);
        }
    }
    Ok(())
}

fn cmd_classify(args: &ClassifyArgs, config: &FileConfig, format: OutputFormat) -> CliResult<()> {
    let model = load_model(&args.model).map_err(runtime)?;
    let pipeline = pipeline_for_model(&model, &args.resources, config)?;
    let messages = read_messages(&args.input)?;
    for (idx, text) in messages.iter().enumerate() {
        let verdict = classify(&model, text, &pipeline).map_err(runtime)?;
        match format {
            OutputFormat::Text => {
                println!(
                    "{}\t{}\t{}",
                    verdict.label,
                    fmt_float(verdict.log_score_ham, format),
                    fmt_float(verdict.log_score_smish, format)
                );
            }
            OutputFormat::Kv => {
                let n = idx + 1;
                println!("{n}.label {}", verdict.label);
                println!(
                    "{n}.log-score-ham {}",
                    fmt_float(verdict.log_score_ham, format)
                );
                println!(
                    "{n}.log-score-smish {}",
                    fmt_float(verdict.log_score_smish, format)
                );
                println!("{n}.tokens-used {}", verdict.tokens_used);
            }
        }
    }
    Ok(())
}

/// Metric rows in output order: kv key, text label, value, undefined flag.
fn metric_rows(m: &MetricsReport) -> [(&'static str, &'static str, f64, bool); 8] {
    [
        ("accuracy", "accuracy", m.accuracy, m.undefined.accuracy),
        ("precision", "precision", m.precision, m.undefined.precision),
        ("recall", "recall", m.recall, m.undefined.recall),
        ("f1", "f1", m.f1, m.undefined.f1),
        (
            "true-positive-rate",
            "true positive rate",
            m.true_positive_rate,
            m.undefined.true_positive_rate,
        ),
        (
            "false-positive-rate",
            "false positive rate",
            m.false_positive_rate,
            m.undefined.false_positive_rate,
        ),
        (
            "true-negative-rate",
            "true negative rate",
            m.true_negative_rate,
            m.undefined.true_negative_rate,
        ),
        (
            "false-negative-rate",
            "false negative rate",
            m.false_negative_rate,
            m.undefined.false_negative_rate,
        ),
    ]
}

fn print_arm_text(arm: &ArmReport, indent: &str) {
    let m = &arm.matrix;
    println!("{indent}test messages: {}", m.total());
    println!("{indent}true positives: {}", m.true_positives);
    println!("{indent}false positives: {}", m.false_positives);
    println!("{indent}true negatives: {}", m.true_negatives);
    println!("{indent}false negatives: {}", m.false_negatives);
    for (_, label, value, undefined) in metric_rows(&arm.metrics) {
        let note = if undefined { " (undefined)" } else { "" };
        println!("{indent}{label}: {:.4}{note}", value);
    }
}

fn print_arm_kv(arm: &ArmReport, prefix: &str) {
    let m = &arm.matrix;
    println!("{prefix}test-messages {}", m.total());
    println!("{prefix}true-positives {}", m.true_positives);
    println!("{prefix}false-positives {}", m.false_positives);
    println!("{prefix}true-negatives {}", m.true_negatives);
    println!("{prefix}false-negatives {}", m.false_negatives);
    let mut undefined = Vec::new();
    for (key, _, value, is_undefined) in metric_rows(&arm.metrics) {
        println!("{prefix}{key} {value}");
        if is_undefined {
            undefined.push(key);
        }
    }
    if undefined.is_empty() {
        println!("{prefix}undefined-metrics -");
    } else {
        println!("{prefix}undefined-metrics {}", undefined.join(" "));
    }
    println!("{prefix}fingerprint {}", arm.fingerprint);
}

fn cmd_eval(args: &EvalArgs, config: &FileConfig, format: OutputFormat) -> CliResult<()> {
    let model = load_model(&args.model).map_err(runtime)?;
    let pipeline = pipeline_for_model(&model, &args.resources, config)?;
    let corpus = load_corpus_arg(&args.corpus, config)?;
    let report = evaluate(&model, &corpus, &pipeline).map_err(runtime)?;
    match format {
        OutputFormat::Text => {
            print_arm_text(&report, "");
            println!("test digest: {}", report.test_digest);
        }
        OutputFormat::Kv => {
            print_arm_kv(&report, "");
            println!("test-digest {}", report.test_digest);
        }
    }
    Ok(())
}

fn cmd_ablate(args: &AblateArgs, config: &FileConfig, format: OutputFormat) -> CliResult<()> {
    let corpus = load_corpus_arg(&args.corpus, config)?;
    let dictionary = resolve_dictionary(&args.resources, config)?;
    let stopwords = resolve_stopwords(&args.resources, config)?;
    let smoothing = build_smoothing(&args.smoothing, config)?;
    let seed = args.seed.or(config.seed).unwrap_or(42);
    let ratio = args.ratio.or(config.ratio).unwrap_or(0.9);
    let counts = match (args.train_ham, args.train_smish) {
        (Some(ham), Some(smish)) => {
            if ham == 0 || smish == 0 {
                return Err(usage("per-class train counts must be at least 1"));
            }
            Some((ham, smish))
        }
        _ => {
            if !(ratio > 0.0 && ratio < 1.0) {
                return Err(usage(format!(
                    "--ratio must lie strictly between 0 and 1, got {ratio}"
                )));
            }
            None
        }
    };
    let report = run_ablation(&corpus, ratio, seed, counts, &dictionary, &stopwords, &smoothing)
        .map_err(runtime)?;
    match format {
        OutputFormat::Text => {
            println!("seed: {}", report.seed);
            println!("ratio: {:.4}", report.ratio);
            println!(
                "train: ham {}, smish {}",
                report.train_ham, report.train_smish
            );
            println!("test: ham {}, smish {}", report.test_ham, report.test_smish);
            println!("test digest: {}", report.with_normalization.test_digest);
            println!();
            println!(
                "with normalization [fingerprint {}]",
                report.with_normalization.fingerprint
            );
            print_arm_text(&report.with_normalization, "  ");
            println!();
            println!(
                "without normalization [fingerprint {}]",
                report.without_normalization.fingerprint
            );
            print_arm_text(&report.without_normalization, "  ");
        }
        OutputFormat::Kv => {
            println!("seed {}", report.seed);
            println!("ratio {}", report.ratio);
            println!("train-ham {}", report.train_ham);
            println!("train-smish {}", report.train_smish);
            println!("test-ham {}", report.test_ham);
            println!("test-smish {}", report.test_smish);
            println!("test-digest {}", report.with_normalization.test_digest);
            print_arm_kv(&report.with_normalization, "with.");
            print_arm_kv(&report.without_normalization, "without.");
        }
    }
    Ok(())
}

fn cmd_stats(args: &StatsArgs, format: OutputFormat) -> CliResult<()> {
    let corpus = load_corpus_arg(&args.corpus, &FileConfig::default())?;
    let stats = compute_stats(&corpus).map_err(runtime)?;
    for (label, class) in &stats {
        match format {
            OutputFormat::Text => {
                println!("class: {label}");
                println!("Total Messages: {}", class.message_count);
                println!(
                    "Average No. of Characters: {}",
                    fmt_float(class.avg_chars, format)
                );
                println!(
                    "Average Presence of URLs: {}",
                    fmt_float(class.url_presence_rate, format)
                );
                println!(
                    "Average No. of Words: {}",
                    fmt_float(class.avg_words, format)
                );
                println!(
                    "Average Presence of Symbols ($ and €): {}",
                    fmt_float(class.currency_symbol_rate, format)
                );
            }
            OutputFormat::Kv => {
                println!("{label}.total-messages {}", class.message_count);
                println!("{label}.avg-chars {}", class.avg_chars);
                println!("{label}.url-presence {}", class.url_presence_rate);
                println!("{label}.avg-words {}", class.avg_words);
                println!("{label}.currency-presence {}", class.currency_symbol_rate);
            }
        }
    }
    Ok(())
}

fn cmd_normalize(args: &NormalizeArgs, config: &FileConfig, format: OutputFormat) -> CliResult<()> {
    let pipeline = build_pipeline(&args.resources, &args.stages, config)?;
    let messages = read_messages(&args.input)?;
    if format == OutputFormat::Kv {
        println!("fingerprint {}", pipeline.fingerprint());
    }
    for (idx, text) in messages.iter().enumerate() {
        let normalized = preprocess(text, &pipeline);
        let joined = normalized.tokens.join(" ");
        match format {
            OutputFormat::Text => println!("{joined}"),
            OutputFormat::Kv => {
                let n = idx + 1;
                println!("{n}.token-count {}", normalized.tokens.len());
                if joined.is_empty() {
                    println!("{n}.tokens");
                } else {
                    println!("{n}.tokens {joined}");
                }
            }
        }
    }
    Ok(())
}
