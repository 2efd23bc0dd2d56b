//! Command-line driver for the qnlp pipeline: dataset generation, training,
//! evaluation, the classical baseline, and sentence inspection.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use qnlp::baseline::evaluate_baseline;
use qnlp::compiler::{compile, ParameterStore, QubitLayout};
use qnlp::config::{EvalMode, RunConfig};
use qnlp::diagram::{build_diagram, render_ascii};
use qnlp::grammar::{
    class_histogram, dataset_from_tsv, dataset_to_tsv, generate_dataset, split, suggest, Emotion,
    LabeledSentence, Lexicon, Template,
};
use qnlp::metrics::compute_metrics;
use qnlp::simulator::sample;
use qnlp::trainer::{
    argmax_class, curve_to_csv, predict, train, CheckpointSink, CompiledDataset,
};

#[derive(Parser)]
#[command(name = "qnlp", version, about = "Compositional quantum NLP pipeline")]
struct Cli {
    /// Run configuration file.
    #[arg(long, global = true, default_value = "configs/default.conf")]
    config: PathBuf,
    /// Override the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for output artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the labeled sentence dataset and write dataset.tsv.
    Generate,
    /// Train circuit parameters on the train partition; writes params.ckpt
    /// and loss.csv.
    Train {
        /// Dataset file (defaults to <out>/dataset.tsv).
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
    /// Evaluate a checkpoint on the test partition; writes metrics.txt and
    /// confusion.csv.
    Evaluate {
        /// Parameter checkpoint (defaults to <out>/params.ckpt).
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Dataset file (defaults to <out>/dataset.tsv).
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
    /// Run the TF-IDF + naive Bayes reference classifier on the same split.
    Baseline {
        /// Dataset file (defaults to <out>/dataset.tsv).
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
    /// Print the diagram, qubit layout and gate listing for one sentence.
    Inspect {
        /// Sentence tokens in citation form (e.g. `furious neighbour attack child`).
        #[arg(required = true)]
        sentence: Vec<String>,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let mut config = RunConfig::load(&cli.config)
        .with_context(|| format!("loading config `{}`", cli.config.display()))?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
        config.optimizer.seed = seed;
    }
    match &cli.command {
        Command::Generate => command_generate(&config, &cli.out),
        Command::Train { dataset } => command_train(&config, &cli.out, dataset.as_deref()),
        Command::Evaluate { checkpoint, dataset } => {
            command_evaluate(&config, &cli.out, checkpoint.as_deref(), dataset.as_deref())
        }
        Command::Baseline { dataset } => command_baseline(&config, &cli.out, dataset.as_deref()),
        Command::Inspect { sentence } => command_inspect(&config, sentence),
    }
}

fn load_dataset(out: &Path, dataset: Option<&Path>) -> Result<Vec<LabeledSentence>> {
    let path = dataset
        .map(Path::to_path_buf)
        .unwrap_or_else(|| out.join("dataset.tsv"));
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading dataset `{}` (run `generate` first?)", path.display()))?;
    Ok(dataset_from_tsv(&text)?)
}

fn ensure_out(out: &Path) -> Result<()> {
    std::fs::create_dir_all(out)
        .with_context(|| format!("creating output directory `{}`", out.display()))
}

fn print_histogram(prefix: &str, dataset: &[LabeledSentence]) {
    let histogram = class_histogram(dataset);
    let cells: Vec<String> = Emotion::ALL
        .iter()
        .map(|e| format!("{}={}", e.name(), histogram[e.class_index()]))
        .collect();
    println!("{prefix}: {} sentences ({})", dataset.len(), cells.join(", "));
}

fn command_generate(config: &RunConfig, out: &Path) -> Result<()> {
    ensure_out(out)?;
    let lexicon = config.load_lexicon()?;
    let candidates = qnlp::grammar::candidate_count(&lexicon, &config.templates);
    let dataset = generate_dataset(&lexicon, &config.templates)?;
    let path = out.join("dataset.tsv");
    std::fs::write(&path, dataset_to_tsv(&dataset))
        .with_context(|| format!("writing `{}`", path.display()))?;

    println!("templates: {}", config.templates.len());
    for template in &config.templates {
        let count = dataset.iter().filter(|s| s.template_id == template.id).count();
        println!("  {}: {} sentences", template.id, count);
    }
    println!("candidates before labeling: {candidates}");
    print_histogram("labeled dataset", &dataset);
    println!("wrote {}", path.display());
    Ok(())
}

fn command_train(config: &RunConfig, out: &Path, dataset: Option<&Path>) -> Result<()> {
    ensure_out(out)?;
    if config.depth == 0 {
        eprintln!("warning: depth 0 leaves multi-qubit words without parameters");
    }
    let lexicon = config.load_lexicon()?;
    let dataset = load_dataset(out, dataset)?;
    let (train_set, test_set) = split(&dataset, config.seed, config.test_size)?;
    print_histogram("train partition", &train_set);
    print_histogram("test partition", &test_set);

    let store = ParameterStore::init(&lexicon, config.depth, config.qubits_per_n, config.seed);
    println!(
        "initialized {} parameters (depth={}, qubits_per_n={}, seed={})",
        store.total_count(),
        config.depth,
        config.qubits_per_n,
        config.seed
    );
    let compiled = CompiledDataset::compile_all(&train_set, &config.templates, &store)?;
    let sink = CheckpointSink::new(out.join("params.ckpt"));
    let outcome = train(store, &compiled, &config.optimizer, Some(&sink))?;

    let loss_path = out.join("loss.csv");
    std::fs::write(&loss_path, curve_to_csv(&outcome.curve))
        .with_context(|| format!("writing `{}`", loss_path.display()))?;
    println!(
        "trained {} iterations ({}): initial loss {:.6}, best loss {:.6}",
        outcome.curve.last().map(|r| r.iteration).unwrap_or(0),
        config.optimizer.algorithm.name(),
        outcome.curve[0].loss,
        outcome.best_loss
    );
    println!("wrote {}", sink.path.display());
    println!("wrote {}", loss_path.display());
    Ok(())
}

fn command_evaluate(
    config: &RunConfig,
    out: &Path,
    checkpoint: Option<&Path>,
    dataset: Option<&Path>,
) -> Result<()> {
    ensure_out(out)?;
    let checkpoint_path = checkpoint
        .map(Path::to_path_buf)
        .unwrap_or_else(|| out.join("params.ckpt"));
    let store = ParameterStore::load(&checkpoint_path)?;
    store.check_compatible(config.depth, config.qubits_per_n)?;

    let dataset = load_dataset(out, dataset)?;
    let (_, test_set) = split(&dataset, config.seed, config.test_size)?;
    let compiled = CompiledDataset::compile_all(&test_set, &config.templates, &store)?;

    let predictions = match config.mode {
        EvalMode::Exact => predict(&store, &compiled)?,
        EvalMode::Shots(shots) => {
            let mut predictions = Vec::with_capacity(compiled.items.len());
            for (index, (circuit, _)) in compiled.items.iter().enumerate() {
                let dist = circuit.evaluate(&store)?;
                let counts = sample(&dist, shots, config.seed.wrapping_add(index as u64));
                let fractions = counts.map(|c| c as f64);
                predictions.push(argmax_class(&fractions));
            }
            predictions
        }
    };
    let truth: Vec<Emotion> = test_set.iter().map(|s| s.label).collect();
    let metrics = compute_metrics(&truth, &predictions)?;

    let metrics_path = out.join("metrics.txt");
    std::fs::write(&metrics_path, metrics.report())
        .with_context(|| format!("writing `{}`", metrics_path.display()))?;
    let confusion_path = out.join("confusion.csv");
    std::fs::write(&confusion_path, metrics.confusion_csv())
        .with_context(|| format!("writing `{}`", confusion_path.display()))?;

    println!(
        "test accuracy {:.4}, macro-F1 {:.4} ({} sentences, {} mode)",
        metrics.accuracy,
        metrics.macro_f1,
        test_set.len(),
        match config.mode {
            EvalMode::Exact => "exact".to_string(),
            EvalMode::Shots(n) => format!("{n} shots"),
        }
    );
    println!("wrote {}", metrics_path.display());
    println!("wrote {}", confusion_path.display());
    Ok(())
}

fn command_baseline(config: &RunConfig, out: &Path, dataset: Option<&Path>) -> Result<()> {
    ensure_out(out)?;
    let dataset = load_dataset(out, dataset)?;
    let (train_set, test_set) = split(&dataset, config.seed, config.test_size)?;
    let metrics = evaluate_baseline(&train_set, &test_set)?;

    let metrics_path = out.join("metrics.txt");
    std::fs::write(&metrics_path, metrics.report())
        .with_context(|| format!("writing `{}`", metrics_path.display()))?;
    let confusion_path = out.join("confusion.csv");
    std::fs::write(&confusion_path, metrics.confusion_csv())
        .with_context(|| format!("writing `{}`", confusion_path.display()))?;

    println!(
        "baseline accuracy {:.4}, macro-F1 {:.4} ({} train, {} test)",
        metrics.accuracy,
        metrics.macro_f1,
        train_set.len(),
        test_set.len()
    );
    println!("wrote {}", metrics_path.display());
    println!("wrote {}", confusion_path.display());
    Ok(())
}

fn command_inspect(config: &RunConfig, tokens: &[String]) -> Result<()> {
    let lexicon = config.load_lexicon()?;

    // Surface unknown tokens with suggestions before shape matching.
    let vocabulary = lexicon.all_tokens();
    for token in tokens {
        let known = qnlp::grammar::PartOfSpeech::ALL
            .iter()
            .any(|&pos| lexicon.contains(token, pos));
        if !known {
            let suggestions = suggest(token, &vocabulary);
            let hint = if suggestions.is_empty() {
                String::new()
            } else {
                format!(" (did you mean: {}?)", suggestions.join(", "))
            };
            bail!("unknown token `{token}`{hint}");
        }
    }

    let template = find_template(config, &lexicon, tokens)?;
    let sentence = LabeledSentence {
        tokens: tokens.to_vec(),
        template_id: template.id.clone(),
        label: Emotion::Happiness, // placeholder; inspection ignores labels
    };
    let diagram = build_diagram(&sentence, &template)?;
    let layout = QubitLayout::for_diagram(&diagram, config.qubits_per_n)?;
    let store = ParameterStore::init(&lexicon, config.depth, config.qubits_per_n, config.seed);
    let circuit = compile(&diagram, &store, config.qubits_per_n)?;

    println!("template: {}", template.id);
    println!();
    println!("{}", render_ascii(&diagram));
    println!("qubit layout ({} qubits):", circuit.n_qubits);
    let wires = diagram.wires();
    for (wire, qubits) in wires.iter().zip(&layout.wire_to_qubits) {
        let ids: Vec<String> = qubits.iter().map(|q| format!("q{q}")).collect();
        println!("  {wire}: {}", ids.join(", "));
    }
    println!();
    println!("gates ({}):", circuit.gates.len());
    for gate in &circuit.gates {
        println!("  {gate}");
    }
    println!();
    let postselect: Vec<String> = circuit.postselect_zero.iter().map(|q| format!("q{q}")).collect();
    println!("post-selected on 0 ({}): {}", postselect.len(), postselect.join(", "));
    println!(
        "result qubits: q{}, q{}",
        circuit.result_qubits[0], circuit.result_qubits[1]
    );
    Ok(())
}

/// Match the token sequence against the configured templates (plus the
/// two-word noun + intransitive-verb shape, which is always inspectable).
fn find_template(config: &RunConfig, lexicon: &Lexicon, tokens: &[String]) -> Result<Template> {
    let mut templates = config.templates.clone();
    if !templates.iter().any(|t| t.id == "N-IV") {
        templates.push(Template::parse("n-iv").expect("n-iv reduces"));
    }
    for template in templates {
        if template.len() != tokens.len() {
            continue;
        }
        let fits = tokens
            .iter()
            .zip(&template.pos_sequence)
            .all(|(token, &pos)| lexicon.contains(token, pos));
        if fits {
            return Ok(template);
        }
    }
    Err(anyhow!(
        "no supported template matches `{}` (known tokens, unsupported shape)",
        tokens.join(" ")
    ))
}
