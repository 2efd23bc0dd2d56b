//! End-to-end tests of the command-line interface on a miniature corpus.

use std::path::Path;
use std::process::{Command, Output};

fn qnlp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qnlp"))
}

fn write_tiny_workspace(dir: &Path) {
    std::fs::write(
        dir.join("lexicon.tsv"),
        "boy\tnoun\tneutral\n\
         child\tnoun\tneutral\n\
         laugh\tintransitive_verb\thappiness\n\
         cry\tintransitive_verb\tsadness\n\
         scream\tintransitive_verb\tanger\n\
         dance\tintransitive_verb\thappiness\n",
    )
    .unwrap();
    std::fs::write(
        dir.join("run.conf"),
        "lexicon = lexicon.tsv\n\
         templates = n-iv\n\
         seed = 5\n\
         qubits_per_n = 1\n\
         depth = 1\n\
         test_size = 3\n\
         optimizer = spsa\n\
         max_iterations = 6\n\
         spsa_a = 1.0\n\
         spsa_c = 0.25\n\
         tolerance = 0\n\
         mode = exact\n",
    )
    .unwrap();
}

fn run(dir: &Path, args: &[&str]) -> Output {
    qnlp()
        .arg("--config")
        .arg(dir.join("run.conf"))
        .arg("--out")
        .arg(dir.join("out"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn loss_rows_without_wall_time(dir: &Path) -> Vec<String> {
    std::fs::read_to_string(dir.join("out/loss.csv"))
        .unwrap()
        .lines()
        .map(|line| {
            let mut cells: Vec<&str> = line.split(',').collect();
            cells.truncate(2);
            cells.join(",")
        })
        .collect()
}

#[test]
fn full_pipeline_on_tiny_corpus() {
    let dir = tempfile::tempdir().unwrap();
    write_tiny_workspace(dir.path());

    // generate: 2 nouns x 4 verbs, all labeled.
    let output = run(dir.path(), &["generate"]);
    assert!(output.status.success(), "generate failed: {output:?}");
    let text = stdout(&output);
    assert!(text.contains("candidates before labeling: 8"), "{text}");
    assert!(text.contains("labeled dataset: 8 sentences"), "{text}");
    let dataset = std::fs::read_to_string(dir.path().join("out/dataset.tsv")).unwrap();
    assert_eq!(dataset.lines().count(), 8);
    assert!(dataset.contains("boy laugh\tN-IV\thappiness"));

    // Regenerating is byte-identical.
    assert!(run(dir.path(), &["generate"]).status.success());
    let again = std::fs::read_to_string(dir.path().join("out/dataset.tsv")).unwrap();
    assert_eq!(dataset, again);

    // train: checkpoint plus loss curve, first row is the pre-training loss.
    let output = run(dir.path(), &["train"]);
    assert!(output.status.success(), "train failed: {output:?}");
    let loss_csv = std::fs::read_to_string(dir.path().join("out/loss.csv")).unwrap();
    assert!(loss_csv.starts_with("iteration,loss,wall_time_s\n"));
    let first_row = loss_csv.lines().nth(1).unwrap();
    assert!(first_row.starts_with("0,"), "first row `{first_row}`");
    assert_eq!(loss_csv.lines().count(), 1 + 1 + 6); // header + iteration 0 + 6 steps
    let checkpoint = std::fs::read_to_string(dir.path().join("out/params.ckpt")).unwrap();
    assert!(checkpoint.starts_with("depth=1\tqubits_per_n=1\tseed=5\n"));

    // Re-training reproduces the loss column and the checkpoint exactly.
    let rows = loss_rows_without_wall_time(dir.path());
    assert!(run(dir.path(), &["train"]).status.success());
    assert_eq!(rows, loss_rows_without_wall_time(dir.path()));
    let checkpoint_again = std::fs::read_to_string(dir.path().join("out/params.ckpt")).unwrap();
    assert_eq!(checkpoint, checkpoint_again);

    // evaluate: metrics report and confusion CSV.
    let output = run(dir.path(), &["evaluate"]);
    assert!(output.status.success(), "evaluate failed: {output:?}");
    let metrics = std::fs::read_to_string(dir.path().join("out/metrics.txt")).unwrap();
    assert!(metrics.contains("accuracy\t"));
    assert!(metrics.contains("macro_f1\t"));
    let confusion = std::fs::read_to_string(dir.path().join("out/confusion.csv")).unwrap();
    assert!(confusion.starts_with("truth\\prediction,happiness,fear,anger,sadness\n"));
    assert_eq!(confusion.lines().count(), 5);

    // baseline: runs on the same split and writes the same report format.
    let output = run(dir.path(), &["baseline"]);
    assert!(output.status.success(), "baseline failed: {output:?}");
    assert!(stdout(&output).contains("baseline accuracy"));
}

#[test]
fn evaluate_rejects_mismatched_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    write_tiny_workspace(dir.path());
    assert!(run(dir.path(), &["generate"]).status.success());
    assert!(run(dir.path(), &["train"]).status.success());

    // Same artifacts, deeper config: the checkpoint header no longer fits.
    let conf = std::fs::read_to_string(dir.path().join("run.conf")).unwrap();
    std::fs::write(dir.path().join("run.conf"), conf.replace("depth = 1", "depth = 2")).unwrap();
    let output = run(dir.path(), &["evaluate"]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr).into_owned();
    assert!(stderr.contains("depth"), "stderr: {stderr}");
}

#[test]
fn missing_lexicon_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    write_tiny_workspace(dir.path());
    std::fs::remove_file(dir.path().join("lexicon.tsv")).unwrap();
    let output = run(dir.path(), &["generate"]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr).into_owned();
    assert!(stderr.contains("lexicon.tsv"), "stderr: {stderr}");
}

#[test]
fn inspect_prints_layout_and_gates() {
    let dir = tempfile::tempdir().unwrap();
    write_tiny_workspace(dir.path());
    let output = run(dir.path(), &["inspect", "child", "cry"]);
    assert!(output.status.success(), "inspect failed: {output:?}");
    let text = stdout(&output);
    assert!(text.contains("template: N-IV"), "{text}");
    assert!(text.contains("qubit layout (4 qubits):"), "{text}");
    assert!(text.contains("post-selected on 0 (2):"), "{text}");
    assert!(text.contains("result qubits:"), "{text}");
}

#[test]
fn inspect_suggests_citation_forms() {
    let dir = tempfile::tempdir().unwrap();
    write_tiny_workspace(dir.path());
    let output = run(dir.path(), &["inspect", "child", "cries"]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr).into_owned();
    assert!(stderr.contains("unknown token `cries`"), "stderr: {stderr}");
    assert!(stderr.contains("cry"), "stderr: {stderr}");
}

#[test]
fn shots_mode_evaluation_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    write_tiny_workspace(dir.path());
    let conf = std::fs::read_to_string(dir.path().join("run.conf")).unwrap();
    std::fs::write(
        dir.path().join("run.conf"),
        conf.replace("mode = exact", "mode = shots\nshots = 256"),
    )
    .unwrap();
    assert!(run(dir.path(), &["generate"]).status.success());
    assert!(run(dir.path(), &["train"]).status.success());
    assert!(run(dir.path(), &["evaluate"]).status.success());
    let first = std::fs::read_to_string(dir.path().join("out/metrics.txt")).unwrap();
    assert!(run(dir.path(), &["evaluate"]).status.success());
    let second = std::fs::read_to_string(dir.path().join("out/metrics.txt")).unwrap();
    assert_eq!(first, second);
}
