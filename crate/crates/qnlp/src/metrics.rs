//! Confusion matrix, accuracy and macro-F1 over the four emotion classes.

use crate::grammar::Emotion;

pub const N_CLASSES: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    /// Counts; rows are ground truth, columns are predictions.
    pub confusion: [[u64; N_CLASSES]; N_CLASSES],
    /// Row-normalized confusion; zero rows stay zero.
    pub normalized: [[f64; N_CLASSES]; N_CLASSES],
    pub per_class_f1: [f64; N_CLASSES],
    pub macro_f1: f64,
    pub accuracy: f64,
}

/// Tally predictions against ground truth.
///
/// Per-class F1 is `2PR/(P+R)`, defined as 0 when precision and recall are
/// both zero (class never seen and never predicted); macro-F1 is the
/// unweighted mean over all four classes.
pub fn compute_metrics(truth: &[Emotion], predictions: &[Emotion]) -> Result<Metrics, MetricsError> {
    if truth.len() != predictions.len() {
        return Err(MetricsError::LengthMismatch {
            truth: truth.len(),
            predictions: predictions.len(),
        });
    }
    let mut confusion = [[0u64; N_CLASSES]; N_CLASSES];
    for (t, p) in truth.iter().zip(predictions) {
        confusion[t.class_index()][p.class_index()] += 1;
    }

    let mut normalized = [[0.0; N_CLASSES]; N_CLASSES];
    for (row, norm_row) in confusion.iter().zip(normalized.iter_mut()) {
        let total: u64 = row.iter().sum();
        if total > 0 {
            for (count, slot) in row.iter().zip(norm_row.iter_mut()) {
                *slot = *count as f64 / total as f64;
            }
        }
    }

    let mut per_class_f1 = [0.0; N_CLASSES];
    for c in 0..N_CLASSES {
        let true_positive = confusion[c][c] as f64;
        let predicted: u64 = (0..N_CLASSES).map(|r| confusion[r][c]).sum();
        let actual: u64 = confusion[c].iter().sum();
        let precision = if predicted > 0 { true_positive / predicted as f64 } else { 0.0 };
        let recall = if actual > 0 { true_positive / actual as f64 } else { 0.0 };
        per_class_f1[c] = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
    }
    let macro_f1 = per_class_f1.iter().sum::<f64>() / N_CLASSES as f64;

    let correct: u64 = (0..N_CLASSES).map(|c| confusion[c][c]).sum();
    let total: u64 = confusion.iter().flatten().sum();
    let accuracy = if total > 0 { correct as f64 / total as f64 } else { 0.0 };

    Ok(Metrics { confusion, normalized, per_class_f1, macro_f1, accuracy })
}

impl Metrics {
    /// Flat text report: one metric per line, then the count matrix.
    pub fn report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("accuracy\t{:.6}\n", self.accuracy));
        out.push_str(&format!("macro_f1\t{:.6}\n", self.macro_f1));
        for e in Emotion::ALL {
            out.push_str(&format!(
                "f1_{}\t{:.6}\n",
                e.name(),
                self.per_class_f1[e.class_index()]
            ));
        }
        out.push_str("confusion_counts (rows=truth, cols=prediction)\n");
        for (e, row) in Emotion::ALL.iter().zip(&self.confusion) {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("{}\t{}\n", e.name(), cells.join("\t")));
        }
        out
    }

    /// Row-normalized confusion as CSV with class headers.
    pub fn confusion_csv(&self) -> String {
        let header: Vec<&str> = Emotion::ALL.iter().map(|e| e.name()).collect();
        let mut out = format!("truth\\prediction,{}\n", header.join(","));
        for (e, row) in Emotion::ALL.iter().zip(&self.normalized) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
            out.push_str(&format!("{},{}\n", e.name(), cells.join(",")));
        }
        out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("length mismatch: {truth} truth labels vs {predictions} predictions")]
    LengthMismatch { truth: usize, predictions: usize },
}
