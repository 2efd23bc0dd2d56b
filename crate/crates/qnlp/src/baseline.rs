//! Classical reference classifier: TF-IDF features with multinomial naive
//! Bayes. Fully deterministic — no randomness in fitting or prediction.

use std::collections::BTreeMap;

use crate::grammar::{Emotion, LabeledSentence};
use crate::metrics::{compute_metrics, Metrics, MetricsError, N_CLASSES};

/// Vocabulary, smoothed inverse document frequencies and document count.
/// The idf variant is `ln((1+N)/(1+df)) + 1`, so every weight is positive;
/// vectors are L2-normalized raw-count tf times idf.
#[derive(Debug, Clone)]
pub struct TfidfModel {
    vocabulary: BTreeMap<String, usize>,
    idf: Vec<f64>,
    pub document_count: usize,
}

impl TfidfModel {
    pub fn fit(corpus: &[LabeledSentence]) -> Result<Self, BaselineError> {
        if corpus.is_empty() {
            return Err(BaselineError::EmptyCorpus);
        }
        let mut vocabulary = BTreeMap::new();
        for sentence in corpus {
            for token in &sentence.tokens {
                let next = vocabulary.len();
                vocabulary.entry(token.clone()).or_insert(next);
            }
        }
        let mut document_frequency = vec![0usize; vocabulary.len()];
        for sentence in corpus {
            let mut seen = vec![false; vocabulary.len()];
            for token in &sentence.tokens {
                let &index = vocabulary.get(token).expect("vocabulary covers corpus");
                if !seen[index] {
                    seen[index] = true;
                    document_frequency[index] += 1;
                }
            }
        }
        let n = corpus.len() as f64;
        let idf = document_frequency
            .iter()
            .map(|&df| ((1.0 + n) / (1.0 + df as f64)).ln() + 1.0)
            .collect();
        Ok(Self { vocabulary, idf, document_count: corpus.len() })
    }

    pub fn vocabulary_size(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn idf_of(&self, token: &str) -> Option<f64> {
        self.vocabulary.get(token).map(|&i| self.idf[i])
    }

    /// Sparse L2-normalized feature vector. Out-of-vocabulary tokens are
    /// dropped.
    pub fn transform(&self, tokens: &[String]) -> Vec<(usize, f64)> {
        let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
        for token in tokens {
            if let Some(&index) = self.vocabulary.get(token) {
                *counts.entry(index).or_insert(0.0) += 1.0;
            }
        }
        let mut features: Vec<(usize, f64)> = counts
            .into_iter()
            .map(|(index, tf)| (index, tf * self.idf[index]))
            .collect();
        let norm: f64 = features.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        if norm > 0.0 {
            for (_, w) in &mut features {
                *w /= norm;
            }
        }
        features
    }
}

/// Multinomial naive Bayes over TF-IDF weights with Laplace smoothing,
/// scored in log space.
#[derive(Debug, Clone)]
pub struct NaiveBayesModel {
    pub priors: [f64; N_CLASSES],
    /// Per-class summed feature weights.
    class_feature_sums: Vec<[f64; N_CLASSES]>,
    class_totals: [f64; N_CLASSES],
    pub smoothing: f64,
    /// Classes never seen in training; flagged, not fatal — they simply
    /// cannot win the argmax.
    pub missing_classes: Vec<Emotion>,
}

impl NaiveBayesModel {
    pub fn fit(
        features: &[Vec<(usize, f64)>],
        labels: &[Emotion],
        vocabulary_size: usize,
        smoothing: f64,
    ) -> Result<Self, BaselineError> {
        if features.len() != labels.len() {
            return Err(BaselineError::Misaligned {
                features: features.len(),
                labels: labels.len(),
            });
        }
        if smoothing <= 0.0 {
            return Err(BaselineError::BadSmoothing { smoothing });
        }
        let mut class_counts = [0usize; N_CLASSES];
        let mut class_feature_sums = vec![[0.0; N_CLASSES]; vocabulary_size];
        let mut class_totals = [0.0; N_CLASSES];
        for (feature_vec, label) in features.iter().zip(labels) {
            let c = label.class_index();
            class_counts[c] += 1;
            for &(index, weight) in feature_vec {
                class_feature_sums[index][c] += weight;
                class_totals[c] += weight;
            }
        }
        let n = features.len() as f64;
        let mut priors = [0.0; N_CLASSES];
        let mut missing_classes = Vec::new();
        for (c, &count) in class_counts.iter().enumerate() {
            priors[c] = count as f64 / n;
            if count == 0 {
                missing_classes.push(Emotion::from_class_index(c).expect("class in range"));
            }
        }
        Ok(Self { priors, class_feature_sums, class_totals, smoothing, missing_classes })
    }

    /// Log-space class scores; absent classes score −∞.
    pub fn scores(&self, features: &[(usize, f64)]) -> [f64; N_CLASSES] {
        let vocab = self.class_feature_sums.len() as f64;
        let mut scores = [f64::NEG_INFINITY; N_CLASSES];
        for (c, slot) in scores.iter_mut().enumerate() {
            if self.priors[c] == 0.0 {
                continue;
            }
            let mut score = self.priors[c].ln();
            let denominator = (self.class_totals[c] + self.smoothing * vocab).ln();
            for &(index, weight) in features {
                let likelihood = (self.class_feature_sums[index][c] + self.smoothing).ln()
                    - denominator;
                score += weight * likelihood;
            }
            *slot = score;
        }
        scores
    }

    pub fn predict(&self, features: &[(usize, f64)]) -> Emotion {
        let scores = self.scores(features);
        let mut best = 0;
        for (c, &score) in scores.iter().enumerate().skip(1) {
            if score > scores[best] {
                best = c;
            }
        }
        Emotion::from_class_index(best).expect("class in range")
    }
}

/// Fit on the training split, predict the test split, return the metrics.
pub fn evaluate_baseline(
    train: &[LabeledSentence],
    test: &[LabeledSentence],
) -> Result<Metrics, BaselineError> {
    if test.is_empty() {
        return Err(BaselineError::EmptyTestSet);
    }
    let tfidf = TfidfModel::fit(train)?;
    let features: Vec<Vec<(usize, f64)>> =
        train.iter().map(|s| tfidf.transform(&s.tokens)).collect();
    let labels: Vec<Emotion> = train.iter().map(|s| s.label).collect();
    let nb = NaiveBayesModel::fit(&features, &labels, tfidf.vocabulary_size(), 1.0)?;

    let truth: Vec<Emotion> = test.iter().map(|s| s.label).collect();
    let predictions: Vec<Emotion> = test
        .iter()
        .map(|s| nb.predict(&tfidf.transform(&s.tokens)))
        .collect();
    Ok(compute_metrics(&truth, &predictions)?)
}

#[derive(Debug, thiserror::Error)]
pub enum BaselineError {
    #[error("cannot fit TF-IDF on an empty corpus")]
    EmptyCorpus,
    #[error("cannot evaluate on an empty test set")]
    EmptyTestSet,
    #[error("{features} feature vectors vs {labels} labels")]
    Misaligned { features: usize, labels: usize },
    #[error("smoothing must be positive, got {smoothing}")]
    BadSmoothing { smoothing: f64 },
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}
