//! Property tests for the spec invariants: simulator algebra, post-selection
//! accounting, metric agreement with a naive reference, and labeling
//! symmetries.

mod common;

use common::{default_lexicon, default_templates, full_emotion_lexicon};
use proptest::prelude::*;

use qnlp::compiler::{compile, ParameterStore, QubitLayout};
use qnlp::diagram::{build_diagram, contract_oracle};
use qnlp::grammar::{generate_dataset, Emotion, LabeledSentence, Lexicon, Template};
use qnlp::metrics::{compute_metrics, N_CLASSES};
use qnlp::simulator::{Gate, QuantumState};

fn arbitrary_gate(n_qubits: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n_qubits;
    let pair = (0..n_qubits, 0..n_qubits - 1).prop_map(move |(a, b)| {
        let b = if b >= a { b + 1 } else { b };
        (a, b)
    });
    prop_oneof![
        q.clone().prop_map(|target| Gate::H { target }),
        (q.clone(), -10.0..10.0).prop_map(|(target, theta)| Gate::Rx { target, theta }),
        (q, -10.0..10.0).prop_map(|(target, theta)| Gate::Rz { target, theta }),
        pair.clone().prop_map(|(control, target)| Gate::Cx { control, target }),
        (pair, -10.0..10.0)
            .prop_map(|(pair, theta)| Gate::Crz { control: pair.0, target: pair.1, theta }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_circuits_preserve_norm(gates in prop::collection::vec(arbitrary_gate(5), 0..40)) {
        let mut state = QuantumState::zero(5);
        for gate in &gates {
            state.apply(gate).unwrap();
        }
        prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rz_accumulates_angles(
        gates in prop::collection::vec(arbitrary_gate(3), 0..12),
        theta1 in -6.0..6.0f64,
        theta2 in -6.0..6.0f64,
        target in 0usize..3,
    ) {
        let mut split = QuantumState::zero(3);
        let mut joint = QuantumState::zero(3);
        for gate in &gates {
            split.apply(gate).unwrap();
            joint.apply(gate).unwrap();
        }
        split.apply(&Gate::Rz { target, theta: theta1 }).unwrap();
        split.apply(&Gate::Rz { target, theta: theta2 }).unwrap();
        joint.apply(&Gate::Rz { target, theta: theta1 + theta2 }).unwrap();
        for (a, b) in split.amplitudes().iter().zip(joint.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn involutions_cancel(
        gates in prop::collection::vec(arbitrary_gate(4), 0..16),
        target in 0usize..4,
        control in 0usize..4,
    ) {
        let mut reference = QuantumState::zero(4);
        let mut doubled = QuantumState::zero(4);
        for gate in &gates {
            reference.apply(gate).unwrap();
            doubled.apply(gate).unwrap();
        }
        doubled.apply(&Gate::H { target }).unwrap();
        doubled.apply(&Gate::H { target }).unwrap();
        if control != target {
            doubled.apply(&Gate::Cx { control, target }).unwrap();
            doubled.apply(&Gate::Cx { control, target }).unwrap();
        }
        for (a, b) in reference.amplitudes().iter().zip(doubled.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn complementary_postselection_patterns_cover_unit_probability(
        gates in prop::collection::vec(arbitrary_gate(4), 1..20),
        selected in prop::collection::btree_set(0usize..4, 1..=3),
    ) {
        let mut state = QuantumState::zero(4);
        for gate in &gates {
            state.apply(gate).unwrap();
        }
        let selected: Vec<usize> = selected.into_iter().collect();
        // Flipping a qubit with RX(π) turns zero-selection into
        // one-selection up to global phase, so summing over every flip
        // pattern scans all outcomes of the selected set.
        let mut total = 0.0;
        for pattern in 0..(1u32 << selected.len()) {
            let mut flipped = state.clone();
            for (bit, &q) in selected.iter().enumerate() {
                if pattern & (1 << bit) != 0 {
                    flipped.apply(&Gate::Rx { target: q, theta: std::f64::consts::PI }).unwrap();
                }
            }
            total += flipped.postselect_zero(&selected).unwrap().success_probability;
        }
        prop_assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn metrics_agree_with_naive_reference(
        pairs in prop::collection::vec((0usize..4, 0usize..4), 1..200)
    ) {
        let truth: Vec<Emotion> = pairs.iter().map(|&(t, _)| Emotion::from_class_index(t).unwrap()).collect();
        let predictions: Vec<Emotion> = pairs.iter().map(|&(_, p)| Emotion::from_class_index(p).unwrap()).collect();
        let metrics = compute_metrics(&truth, &predictions).unwrap();

        // Naive recount, one pass per class.
        let mut correct = 0usize;
        for (t, p) in truth.iter().zip(&predictions) {
            if t == p {
                correct += 1;
            }
        }
        prop_assert!((metrics.accuracy - correct as f64 / pairs.len() as f64).abs() < 1e-12);
        let mut f1_sum = 0.0;
        for c in 0..N_CLASSES {
            let tp = pairs.iter().filter(|&&(t, p)| t == c && p == c).count() as f64;
            let fp = pairs.iter().filter(|&&(t, p)| t != c && p == c).count() as f64;
            let fn_ = pairs.iter().filter(|&&(t, p)| t == c && p != c).count() as f64;
            let f1 = if 2.0 * tp + fp + fn_ > 0.0 && tp > 0.0 {
                2.0 * tp / (2.0 * tp + fp + fn_)
            } else {
                0.0
            };
            prop_assert!((metrics.per_class_f1[c] - f1).abs() < 1e-12);
            f1_sum += f1;
        }
        prop_assert!((metrics.macro_f1 - f1_sum / 4.0).abs() < 1e-12);
        for c in 0..N_CLASSES {
            let row: u64 = metrics.confusion[c].iter().sum();
            if row > 0 {
                let sum: f64 = metrics.normalized[c].iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn labeling_ignores_lexicon_insertion_order(shuffle_seed in 0u64..1000) {
        let reference = full_emotion_lexicon();
        let mut entries: Vec<_> = reference.entries().collect();
        // Deterministic pseudo-shuffle of the entry order.
        let n = entries.len();
        for i in (1..n).rev() {
            let j = (shuffle_seed as usize).wrapping_mul(2654435761).wrapping_add(i) % (i + 1);
            entries.swap(i, j);
        }
        let shuffled = Lexicon::from_entries(entries).unwrap();
        let templates = default_templates();
        let a = generate_dataset(&reference, &templates).unwrap();
        let b = generate_dataset(&shuffled, &templates).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    // Heavier cases: keep the count small.
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn oracle_equivalence_on_random_parameters(seed in 0u64..10_000) {
        let lexicon = default_lexicon();
        let store = ParameterStore::init(&lexicon, 2, 2, seed);
        let mut templates = default_templates();
        templates.push(Template::parse("n-iv").unwrap());
        let sentences = [
            vec!["boy", "amuse", "child"],
            vec!["furious", "neighbour", "cry"],
            vec!["furious", "neighbour", "attack", "child"],
            vec!["boy", "scare", "young", "child"],
            vec!["child", "cry"],
        ];
        for (template, tokens) in templates.iter().zip(&sentences) {
            let sentence = LabeledSentence {
                tokens: tokens.iter().map(|t| t.to_string()).collect(),
                template_id: template.id.clone(),
                label: Emotion::Happiness,
            };
            let diagram = build_diagram(&sentence, template).unwrap();
            let layout = QubitLayout::for_diagram(&diagram, 2).unwrap();
            let circuit = compile(&diagram, &store, 2).unwrap();
            let via_pipeline = circuit.evaluate(&store).unwrap();
            let via_oracle = contract_oracle(&diagram, &store, &layout).unwrap();
            for (a, b) in via_pipeline.iter().zip(&via_oracle) {
                prop_assert!((a - b).abs() < 1e-9, "pipeline {:?} vs oracle {:?}", via_pipeline, via_oracle);
            }
        }
    }
}

#[test]
fn tfidf_prediction_invariances() {
    use qnlp::baseline::{NaiveBayesModel, TfidfModel};

    let dataset = generate_dataset(&default_lexicon(), &default_templates()).unwrap();
    let train: Vec<LabeledSentence> = dataset.iter().take(200).cloned().collect();
    let test: Vec<LabeledSentence> = dataset.iter().skip(900).take(50).cloned().collect();

    let tfidf = TfidfModel::fit(&train).unwrap();
    let features: Vec<_> = train.iter().map(|s| tfidf.transform(&s.tokens)).collect();
    let labels: Vec<_> = train.iter().map(|s| s.label).collect();
    let nb = NaiveBayesModel::fit(&features, &labels, tfidf.vocabulary_size(), 1.0).unwrap();

    for sentence in &test {
        let base = tfidf.transform(&sentence.tokens);
        let prediction = nb.predict(&base);
        // The L2 normalization absorbs any common positive scaling of the
        // raw tf·idf weights: renormalizing a scaled copy reproduces the
        // same vector, so the predicted class cannot change.
        for scale in [0.25, 4.0] {
            let scaled: Vec<f64> = base.iter().map(|&(_, w)| w * scale).collect();
            let norm: f64 = scaled.iter().map(|w| w * w).sum::<f64>().sqrt();
            let rescaled: Vec<(usize, f64)> = base
                .iter()
                .zip(&scaled)
                .map(|(&(index, _), w)| (index, w / norm))
                .collect();
            for ((i, a), &(j, b)) in base.iter().zip(&rescaled) {
                assert_eq!(*i, j);
                assert!((a - b).abs() < 1e-12);
            }
            assert_eq!(nb.predict(&rescaled), prediction);
        }
    }

    // Vocabulary enumeration order: fitting on the reversed corpus assigns
    // different feature indices but must predict the same classes.
    let mut reversed = train.clone();
    reversed.reverse();
    let tfidf_rev = TfidfModel::fit(&reversed).unwrap();
    let features_rev: Vec<_> = reversed.iter().map(|s| tfidf_rev.transform(&s.tokens)).collect();
    let labels_rev: Vec<_> = reversed.iter().map(|s| s.label).collect();
    let nb_rev =
        NaiveBayesModel::fit(&features_rev, &labels_rev, tfidf_rev.vocabulary_size(), 1.0).unwrap();
    for sentence in &test {
        assert_eq!(
            nb.predict(&tfidf.transform(&sentence.tokens)),
            nb_rev.predict(&tfidf_rev.transform(&sentence.tokens))
        );
    }
}
