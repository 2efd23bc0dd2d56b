//! Gradient-free training of the circuit parameters.
//!
//! The objective is the mean cross-entropy of the post-selected outcome
//! distributions against the sentence labels. SPSA is the default optimizer
//! (two objective evaluations per iteration regardless of dimension);
//! Nelder-Mead is available as a second gradient-free option. Per-sentence
//! circuit evaluations within one loss computation run in parallel and are
//! reduced in dataset order, so thread count never changes the result.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use crate::compiler::{compile, Circuit, CompilerError, ParameterStore};
use crate::diagram::{build_diagram, DiagramError};
use crate::grammar::{Emotion, GrammarError, LabeledSentence, Template};
use crate::rng::{streams, SplitMix64};
use crate::simulator::SimulatorError;

/// Probability clamp in the loss: a sentence whose true-class probability
/// vanishes (including post-selection annihilation) contributes ln(1/ε).
pub const PROBABILITY_CLAMP: f64 = 1e-9;

/// One point of the training curve.
#[derive(Debug, Clone, PartialEq)]
pub struct LossReport {
    pub iteration: u64,
    pub loss: f64,
    /// Seconds since training started.
    pub wall_time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Spsa,
    NelderMead,
}

impl Algorithm {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "spsa" => Some(Algorithm::Spsa),
            "nelder_mead" => Some(Algorithm::NelderMead),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Spsa => "spsa",
            Algorithm::NelderMead => "nelder_mead",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub algorithm: Algorithm,
    pub max_iterations: u64,
    /// SPSA step gain.
    pub a: f64,
    /// SPSA perturbation scale.
    pub c: f64,
    /// SPSA stability constant.
    pub big_a: f64,
    /// Step decay exponent.
    pub alpha: f64,
    /// Perturbation decay exponent.
    pub gamma: f64,
    pub seed: u64,
    /// Plateau stop: halt when the best loss improves by less than this over
    /// 50 consecutive iterations. Zero disables the plateau stop.
    pub tolerance: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Spsa,
            max_iterations: 500,
            a: 0.1,
            c: 0.1,
            big_a: 10.0,
            alpha: 0.602,
            gamma: 0.101,
            seed: 0,
            tolerance: 1e-4,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<(), TrainerError> {
        if self.a <= 0.0 || self.c <= 0.0 {
            return Err(TrainerError::BadConfig {
                message: format!("gains must be positive (a={}, c={})", self.a, self.c),
            });
        }
        if !(0.0..=1.0).contains(&self.alpha)
            || !(0.0..=1.0).contains(&self.gamma)
            || self.alpha == 0.0
            || self.gamma == 0.0
        {
            return Err(TrainerError::BadConfig {
                message: format!(
                    "decay exponents must lie in (0, 1] (alpha={}, gamma={})",
                    self.alpha, self.gamma
                ),
            });
        }
        Ok(())
    }
}

/// A dataset compiled once: circuits hold parameter references, so they stay
/// valid as the store's values change between iterations.
pub struct CompiledDataset {
    pub items: Vec<(Circuit, Emotion)>,
}

impl CompiledDataset {
    pub fn compile_all(
        dataset: &[LabeledSentence],
        templates: &[Template],
        store: &ParameterStore,
    ) -> Result<Self, TrainerError> {
        let find = |id: &str| templates.iter().find(|t| t.id == id);
        let items = dataset
            .iter()
            .map(|sentence| {
                let template = find(&sentence.template_id).ok_or_else(|| {
                    TrainerError::UnknownTemplate {
                        template_id: sentence.template_id.clone(),
                    }
                })?;
                let diagram = build_diagram(sentence, template)?;
                let circuit = compile(&diagram, store, store.qubits_per_n)?;
                Ok((circuit, sentence.label))
            })
            .collect::<Result<Vec<_>, TrainerError>>()?;
        Ok(Self { items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Negative log likelihood of one clamped probability.
fn nll(p_true: f64) -> f64 {
    -p_true.max(PROBABILITY_CLAMP).ln()
}

/// Mean cross-entropy of the model's outcome distributions against the
/// labels. Evaluations run in parallel; the sum is taken in dataset order.
pub fn cross_entropy(
    store: &ParameterStore,
    dataset: &CompiledDataset,
) -> Result<f64, TrainerError> {
    let terms: Vec<Result<f64, TrainerError>> = dataset
        .items
        .par_iter()
        .map_init(
            || crate::simulator::QuantumState::zero(1),
            |scratch, (circuit, label)| match circuit.evaluate_into(store, scratch) {
                Ok(dist) => Ok(nll(dist[label.class_index()])),
                Err(CompilerError::Simulator(SimulatorError::ZeroNorm { .. })) => Ok(nll(0.0)),
                Err(e) => Err(e.into()),
            },
        )
        .collect();
    let mut total = 0.0;
    for term in terms {
        total += term?;
    }
    Ok(total / dataset.len() as f64)
}

/// Mean clamped negative log likelihood of pre-computed true-class
/// probabilities — the loss formula on its own.
pub fn mean_nll(p_true: &[f64]) -> f64 {
    p_true.iter().map(|&p| nll(p)).sum::<f64>() / p_true.len() as f64
}

/// SPSA gain schedules `a_k = a/(k+1+A)^α` and `c_k = c/(k+1)^γ`.
pub fn spsa_gains(k: u64, config: &OptimizerConfig) -> (f64, f64) {
    let a_k = config.a / (k as f64 + 1.0 + config.big_a).powf(config.alpha);
    let c_k = config.c / (k as f64 + 1.0).powf(config.gamma);
    (a_k, c_k)
}

/// One simultaneous-perturbation step at iteration `k` (0-based).
///
/// Draws a Rademacher direction Δ, estimates the gradient from the two
/// evaluations f(θ±c_kΔ) and descends with the decaying gain a_k.
pub fn spsa_step<F>(
    params: &[f64],
    objective: &mut F,
    k: u64,
    config: &OptimizerConfig,
    rng: &mut SplitMix64,
) -> Vec<f64>
where
    F: FnMut(&[f64]) -> f64,
{
    let (a_k, c_k) = spsa_gains(k, config);
    let delta: Vec<f64> = params.iter().map(|_| rng.rademacher()).collect();
    let plus: Vec<f64> = params.iter().zip(&delta).map(|(t, d)| t + c_k * d).collect();
    let minus: Vec<f64> = params.iter().zip(&delta).map(|(t, d)| t - c_k * d).collect();
    let df = objective(&plus) - objective(&minus);
    params
        .iter()
        .zip(&delta)
        .map(|(t, d)| t - a_k * df / (2.0 * c_k * d))
        .collect()
}

/// Where (and how often) to persist parameters during training.
pub struct CheckpointSink {
    pub path: PathBuf,
    pub every: u64,
}

impl CheckpointSink {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into(), every: 25 }
    }
}

/// Outcome of a training run.
pub struct TrainOutcome {
    /// The store holding the best-seen parameters.
    pub store: ParameterStore,
    pub curve: Vec<LossReport>,
    pub best_loss: f64,
}

/// Fit the store against the training set.
///
/// Reports the loss at the current parameters once per iteration (row 0 is
/// the pre-training loss), tracks the best-seen parameters, checkpoints them
/// periodically, and stops at `max_iterations` or on a loss plateau.
pub fn train(
    store: ParameterStore,
    dataset: &CompiledDataset,
    config: &OptimizerConfig,
    checkpoint: Option<&CheckpointSink>,
) -> Result<TrainOutcome, TrainerError> {
    config.validate()?;
    if dataset.is_empty() {
        return Err(TrainerError::EmptyTrainingSet);
    }
    let start = Instant::now();
    let mut store = store;
    let mut curve = Vec::with_capacity(config.max_iterations as usize + 1);

    let mut eval_store = store.clone();
    let mut objective = |params: &[f64]| -> Result<f64, TrainerError> {
        eval_store.set_values(params);
        cross_entropy(&eval_store, dataset)
    };

    let mut params: Vec<f64> = store.values().to_vec();
    let initial_loss = objective(&params)?;
    curve.push(LossReport {
        iteration: 0,
        loss: initial_loss,
        wall_time: start.elapsed().as_secs_f64(),
    });

    let mut best_loss = initial_loss;
    let mut best_params = params.clone();
    let mut stall = 0u32;

    match config.algorithm {
        Algorithm::Spsa => {
            let mut rng = SplitMix64::derive(config.seed, streams::SPSA);
            for k in 0..config.max_iterations {
                let mut err: Option<TrainerError> = None;
                let mut fallible = |p: &[f64]| match objective(p) {
                    Ok(v) => v,
                    Err(e) => {
                        err = Some(e);
                        f64::INFINITY
                    }
                };
                let next = spsa_step(&params, &mut fallible, k, config, &mut rng);
                if let Some(e) = err {
                    return Err(e);
                }
                params = next;
                let loss = objective(&params)?;
                curve.push(LossReport {
                    iteration: k + 1,
                    loss,
                    wall_time: start.elapsed().as_secs_f64(),
                });
                let improvement = best_loss - loss;
                if loss < best_loss {
                    best_loss = loss;
                    best_params.copy_from_slice(&params);
                }
                if config.tolerance > 0.0 {
                    if improvement < config.tolerance {
                        stall += 1;
                    } else {
                        stall = 0;
                    }
                }
                if let Some(sink) = checkpoint {
                    if (k + 1) % sink.every == 0 {
                        store.set_values(&best_params);
                        store.save(&sink.path)?;
                    }
                }
                if stall >= 50 {
                    break;
                }
            }
        }
        Algorithm::NelderMead => {
            nelder_mead(
                &mut params,
                &mut objective,
                config,
                &mut curve,
                &mut best_loss,
                &mut best_params,
                checkpoint,
                &mut store,
                start,
            )?;
        }
    }

    store.set_values(&best_params);
    if let Some(sink) = checkpoint {
        store.save(&sink.path)?;
    }
    Ok(TrainOutcome { store, curve, best_loss })
}

/// Standard Nelder-Mead with reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5. One iteration = one simplex update; the reported loss is the
/// current best vertex.
#[allow(clippy::too_many_arguments)]
fn nelder_mead<F>(
    params: &mut Vec<f64>,
    objective: &mut F,
    config: &OptimizerConfig,
    curve: &mut Vec<LossReport>,
    best_loss: &mut f64,
    best_params: &mut [f64],
    checkpoint: Option<&CheckpointSink>,
    store: &mut ParameterStore,
    start: Instant,
) -> Result<(), TrainerError>
where
    F: FnMut(&[f64]) -> Result<f64, TrainerError>,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;
    let dim = params.len();
    let spread = 0.5;

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((params.clone(), objective(params)?));
    for i in 0..dim {
        let mut vertex = params.clone();
        vertex[i] += spread;
        let value = objective(&vertex)?;
        simplex.push((vertex, value));
    }

    let mut stall = 0u32;
    for k in 0..config.max_iterations {
        simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|(v, _)| v[i]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let reflected: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(c, w)| c + REFLECT * (c - w))
            .collect();
        let f_reflected = objective(&reflected)?;

        if f_reflected < simplex[0].1 {
            let expanded: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + EXPAND * (c - w))
                .collect();
            let f_expanded = objective(&expanded)?;
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
        } else if f_reflected < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_reflected);
        } else {
            let contracted: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + CONTRACT * (w - c))
                .collect();
            let f_contracted = objective(&contracted)?;
            if f_contracted < worst.1 {
                simplex[dim] = (contracted, f_contracted);
            } else {
                let best_vertex = simplex[0].0.clone();
                for (vertex, value) in simplex.iter_mut().skip(1) {
                    for (v, b) in vertex.iter_mut().zip(&best_vertex) {
                        *v = b + SHRINK * (*v - b);
                    }
                    *value = objective(vertex)?;
                }
            }
        }

        simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
        let loss = simplex[0].1;
        curve.push(LossReport {
            iteration: k + 1,
            loss,
            wall_time: start.elapsed().as_secs_f64(),
        });
        let improvement = *best_loss - loss;
        if loss < *best_loss {
            *best_loss = loss;
            best_params.copy_from_slice(&simplex[0].0);
        }
        if config.tolerance > 0.0 {
            if improvement < config.tolerance {
                stall += 1;
            } else {
                stall = 0;
            }
        }
        if let Some(sink) = checkpoint {
            if (k + 1) % sink.every == 0 {
                store.set_values(best_params);
                store.save(&sink.path)?;
            }
        }
        if stall >= 50 {
            break;
        }
    }
    *params = simplex[0].0.clone();
    Ok(())
}

/// Loss curve as CSV with header `iteration,loss,wall_time_s`.
pub fn curve_to_csv(curve: &[LossReport]) -> String {
    let mut out = String::from("iteration,loss,wall_time_s\n");
    for point in curve {
        out.push_str(&format!(
            "{},{:.17e},{:.3}\n",
            point.iteration, point.loss, point.wall_time
        ));
    }
    out
}

/// Predict the class of every compiled sentence: argmax of the outcome
/// distribution, ties broken toward the lower class index. A sentence whose
/// post-selection annihilates gets class 0 (it carries no information).
pub fn predict(
    store: &ParameterStore,
    dataset: &CompiledDataset,
) -> Result<Vec<Emotion>, TrainerError> {
    let outcomes: Vec<Result<Emotion, TrainerError>> = dataset
        .items
        .par_iter()
        .map_init(
            || crate::simulator::QuantumState::zero(1),
            |scratch, (circuit, _)| match circuit.evaluate_into(store, scratch) {
                Ok(dist) => Ok(argmax_class(&dist)),
                Err(CompilerError::Simulator(SimulatorError::ZeroNorm { .. })) => {
                    Ok(Emotion::Happiness)
                }
                Err(e) => Err(e.into()),
            },
        )
        .collect();
    outcomes.into_iter().collect()
}

/// Argmax with deterministic tie-breaking toward the lower class index.
pub fn argmax_class(distribution: &[f64; 4]) -> Emotion {
    let mut best = 0;
    for (i, &p) in distribution.iter().enumerate().skip(1) {
        if p > distribution[best] {
            best = i;
        }
    }
    Emotion::from_class_index(best).expect("index in range")
}

#[derive(Debug, thiserror::Error)]
pub enum TrainerError {
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("dataset references unknown template `{template_id}`")]
    UnknownTemplate { template_id: String },
    #[error("bad optimizer configuration: {message}")]
    BadConfig { message: String },
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Compiler(#[from] CompilerError),
    #[error(transparent)]
    Checkpoint(#[from] crate::compiler::CheckpointError),
}
