//! Exact state-vector simulation.
//!
//! A state over `n` qubits is a dense array of `2^n` complex amplitudes;
//! basis index bit `i` is qubit `i` (qubit 0 least significant). Gates are
//! applied in place, one or two qubits at a time; nothing ever materializes
//! a full-space gate matrix.

use num_complex::Complex64;

use crate::rng::{streams, SplitMix64};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// A concrete gate with literal angles, ready to apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H { target: usize },
    Rx { target: usize, theta: f64 },
    Rz { target: usize, theta: f64 },
    Cx { control: usize, target: usize },
    Crz { control: usize, target: usize, theta: f64 },
}

impl Gate {
    pub fn target(&self) -> usize {
        match *self {
            Gate::H { target }
            | Gate::Rx { target, .. }
            | Gate::Rz { target, .. }
            | Gate::Cx { target, .. }
            | Gate::Crz { target, .. } => target,
        }
    }

    pub fn control(&self) -> Option<usize> {
        match *self {
            Gate::Cx { control, .. } | Gate::Crz { control, .. } => Some(control),
            _ => None,
        }
    }
}

/// Dense complex amplitude vector over the computational basis.
#[derive(Debug, Clone)]
pub struct QuantumState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// Outcome of projecting a set of qubits onto |0⟩.
#[derive(Debug, Clone)]
pub struct PostselectResult {
    /// Projection re-indexed onto the surviving qubits, NOT renormalized.
    pub residual_state: QuantumState,
    /// Squared norm of the kept amplitude slice.
    pub success_probability: f64,
}

/// Success probabilities below this count as true annihilation rather than
/// numerical underflow.
pub const ZERO_NORM_THRESHOLD: f64 = 1e-300;

impl QuantumState {
    /// All qubits in |0⟩.
    pub fn zero(n_qubits: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amplitudes }
    }

    /// Reset to |0…0⟩ on `n_qubits`, reusing the allocation when possible.
    pub fn reset_zero(&mut self, n_qubits: usize) {
        self.n_qubits = n_qubits;
        self.amplitudes.clear();
        self.amplitudes.resize(1 << n_qubits, Complex64::new(0.0, 0.0));
        self.amplitudes[0] = Complex64::new(1.0, 0.0);
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Apply one gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimulatorError> {
        let n = self.n_qubits;
        let target = gate.target();
        if target >= n {
            return Err(SimulatorError::BadIndex { index: target, n_qubits: n });
        }
        if let Some(control) = gate.control() {
            if control >= n {
                return Err(SimulatorError::BadIndex { index: control, n_qubits: n });
            }
            if control == target {
                return Err(SimulatorError::BadIndex { index: control, n_qubits: n });
            }
        }
        match *gate {
            Gate::H { target } => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                self.map_pairs(target, |a0, a1| (h * (a0 + a1), h * (a0 - a1)));
            }
            Gate::Rx { target, theta } => {
                let c = Complex64::new((theta / 2.0).cos(), 0.0);
                let ms = Complex64::new(0.0, -(theta / 2.0).sin());
                self.map_pairs(target, |a0, a1| (c * a0 + ms * a1, ms * a0 + c * a1));
            }
            Gate::Rz { target, theta } => {
                let p0 = Complex64::from_polar(1.0, -theta / 2.0);
                let p1 = Complex64::from_polar(1.0, theta / 2.0);
                self.map_pairs(target, |a0, a1| (p0 * a0, p1 * a1));
            }
            Gate::Cx { control, target } => {
                let cbit = 1usize << control;
                let tbit = 1usize << target;
                for idx in 0..self.amplitudes.len() {
                    // Visit each swapped pair once, from its target=0 side.
                    if idx & cbit != 0 && idx & tbit == 0 {
                        self.amplitudes.swap(idx, idx | tbit);
                    }
                }
            }
            Gate::Crz { control, target, theta } => {
                let cbit = 1usize << control;
                let tbit = 1usize << target;
                let p0 = Complex64::from_polar(1.0, -theta / 2.0);
                let p1 = Complex64::from_polar(1.0, theta / 2.0);
                for (idx, amp) in self.amplitudes.iter_mut().enumerate() {
                    if idx & cbit != 0 {
                        *amp *= if idx & tbit == 0 { p0 } else { p1 };
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_all(&mut self, gates: &[Gate]) -> Result<(), SimulatorError> {
        for gate in gates {
            self.apply(gate)?;
        }
        Ok(())
    }

    /// Apply a closure to every amplitude pair that differs only in `target`.
    fn map_pairs<F>(&mut self, target: usize, f: F)
    where
        F: Fn(Complex64, Complex64) -> (Complex64, Complex64),
    {
        let tbit = 1usize << target;
        let len = self.amplitudes.len();
        let mut base = 0;
        while base < len {
            for low in base..base + tbit {
                let high = low | tbit;
                let (a0, a1) = (self.amplitudes[low], self.amplitudes[high]);
                let (b0, b1) = f(a0, a1);
                self.amplitudes[low] = b0;
                self.amplitudes[high] = b1;
            }
            base += tbit << 1;
        }
    }

    /// Born probability of one full basis outcome; `bits[i]` is qubit `i`.
    pub fn born_probability(&self, bits: &[bool]) -> Result<f64, SimulatorError> {
        if bits.len() != self.n_qubits {
            return Err(SimulatorError::BadIndex {
                index: bits.len(),
                n_qubits: self.n_qubits,
            });
        }
        let index = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (q, &b)| acc | (usize::from(b) << q));
        Ok(self.amplitudes[index].norm_sqr())
    }

    /// Project the given qubits onto |0⟩ and drop them from the state.
    ///
    /// The residual keeps the surviving qubits in ascending original order
    /// and is left unrenormalized; `success_probability` is the squared norm
    /// that survived (possibly 0 — the caller decides what that means).
    pub fn postselect_zero(&self, qubits: &[usize]) -> Result<PostselectResult, SimulatorError> {
        let mut selected = 0usize;
        for &q in qubits {
            if q >= self.n_qubits {
                return Err(SimulatorError::BadIndex { index: q, n_qubits: self.n_qubits });
            }
            selected |= 1 << q;
        }
        let survivors: Vec<usize> = (0..self.n_qubits)
            .filter(|q| selected & (1 << q) == 0)
            .collect();
        let mut residual = vec![Complex64::new(0.0, 0.0); 1 << survivors.len()];
        let mut success = 0.0;
        for (compressed, slot) in residual.iter_mut().enumerate() {
            // Scatter the compressed index back into the surviving bit
            // positions; selected bits stay 0.
            let mut full = 0usize;
            for (pos, &q) in survivors.iter().enumerate() {
                if compressed & (1 << pos) != 0 {
                    full |= 1 << q;
                }
            }
            let amp = self.amplitudes[full];
            success += amp.norm_sqr();
            *slot = amp;
        }
        Ok(PostselectResult {
            residual_state: QuantumState {
                n_qubits: survivors.len(),
                amplitudes: residual,
            },
            success_probability: success,
        })
    }
}

/// The four outcome probabilities of a two-qubit residual, renormalized.
///
/// Outcome index reads the residual's qubits as a bitstring with qubit 0
/// first: index = 2·bit(qubit 0) + bit(qubit 1), matching the class-index ↔
/// bitstring convention of [`crate::grammar::Emotion`].
pub fn distribution(result: &PostselectResult) -> Result<[f64; 4], SimulatorError> {
    assert_eq!(
        result.residual_state.n_qubits, 2,
        "distribution requires a two-qubit residual"
    );
    if result.success_probability < ZERO_NORM_THRESHOLD {
        return Err(SimulatorError::ZeroNorm {
            norm: result.success_probability,
        });
    }
    let amps = &result.residual_state.amplitudes;
    let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    // Internal index has qubit 0 least significant; outcome index has
    // qubit 0 as the leading bit.
    let p = |b0: usize, b1: usize| amps[b0 + 2 * b1].norm_sqr() / total;
    Ok([p(0, 0), p(0, 1), p(1, 0), p(1, 1)])
}

/// Multinomial shot sampling from an outcome distribution.
pub fn sample(distribution: &[f64; 4], shots: u64, seed: u64) -> [u64; 4] {
    let mut rng = SplitMix64::derive(seed, streams::SAMPLE);
    let mut counts = [0u64; 4];
    let total: f64 = distribution.iter().sum();
    for _ in 0..shots {
        let mut u = rng.next_f64() * total;
        let mut outcome = 3;
        for (i, &p) in distribution.iter().enumerate() {
            if u < p {
                outcome = i;
                break;
            }
            u -= p;
        }
        counts[outcome] += 1;
    }
    counts
}

#[derive(Debug, thiserror::Error)]
pub enum SimulatorError {
    #[error("qubit index {index} out of range for {n_qubits} qubits (or duplicated)")]
    BadIndex { index: usize, n_qubits: usize },
    #[error("post-selection annihilated the state (norm {norm:.3e})")]
    ZeroNorm { norm: f64 },
}
