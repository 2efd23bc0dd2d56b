//! Lowering string diagrams to parameterized circuits.
//!
//! Each word box becomes a state-preparation ansatz on its own fresh qubits,
//! each cup becomes a Bell-basis effect (CX, H, then both qubits
//! post-selected on 0), and the open sentence wire's two qubits are the
//! measured result. Word parameters live in a shared [`ParameterStore`]:
//! circuits reference slots by index, so every occurrence of a word across
//! the corpus reads (and trains) the same angles.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::diagram::Diagram;
use crate::grammar::{Base, Lexicon, PartOfSpeech, SimpleType};
use crate::simulator::{self, Gate, QuantumState, SimulatorError};
use crate::rng::{streams, SplitMix64};

/// An angle operand: either a slot in the parameter store or a literal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleRef {
    Param(usize),
    Literal(f64),
}

impl AngleRef {
    fn resolve(&self, store: &ParameterStore) -> Result<f64, CompilerError> {
        match *self {
            AngleRef::Param(slot) => {
                store
                    .values
                    .get(slot)
                    .copied()
                    .ok_or(CompilerError::BadParameterSlot { slot })
            }
            AngleRef::Literal(value) => Ok(value),
        }
    }
}

/// A gate application with unresolved angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitGate {
    H { target: usize },
    Rx { target: usize, angle: AngleRef },
    Rz { target: usize, angle: AngleRef },
    Cx { control: usize, target: usize },
    Crz { control: usize, target: usize, angle: AngleRef },
}

impl CircuitGate {
    fn shifted(self, offset: usize) -> Self {
        match self {
            CircuitGate::H { target } => CircuitGate::H { target: target + offset },
            CircuitGate::Rx { target, angle } => CircuitGate::Rx { target: target + offset, angle },
            CircuitGate::Rz { target, angle } => CircuitGate::Rz { target: target + offset, angle },
            CircuitGate::Cx { control, target } => CircuitGate::Cx {
                control: control + offset,
                target: target + offset,
            },
            CircuitGate::Crz { control, target, angle } => CircuitGate::Crz {
                control: control + offset,
                target: target + offset,
                angle,
            },
        }
    }

    pub fn bind(&self, store: &ParameterStore) -> Result<Gate, CompilerError> {
        Ok(match *self {
            CircuitGate::H { target } => Gate::H { target },
            CircuitGate::Rx { target, angle } => Gate::Rx { target, theta: angle.resolve(store)? },
            CircuitGate::Rz { target, angle } => Gate::Rz { target, theta: angle.resolve(store)? },
            CircuitGate::Cx { control, target } => Gate::Cx { control, target },
            CircuitGate::Crz { control, target, angle } => Gate::Crz {
                control,
                target,
                theta: angle.resolve(store)?,
            },
        })
    }
}

impl fmt::Display for CircuitGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let angle = |a: &AngleRef| match a {
            AngleRef::Param(slot) => format!("θ[{slot}]"),
            AngleRef::Literal(v) => format!("{v:.6}"),
        };
        match self {
            CircuitGate::H { target } => write!(f, "H q{target}"),
            CircuitGate::Rx { target, angle: a } => write!(f, "RX({}) q{target}", angle(a)),
            CircuitGate::Rz { target, angle: a } => write!(f, "RZ({}) q{target}", angle(a)),
            CircuitGate::Cx { control, target } => write!(f, "CX q{control} -> q{target}"),
            CircuitGate::Crz { control, target, angle: a } => {
                write!(f, "CRZ({}) q{control} -> q{target}", angle(a))
            }
        }
    }
}

/// Qubit widths and wire-to-qubit assignment for one sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitLayout {
    pub qubits_per_n: usize,
    /// Always 2: four classes need two result qubits.
    pub qubits_per_s: usize,
    /// Wire index -> contiguous ascending qubit indices.
    pub wire_to_qubits: Vec<Vec<usize>>,
}

impl QubitLayout {
    /// Assign contiguous qubits to wires in reading order.
    pub fn assign(wires: &[SimpleType], qubits_per_n: usize) -> Result<Self, CompilerError> {
        if qubits_per_n == 0 {
            return Err(CompilerError::BadLayout {
                message: "qubits_per_n must be at least 1".into(),
            });
        }
        let qubits_per_s = 2;
        let mut wire_to_qubits = Vec::with_capacity(wires.len());
        let mut next = 0usize;
        for wire in wires {
            let width = match wire.base {
                Base::N => qubits_per_n,
                Base::S => qubits_per_s,
            };
            wire_to_qubits.push((next..next + width).collect());
            next += width;
        }
        Ok(Self { qubits_per_n, qubits_per_s, wire_to_qubits })
    }

    pub fn for_diagram(diagram: &Diagram, qubits_per_n: usize) -> Result<Self, CompilerError> {
        Self::assign(&diagram.wires(), qubits_per_n)
    }

    pub fn n_qubits(&self) -> usize {
        self.wire_to_qubits.iter().map(Vec::len).sum()
    }

    pub fn qubits_of_wire(&self, wire: usize) -> &[usize] {
        &self.wire_to_qubits[wire]
    }
}

/// Number of qubits a word of the given part of speech occupies.
pub fn word_qubit_count(pos: PartOfSpeech, qubits_per_n: usize) -> usize {
    crate::grammar::type_of(pos)
        .simples()
        .iter()
        .map(|t| match t.base {
            Base::N => qubits_per_n,
            Base::S => 2,
        })
        .sum()
}

/// Angles required by the word ansatz: `depth·(k−1)` for k ≥ 2 entangled
/// qubits, a fixed Euler triple for k = 1.
pub fn parameter_count(k_qubits: usize, depth: usize) -> usize {
    if k_qubits == 1 {
        3
    } else {
        depth * (k_qubits - 1)
    }
}

/// State-preparation ansatz for one word on local qubits `0..k`.
///
/// For k ≥ 2: `depth` repetitions of a Hadamard wall followed by CRZ on each
/// adjacent qubit pair (control on the lower index). For k = 1 the rotation
/// chain RZ·RX·RZ covers the full Bloch sphere.
pub fn word_ansatz(
    k_qubits: usize,
    depth: usize,
    params: &[AngleRef],
) -> Result<Vec<CircuitGate>, CompilerError> {
    let expected = parameter_count(k_qubits, depth);
    if params.len() != expected {
        return Err(CompilerError::ArityMismatch {
            k_qubits,
            depth,
            expected,
            found: params.len(),
        });
    }
    let mut gates = Vec::new();
    if k_qubits == 1 {
        gates.push(CircuitGate::Rz { target: 0, angle: params[0] });
        gates.push(CircuitGate::Rx { target: 0, angle: params[1] });
        gates.push(CircuitGate::Rz { target: 0, angle: params[2] });
        return Ok(gates);
    }
    let mut next_param = params.iter();
    for _ in 0..depth {
        for q in 0..k_qubits {
            gates.push(CircuitGate::H { target: q });
        }
        for q in 0..k_qubits - 1 {
            gates.push(CircuitGate::Crz {
                control: q,
                target: q + 1,
                angle: *next_param.next().expect("arity checked above"),
            });
        }
    }
    Ok(gates)
}

/// Lower one cup into a Bell-basis effect.
///
/// Qubit `i` of the left wire pairs with qubit `q−1−i` of the right wire
/// (nested pairing, matching the cup tensor on composite spaces). Each pair
/// gets CX (left controls right) then H on the left qubit, and both qubits
/// are post-selected on 0.
pub fn lower_cup(
    wire_a_qubits: &[usize],
    wire_b_qubits: &[usize],
) -> Result<(Vec<CircuitGate>, Vec<usize>), CompilerError> {
    if wire_a_qubits.len() != wire_b_qubits.len() {
        return Err(CompilerError::WidthMismatch {
            left: wire_a_qubits.len(),
            right: wire_b_qubits.len(),
        });
    }
    let q = wire_a_qubits.len();
    let mut gates = Vec::with_capacity(2 * q);
    let mut postselect = Vec::with_capacity(2 * q);
    for i in 0..q {
        let a = wire_a_qubits[i];
        let b = wire_b_qubits[q - 1 - i];
        gates.push(CircuitGate::Cx { control: a, target: b });
        gates.push(CircuitGate::H { target: a });
        postselect.push(a);
        postselect.push(b);
    }
    Ok((gates, postselect))
}

/// Shared per-word parameter vectors, keyed by `(token, part of speech)`.
/// All circuits compiled against a store reference the same flat value
/// array, which is what ties weights across sentences.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterStore {
    slots: BTreeMap<(String, PartOfSpeech), (usize, usize)>,
    values: Vec<f64>,
    pub depth: usize,
    pub qubits_per_n: usize,
    pub seed: u64,
}

impl ParameterStore {
    /// Draw every word's angles uniformly from `[0, 2π)`, in deterministic
    /// `(token, pos)` order.
    pub fn init(lexicon: &Lexicon, depth: usize, qubits_per_n: usize, seed: u64) -> Self {
        let mut rng = SplitMix64::derive(seed, streams::INIT);
        let mut slots = BTreeMap::new();
        let mut values = Vec::new();
        for entry in lexicon.entries() {
            let k = word_qubit_count(entry.pos, qubits_per_n);
            let count = parameter_count(k, depth);
            let offset = values.len();
            for _ in 0..count {
                values.push(rng.next_f64() * std::f64::consts::TAU);
            }
            slots.insert((entry.token, entry.pos), (offset, count));
        }
        Self { slots, values, depth, qubits_per_n, seed }
    }

    pub fn total_count(&self) -> usize {
        self.values.len()
    }

    pub fn slot_range(&self, token: &str, pos: PartOfSpeech) -> Option<(usize, usize)> {
        self.slots.get(&(token.to_string(), pos)).copied()
    }

    pub fn contains(&self, token: &str, pos: PartOfSpeech) -> bool {
        self.slots.contains_key(&(token.to_string(), pos))
    }

    pub fn angles(&self, token: &str, pos: PartOfSpeech) -> Option<&[f64]> {
        self.slot_range(token, pos)
            .map(|(offset, count)| &self.values[offset..offset + count])
    }

    /// Flat view of every angle, in slot order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Replace the flat value vector (same length) — the optimizer's write
    /// path between objective evaluations.
    pub fn set_values(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.values.len(), "parameter count changed");
        self.values.copy_from_slice(values);
    }

    /// Serialize as the checkpoint format: one header line
    /// `depth=D<TAB>qubits_per_n=Q<TAB>seed=S`, then
    /// `token<TAB>pos<TAB>angle,angle,...` per word with 17 significant
    /// digits so values round-trip bit-exactly.
    pub fn to_checkpoint(&self) -> String {
        let mut out = format!(
            "depth={}\tqubits_per_n={}\tseed={}\n",
            self.depth, self.qubits_per_n, self.seed
        );
        for ((token, pos), (offset, count)) in &self.slots {
            let angles: Vec<String> = self.values[*offset..offset + count]
                .iter()
                .map(|v| format!("{v:.16e}"))
                .collect();
            out.push_str(&format!("{}\t{}\t{}\n", token, pos.name(), angles.join(",")));
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<(), CheckpointError> {
        std::fs::write(path, self.to_checkpoint()).map_err(|e| CheckpointError::Io {
            path: path.display().to_string(),
            source: e,
        })
    }

    pub fn from_checkpoint(text: &str) -> Result<Self, CheckpointError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(CheckpointError::Parse {
            line: 1,
            message: "empty checkpoint".into(),
        })?;
        let mut depth = None;
        let mut qubits_per_n = None;
        let mut seed = None;
        for field in header.split('\t') {
            let (key, value) = field.split_once('=').ok_or_else(|| CheckpointError::Parse {
                line: 1,
                message: format!("malformed header field `{field}`"),
            })?;
            let parsed: u64 = value.parse().map_err(|_| CheckpointError::Parse {
                line: 1,
                message: format!("non-numeric header value `{value}`"),
            })?;
            match key {
                "depth" => depth = Some(parsed as usize),
                "qubits_per_n" => qubits_per_n = Some(parsed as usize),
                "seed" => seed = Some(parsed),
                other => {
                    return Err(CheckpointError::Parse {
                        line: 1,
                        message: format!("unknown header key `{other}`"),
                    })
                }
            }
        }
        let (depth, qubits_per_n, seed) = match (depth, qubits_per_n, seed) {
            (Some(d), Some(q), Some(s)) => (d, q, s),
            _ => {
                return Err(CheckpointError::Parse {
                    line: 1,
                    message: "header must carry depth, qubits_per_n and seed".into(),
                })
            }
        };
        let mut slots = BTreeMap::new();
        let mut values = Vec::new();
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(CheckpointError::Parse {
                    line: idx + 1,
                    message: format!("expected 3 tab-separated fields, found {}", fields.len()),
                });
            }
            let pos = PartOfSpeech::parse(fields[1]).ok_or_else(|| CheckpointError::Parse {
                line: idx + 1,
                message: format!("unknown part of speech `{}`", fields[1]),
            })?;
            let offset = values.len();
            let mut count = 0;
            if !fields[2].is_empty() {
                for item in fields[2].split(',') {
                    let v: f64 = item.parse().map_err(|_| CheckpointError::Parse {
                        line: idx + 1,
                        message: format!("bad angle `{item}`"),
                    })?;
                    values.push(v);
                    count += 1;
                }
            }
            slots.insert((fields[0].to_string(), pos), (offset, count));
        }
        Ok(Self { slots, values, depth, qubits_per_n, seed })
    }

    pub fn load(path: &Path) -> Result<Self, CheckpointError> {
        let text = std::fs::read_to_string(path).map_err(|e| CheckpointError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_checkpoint(&text)
    }

    /// Verify a loaded checkpoint matches the run configuration.
    pub fn check_compatible(&self, depth: usize, qubits_per_n: usize) -> Result<(), CheckpointError> {
        if self.depth != depth {
            return Err(CheckpointError::Mismatch {
                field: "depth",
                expected: depth as u64,
                found: self.depth as u64,
            });
        }
        if self.qubits_per_n != qubits_per_n {
            return Err(CheckpointError::Mismatch {
                field: "qubits_per_n",
                expected: qubits_per_n as u64,
                found: self.qubits_per_n as u64,
            });
        }
        Ok(())
    }
}

/// A compiled sentence circuit. Gates reference parameter slots, so the
/// circuit compiles once and re-binds against the store on every evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<CircuitGate>,
    /// Qubits that must measure 0, ascending.
    pub postselect_zero: Vec<usize>,
    /// The sentence wire's two qubits, ascending; their joint outcome is the
    /// class bitstring (first qubit = leading bit).
    pub result_qubits: [usize; 2],
}

impl Circuit {
    /// Resolve every angle against the store.
    pub fn bind(&self, store: &ParameterStore) -> Result<Vec<Gate>, CompilerError> {
        self.gates.iter().map(|g| g.bind(store)).collect()
    }

    /// Run the full pipeline tail: simulate, post-select the ancilla qubits,
    /// return the renormalized four-outcome distribution of the result pair.
    pub fn evaluate(&self, store: &ParameterStore) -> Result<[f64; 4], CompilerError> {
        let mut state = QuantumState::zero(self.n_qubits);
        self.evaluate_into(store, &mut state)
    }

    /// As [`Circuit::evaluate`], reusing a caller-owned state buffer.
    pub fn evaluate_into(
        &self,
        store: &ParameterStore,
        state: &mut QuantumState,
    ) -> Result<[f64; 4], CompilerError> {
        state.reset_zero(self.n_qubits);
        for gate in &self.gates {
            state.apply(&gate.bind(store)?)?;
        }
        let result = state.postselect_zero(&self.postselect_zero)?;
        Ok(simulator::distribution(&result)?)
    }
}

/// Lower a diagram to a circuit: one ansatz per word box on its own qubits
/// (left to right), then one Bell effect per cup (sorted by left wire).
pub fn compile(
    diagram: &Diagram,
    store: &ParameterStore,
    qubits_per_n: usize,
) -> Result<Circuit, CompilerError> {
    let layout = QubitLayout::for_diagram(diagram, qubits_per_n)?;
    let depth = store.depth;
    let mut gates = Vec::new();

    let mut wire_cursor = 0usize;
    for word_box in &diagram.boxes {
        let wire_count = word_box.output_wires.len();
        let qubit_offset = layout.qubits_of_wire(wire_cursor)[0];
        let k = word_qubit_count(word_box.pos, qubits_per_n);
        let (offset, count) =
            store
                .slot_range(&word_box.token, word_box.pos)
                .ok_or_else(|| CompilerError::MissingParameters {
                    token: word_box.token.clone(),
                    pos: word_box.pos,
                })?;
        let expected = parameter_count(k, depth);
        if count != expected {
            return Err(CompilerError::ArityMismatch {
                k_qubits: k,
                depth,
                expected,
                found: count,
            });
        }
        let slots: Vec<AngleRef> = (offset..offset + count).map(AngleRef::Param).collect();
        for gate in word_ansatz(k, depth, &slots)? {
            gates.push(gate.shifted(qubit_offset));
        }
        wire_cursor += wire_count;
    }

    let mut postselect_zero = Vec::new();
    for &(left, right) in &diagram.cups.pairs {
        let (cup_gates, cup_postselect) =
            lower_cup(layout.qubits_of_wire(left), layout.qubits_of_wire(right))?;
        gates.extend(cup_gates);
        postselect_zero.extend(cup_postselect);
    }
    postselect_zero.sort_unstable();

    let result = layout.qubits_of_wire(diagram.sentence_wire);
    debug_assert_eq!(result.len(), 2);
    Ok(Circuit {
        n_qubits: layout.n_qubits(),
        gates,
        postselect_zero,
        result_qubits: [result[0], result[1]],
    })
}

#[derive(Debug, thiserror::Error)]
pub enum CompilerError {
    #[error("ansatz on {k_qubits} qubits at depth {depth} needs {expected} parameters, found {found}")]
    ArityMismatch {
        k_qubits: usize,
        depth: usize,
        expected: usize,
        found: usize,
    },
    #[error("cup joins wires of different widths ({left} vs {right} qubits)")]
    WidthMismatch { left: usize, right: usize },
    #[error("no parameters for `{token}` as {pos}")]
    MissingParameters { token: String, pos: PartOfSpeech },
    #[error("parameter slot {slot} out of range")]
    BadParameterSlot { slot: usize },
    #[error("bad qubit layout: {message}")]
    BadLayout { message: String },
    #[error(transparent)]
    Simulator(#[from] SimulatorError),
}

#[derive(Debug, thiserror::Error)]
pub enum CheckpointError {
    #[error("checkpoint {field} mismatch: config has {expected}, checkpoint has {found}")]
    Mismatch {
        field: &'static str,
        expected: u64,
        found: u64,
    },
    #[error("checkpoint line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot access `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
