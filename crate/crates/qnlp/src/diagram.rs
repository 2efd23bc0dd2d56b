//! String diagrams: word boxes, typed wires, cups, and their tensor
//! semantics.
//!
//! [`contract_oracle`] carries the compositional meaning directly: each word
//! is a state tensor obtained by simulating its ansatz alone, and each cup
//! contracts a pair of wires with the unnormalized maximally entangled
//! effect Σ_x ⟨xx| per qubit pair. It never builds the sentence circuit,
//! which makes it an independent cross-check of the compile → simulate →
//! post-select route.

use num_complex::Complex64;

use crate::compiler::{
    parameter_count, word_ansatz, word_qubit_count, AngleRef, CompilerError, ParameterStore,
    QubitLayout,
};
use crate::grammar::{
    reduce, type_of, CupPattern, GrammarError, LabeledSentence, PartOfSpeech, SimpleType, Template,
};
use crate::simulator::{QuantumState, ZERO_NORM_THRESHOLD};

/// A word with its typed output wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordBox {
    pub token: String,
    pub pos: PartOfSpeech,
    pub output_wires: Vec<SimpleType>,
}

/// A sentence's string diagram. Wire indices run over the concatenation of
/// all boxes' output wires in reading order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub boxes: Vec<WordBox>,
    pub cups: CupPattern,
    pub sentence_wire: usize,
}

impl Diagram {
    /// Flat wire type sequence in reading order.
    pub fn wires(&self) -> Vec<SimpleType> {
        self.boxes
            .iter()
            .flat_map(|b| b.output_wires.iter().copied())
            .collect()
    }

    pub fn n_wires(&self) -> usize {
        self.boxes.iter().map(|b| b.output_wires.len()).sum()
    }
}

/// Build the diagram for a sentence: one box per token, cups from the
/// template's pregroup reduction.
pub fn build_diagram(
    sentence: &LabeledSentence,
    template: &Template,
) -> Result<Diagram, DiagramError> {
    if sentence.tokens.len() != template.pos_sequence.len()
        || sentence.template_id != template.id
    {
        return Err(DiagramError::TemplateMismatch {
            template: template.id.clone(),
            expected: template.pos_sequence.len(),
            found: sentence.tokens.len(),
        });
    }
    if sentence.tokens.is_empty() {
        return Err(DiagramError::TemplateMismatch {
            template: template.id.clone(),
            expected: template.pos_sequence.len(),
            found: 0,
        });
    }
    let cups = reduce(&template.types())?;
    let sentence_wire = cups.open_wires[0];
    let boxes = sentence
        .tokens
        .iter()
        .zip(&template.pos_sequence)
        .map(|(token, &pos)| WordBox {
            token: token.clone(),
            pos,
            output_wires: type_of(pos).simples().to_vec(),
        })
        .collect();
    Ok(Diagram { boxes, cups, sentence_wire })
}

/// Contract the diagram's tensor network and return the renormalized
/// four-outcome distribution of the open sentence wire.
///
/// Word states come from brute-force simulation of each ansatz subcircuit on
/// its own qubits. Cup pairs force equal bits on qubit `i` of the left wire
/// and qubit `w−1−i` of the right wire and sum over them. With at most six
/// cup pairs per supported sentence, direct enumeration of the summed bits
/// is exact and cheap.
pub fn contract_oracle(
    diagram: &Diagram,
    store: &ParameterStore,
    layout: &QubitLayout,
) -> Result<[f64; 4], DiagramError> {
    let word_states = word_states(diagram, store, layout)?;

    // Global qubit index -> (box index, local qubit) plus the box spans.
    let n_qubits = layout.n_qubits();
    let mut box_spans = Vec::with_capacity(diagram.boxes.len());
    let mut wire_cursor = 0usize;
    for word_box in &diagram.boxes {
        let wires = word_box.output_wires.len();
        let first = layout.qubits_of_wire(wire_cursor)[0];
        let last_wire = layout.qubits_of_wire(wire_cursor + wires - 1);
        box_spans.push((first, last_wire[last_wire.len() - 1] + 1));
        wire_cursor += wires;
    }

    // Qubit-level cup pairs under the nested pairing convention.
    let mut pairs = Vec::new();
    for &(left, right) in &diagram.cups.pairs {
        let a = layout.qubits_of_wire(left);
        let b = layout.qubits_of_wire(right);
        debug_assert_eq!(a.len(), b.len());
        for i in 0..a.len() {
            pairs.push((a[i], b[a.len() - 1 - i]));
        }
    }
    let open = layout.qubits_of_wire(diagram.sentence_wire);
    debug_assert_eq!(open.len(), 2);
    debug_assert_eq!(pairs.len() * 2 + open.len(), n_qubits);

    // S[y] = Σ over pair assignments of the product of word amplitudes.
    let mut sentence = [Complex64::new(0.0, 0.0); 4];
    for (y, amplitude) in sentence.iter_mut().enumerate() {
        let (b0, b1) = (y >> 1, y & 1);
        for assignment in 0..(1usize << pairs.len()) {
            let mut bits = vec![false; n_qubits];
            bits[open[0]] = b0 == 1;
            bits[open[1]] = b1 == 1;
            for (p, &(qa, qb)) in pairs.iter().enumerate() {
                let value = assignment & (1 << p) != 0;
                bits[qa] = value;
                bits[qb] = value;
            }
            let mut term = Complex64::new(1.0, 0.0);
            for (state, &(start, end)) in word_states.iter().zip(&box_spans) {
                let mut local = 0usize;
                for (pos, q) in (start..end).enumerate() {
                    local |= usize::from(bits[q]) << pos;
                }
                term *= state.amplitudes()[local];
            }
            *amplitude += term;
        }
    }

    let total: f64 = sentence.iter().map(|a| a.norm_sqr()).sum();
    if total < ZERO_NORM_THRESHOLD {
        return Err(DiagramError::ZeroNorm { norm: total });
    }
    // Outcome index = 2·bit(first s qubit) + bit(second), as in the
    // simulator's distribution.
    Ok([
        sentence[0].norm_sqr() / total,
        sentence[1].norm_sqr() / total,
        sentence[2].norm_sqr() / total,
        sentence[3].norm_sqr() / total,
    ])
}

/// Simulate each word's ansatz alone and return its state tensor.
fn word_states(
    diagram: &Diagram,
    store: &ParameterStore,
    layout: &QubitLayout,
) -> Result<Vec<QuantumState>, DiagramError> {
    diagram
        .boxes
        .iter()
        .map(|word_box| {
            let k = word_qubit_count(word_box.pos, layout.qubits_per_n);
            let (offset, count) = store
                .slot_range(&word_box.token, word_box.pos)
                .ok_or_else(|| DiagramError::MissingParameters {
                    token: word_box.token.clone(),
                    pos: word_box.pos,
                })?;
            debug_assert_eq!(count, parameter_count(k, store.depth));
            let slots: Vec<AngleRef> = (offset..offset + count).map(AngleRef::Param).collect();
            let gates = word_ansatz(k, store.depth, &slots)?;
            let mut state = QuantumState::zero(k);
            for gate in &gates {
                state.apply(&gate.bind(store)?)?;
            }
            Ok(state)
        })
        .collect()
}

/// Plain-text rendering for the `inspect` command: tokens, typed wires and
/// cup arcs.
pub fn render_ascii(diagram: &Diagram) -> String {
    let cell = diagram
        .boxes
        .iter()
        .map(|b| b.token.chars().count() / b.output_wires.len() + 2)
        .max()
        .unwrap_or(6)
        .max(6);
    let wires = diagram.wires();
    let n = wires.len();
    let center = |w: usize| w * cell + cell / 2;

    let mut out = String::new();

    // Token row, each box centered over its wires.
    let mut token_row = vec![' '; n * cell];
    let mut wire_cursor = 0usize;
    for word_box in &diagram.boxes {
        let width = word_box.output_wires.len();
        let span_start = wire_cursor * cell;
        let span = width * cell;
        let label: Vec<char> = word_box.token.chars().take(span).collect();
        let lead = span_start + (span - label.len()) / 2;
        token_row[lead..lead + label.len()].copy_from_slice(&label);
        wire_cursor += width;
    }
    out.push_str(token_row.iter().collect::<String>().trim_end());
    out.push('\n');

    // Type row.
    let mut type_row = vec![' '; n * cell];
    for (w, wire) in wires.iter().enumerate() {
        let label: Vec<char> = wire.to_string().chars().collect();
        let lead = center(w).saturating_sub(label.len() / 2);
        type_row[lead..lead + label.len()].copy_from_slice(&label);
    }
    out.push_str(type_row.iter().collect::<String>().trim_end());
    out.push('\n');

    // Cup arcs, innermost (shortest span) first; the open wire runs straight
    // down. Each wire keeps its vertical bar until its cup's row.
    let mut cups: Vec<(usize, usize)> = diagram.cups.pairs.clone();
    cups.sort_by_key(|&(a, b)| b - a);
    let mut closed = vec![usize::MAX; n];
    for (row, &(a, b)) in cups.iter().enumerate() {
        closed[a] = row;
        closed[b] = row;
    }
    for row in 0..=cups.len() {
        let mut line = vec![' '; n * cell];
        for w in 0..n {
            let open_wire = w == diagram.sentence_wire;
            if open_wire || closed[w] >= row {
                line[center(w)] = '|';
            }
        }
        if row < cups.len() {
            let (a, b) = cups[row];
            line[center(a)..=center(b)].fill('_');
            line[center(a)] = '\\';
            line[center(b)] = '/';
        }
        out.push_str(line.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    let mut final_row = vec![' '; n * cell];
    final_row[center(diagram.sentence_wire)] = 's';
    out.push_str(final_row.iter().collect::<String>().trim_end());
    out.push('\n');
    out
}

#[derive(Debug, thiserror::Error)]
pub enum DiagramError {
    #[error("sentence does not fit template `{template}` ({expected} slots, {found} tokens)")]
    TemplateMismatch {
        template: String,
        expected: usize,
        found: usize,
    },
    #[error("no parameters for `{token}` as {pos}")]
    MissingParameters { token: String, pos: PartOfSpeech },
    #[error("cup contraction annihilated the sentence state (norm {norm:.3e})")]
    ZeroNorm { norm: f64 },
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Compiler(#[from] CompilerError),
}

impl From<crate::simulator::SimulatorError> for DiagramError {
    fn from(e: crate::simulator::SimulatorError) -> Self {
        DiagramError::Compiler(CompilerError::Simulator(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::Emotion;

    fn sentence(tokens: &[&str], template: &Template, label: Emotion) -> LabeledSentence {
        LabeledSentence {
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            template_id: template.id.clone(),
            label,
        }
    }

    #[test]
    fn four_word_sentence_diagram() {
        let template = Template::parse("adj-n-tv-n").unwrap();
        let s = sentence(
            &["furious", "neighbour", "attack", "child"],
            &template,
            Emotion::Anger,
        );
        let diagram = build_diagram(&s, &template).unwrap();
        assert_eq!(diagram.boxes.len(), 4);
        assert_eq!(diagram.cups.pairs.len(), 3);
        assert_eq!(diagram.cups.open_wires.len(), 1);
        assert!(diagram.wires()[diagram.sentence_wire].is_plain_s());
    }

    #[test]
    fn two_word_sentence_diagram() {
        let template = Template::parse("n-iv").unwrap();
        let s = sentence(&["child", "cry"], &template, Emotion::Sadness);
        let diagram = build_diagram(&s, &template).unwrap();
        assert_eq!(diagram.boxes.len(), 2);
        assert_eq!(diagram.cups.pairs.len(), 1);
        assert_eq!(diagram.sentence_wire, 2);
    }

    #[test]
    fn length_mismatch_rejected() {
        let template = Template::parse("n-iv").unwrap();
        let s = sentence(&["child"], &template, Emotion::Sadness);
        assert!(matches!(
            build_diagram(&s, &template),
            Err(DiagramError::TemplateMismatch { .. })
        ));
    }

    #[test]
    fn ascii_rendering_mentions_tokens_and_types() {
        let template = Template::parse("n-tv-n").unwrap();
        let s = sentence(&["boy", "amuse", "child"], &template, Emotion::Happiness);
        let rendered = render_ascii(&build_diagram(&s, &template).unwrap());
        assert!(rendered.contains("amuse"));
        assert!(rendered.contains("n^r"));
        assert!(rendered.contains('s'));
    }
}
