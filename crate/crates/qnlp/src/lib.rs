//! Compositional quantum NLP toolkit.
//!
//! The pipeline runs in five stages: a pregroup lexicon generates a labeled
//! four-emotion sentence corpus ([`grammar`]), each sentence becomes a string
//! diagram of word boxes and cups ([`diagram`]), the diagram is lowered to a
//! parameterized quantum circuit with zero post-selection ([`compiler`]), the
//! circuit is evaluated on an exact state-vector simulator ([`simulator`]),
//! and the circuit parameters are fit with a gradient-free optimizer
//! ([`trainer`]). A classical TF-IDF + naive Bayes reference lives in
//! [`baseline`], shared evaluation metrics in [`metrics`].

pub mod baseline;
pub mod compiler;
pub mod config;
pub mod diagram;
pub mod grammar;
pub mod metrics;
pub mod rng;
pub mod simulator;
pub mod trainer;

pub use compiler::{Circuit, ParameterStore, QubitLayout};
pub use diagram::Diagram;
pub use grammar::{Emotion, LabeledSentence, Lexicon, PartOfSpeech, Template};
pub use simulator::QuantumState;
