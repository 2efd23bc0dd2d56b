//! Shared fixtures for integration tests.
// Each test target compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use std::path::PathBuf;

use qnlp::grammar::{Emotion, Lexicon, LexiconEntry, PartOfSpeech, Template};

pub fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

/// The shipped default lexicon (paper vocabulary, verb-carried emotions).
pub fn default_lexicon() -> Lexicon {
    Lexicon::load(&configs_dir().join("lexicon.tsv")).expect("default lexicon parses")
}

/// The four generation templates.
pub fn default_templates() -> Vec<Template> {
    ["n-tv-n", "adj-n-iv", "adj-n-tv-n", "n-tv-adj-n"]
        .iter()
        .map(|s| Template::parse(s).expect("template reduces"))
        .collect()
}

/// Vocabulary with the richer emotion assignment that also marks adjectives:
/// happiness = ecstatic, blissful, cheerful, amuse, laugh, dance;
/// fear = anxious, petrified, frightened, scare;
/// anger = irritated, furious, anger, attack, scream;
/// sadness = distressed, miserable, demoralise, cry;
/// neutral = young, blind, neighbour, child, boy.
pub fn full_emotion_lexicon() -> Lexicon {
    use Emotion::*;
    use PartOfSpeech::*;
    let entries = [
        ("neighbour", Noun, None),
        ("child", Noun, None),
        ("boy", Noun, None),
        ("anxious", Adjective, Some(Fear)),
        ("ecstatic", Adjective, Some(Happiness)),
        ("irritated", Adjective, Some(Anger)),
        ("distressed", Adjective, Some(Sadness)),
        ("blissful", Adjective, Some(Happiness)),
        ("furious", Adjective, Some(Anger)),
        ("petrified", Adjective, Some(Fear)),
        ("frightened", Adjective, Some(Fear)),
        ("miserable", Adjective, Some(Sadness)),
        ("young", Adjective, None),
        ("blind", Adjective, None),
        ("cheerful", Adjective, Some(Happiness)),
        ("attack", TransitiveVerb, Some(Anger)),
        ("scare", TransitiveVerb, Some(Fear)),
        ("anger", TransitiveVerb, Some(Anger)),
        ("amuse", TransitiveVerb, Some(Happiness)),
        ("demoralise", TransitiveVerb, Some(Sadness)),
        ("cry", IntransitiveVerb, Some(Sadness)),
        ("laugh", IntransitiveVerb, Some(Happiness)),
        ("dance", IntransitiveVerb, Some(Happiness)),
        ("scream", IntransitiveVerb, Some(Anger)),
    ];
    Lexicon::from_entries(entries.iter().map(|(token, pos, emotion)| LexiconEntry {
        token: token.to_string(),
        pos: *pos,
        emotion: *emotion,
    }))
    .expect("no duplicates")
}
