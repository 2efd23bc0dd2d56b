//! Lexicon, pregroup types, sentence templates and dataset generation.
//!
//! Words carry pregroup types built from the atoms `n` (noun) and `s`
//! (sentence) and their one-step adjoints. A sentence is grammatical when the
//! concatenation of its word types reduces to a single `s` by cancelling
//! adjacent adjoint pairs; the cancellations recorded along the way become
//! the cups of the sentence's string diagram.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::rng::{streams, SplitMix64};

/// Atomic pregroup types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    N,
    S,
}

/// An atom together with an adjoint marker: 0 plain, -1 left (`x^l`),
/// +1 right (`x^r`). Higher adjoints never arise in the supported templates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub base: Base,
    pub adjoint_order: i8,
}

impl SimpleType {
    pub fn new(base: Base, adjoint_order: i8) -> Self {
        assert!(
            (-1..=1).contains(&adjoint_order),
            "adjoint order {adjoint_order} out of range"
        );
        Self { base, adjoint_order }
    }

    pub const fn n() -> Self {
        Self { base: Base::N, adjoint_order: 0 }
    }

    pub const fn n_left() -> Self {
        Self { base: Base::N, adjoint_order: -1 }
    }

    pub const fn n_right() -> Self {
        Self { base: Base::N, adjoint_order: 1 }
    }

    pub const fn s() -> Self {
        Self { base: Base::S, adjoint_order: 0 }
    }

    pub fn is_plain_s(&self) -> bool {
        self.base == Base::S && self.adjoint_order == 0
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = match self.base {
            Base::N => "n",
            Base::S => "s",
        };
        match self.adjoint_order {
            -1 => write!(f, "{atom}^l"),
            1 => write!(f, "{atom}^r"),
            _ => write!(f, "{atom}"),
        }
    }
}

/// A word's type: a non-empty sequence of simple types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PregroupType(pub Vec<SimpleType>);

impl PregroupType {
    pub fn simples(&self) -> &[SimpleType] {
        &self.0
    }
}

impl fmt::Display for PregroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("·"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartOfSpeech {
    Noun,
    Adjective,
    TransitiveVerb,
    IntransitiveVerb,
}

impl PartOfSpeech {
    pub const ALL: [PartOfSpeech; 4] = [
        PartOfSpeech::Noun,
        PartOfSpeech::Adjective,
        PartOfSpeech::TransitiveVerb,
        PartOfSpeech::IntransitiveVerb,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PartOfSpeech::Noun => "noun",
            PartOfSpeech::Adjective => "adjective",
            PartOfSpeech::TransitiveVerb => "transitive_verb",
            PartOfSpeech::IntransitiveVerb => "intransitive_verb",
        }
    }

    /// Short form used in template specifications (`n-tv-n`).
    pub fn tag(&self) -> &'static str {
        match self {
            PartOfSpeech::Noun => "n",
            PartOfSpeech::Adjective => "adj",
            PartOfSpeech::TransitiveVerb => "tv",
            PartOfSpeech::IntransitiveVerb => "iv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "noun" | "n" => Some(PartOfSpeech::Noun),
            "adjective" | "adj" => Some(PartOfSpeech::Adjective),
            "transitive_verb" | "tv" => Some(PartOfSpeech::TransitiveVerb),
            "intransitive_verb" | "iv" => Some(PartOfSpeech::IntransitiveVerb),
            _ => None,
        }
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fixed type assignment per part of speech.
pub fn type_of(pos: PartOfSpeech) -> PregroupType {
    let simples = match pos {
        PartOfSpeech::Noun => vec![SimpleType::n()],
        PartOfSpeech::Adjective => vec![SimpleType::n(), SimpleType::n_left()],
        PartOfSpeech::TransitiveVerb => {
            vec![SimpleType::n_right(), SimpleType::s(), SimpleType::n_left()]
        }
        PartOfSpeech::IntransitiveVerb => vec![SimpleType::n_right(), SimpleType::s()],
    };
    PregroupType(simples)
}

/// The four emotion classes. The class index doubles as the two-bit
/// measurement outcome of the result qubits: happiness `00`, fear `01`,
/// anger `10`, sadness `11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Emotion {
    Happiness,
    Fear,
    Anger,
    Sadness,
}

impl Emotion {
    pub const ALL: [Emotion; 4] = [
        Emotion::Happiness,
        Emotion::Fear,
        Emotion::Anger,
        Emotion::Sadness,
    ];

    pub fn class_index(&self) -> usize {
        match self {
            Emotion::Happiness => 0,
            Emotion::Fear => 1,
            Emotion::Anger => 2,
            Emotion::Sadness => 3,
        }
    }

    pub fn from_class_index(index: usize) -> Option<Self> {
        Emotion::ALL.get(index).copied()
    }

    /// Two-bit outcome string, first result qubit first.
    pub fn bitstring(&self) -> &'static str {
        match self {
            Emotion::Happiness => "00",
            Emotion::Fear => "01",
            Emotion::Anger => "10",
            Emotion::Sadness => "11",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Emotion::Happiness => "happiness",
            Emotion::Fear => "fear",
            Emotion::Anger => "anger",
            Emotion::Sadness => "sadness",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "happiness" => Some(Emotion::Happiness),
            "fear" => Some(Emotion::Fear),
            "anger" => Some(Emotion::Anger),
            "sadness" => Some(Emotion::Sadness),
            _ => None,
        }
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One vocabulary record. `emotion: None` marks a neutral word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub token: String,
    pub pos: PartOfSpeech,
    pub emotion: Option<Emotion>,
}

/// The vocabulary, keyed by `(token, part of speech)`.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: BTreeMap<(String, PartOfSpeech), Option<Emotion>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = LexiconEntry>>(
        entries: I,
    ) -> Result<Self, GrammarError> {
        let mut lex = Self::new();
        for e in entries {
            lex.insert(e)?;
        }
        Ok(lex)
    }

    pub fn insert(&mut self, entry: LexiconEntry) -> Result<(), GrammarError> {
        let key = (entry.token.clone(), entry.pos);
        if self.entries.contains_key(&key) {
            return Err(GrammarError::DuplicateEntry {
                token: entry.token,
                pos: entry.pos,
            });
        }
        self.entries.insert(key, entry.emotion);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, token: &str, pos: PartOfSpeech) -> Option<Option<Emotion>> {
        self.entries.get(&(token.to_string(), pos)).copied()
    }

    pub fn contains(&self, token: &str, pos: PartOfSpeech) -> bool {
        self.lookup(token, pos).is_some()
    }

    /// Entries in deterministic `(token, pos)` order.
    pub fn entries(&self) -> impl Iterator<Item = LexiconEntry> + '_ {
        self.entries.iter().map(|((token, pos), emotion)| LexiconEntry {
            token: token.clone(),
            pos: *pos,
            emotion: *emotion,
        })
    }

    /// Tokens of one part of speech, alphabetically.
    pub fn tokens_of(&self, pos: PartOfSpeech) -> Vec<String> {
        self.entries
            .iter()
            .filter(|((_, p), _)| *p == pos)
            .map(|((t, _), _)| t.clone())
            .collect()
    }

    /// All tokens the lexicon knows, for suggestion lists.
    pub fn all_tokens(&self) -> Vec<String> {
        let mut tokens: Vec<String> = self.entries.keys().map(|(t, _)| t.clone()).collect();
        tokens.dedup();
        tokens
    }

    /// Reassign emotions from an override map (token -> emotion or neutral).
    /// Every token in the override must exist in the lexicon under some part
    /// of speech; the override applies to all of its parts of speech.
    pub fn apply_emotion_overrides(
        &mut self,
        overrides: &[(String, Option<Emotion>)],
    ) -> Result<(), GrammarError> {
        for (token, emotion) in overrides {
            let keys: Vec<(String, PartOfSpeech)> = self
                .entries
                .keys()
                .filter(|(t, _)| t == token)
                .cloned()
                .collect();
            if keys.is_empty() {
                return Err(GrammarError::UnknownToken {
                    token: token.clone(),
                    pos: None,
                    suggestions: suggest(token, &self.all_tokens()),
                });
            }
            for key in keys {
                self.entries.insert(key, *emotion);
            }
        }
        Ok(())
    }

    /// Parse the tab-separated lexicon format: `token<TAB>pos<TAB>emotion`,
    /// one record per line, `#` comments and blank lines skipped.
    pub fn parse(text: &str) -> Result<Self, GrammarError> {
        let mut lex = Self::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(GrammarError::Parse {
                    line: idx + 1,
                    message: format!("expected 3 tab-separated fields, found {}", fields.len()),
                });
            }
            let pos = PartOfSpeech::parse(fields[1]).ok_or_else(|| GrammarError::Parse {
                line: idx + 1,
                message: format!("unknown part of speech `{}`", fields[1]),
            })?;
            let emotion = match fields[2] {
                "neutral" => None,
                other => Some(Emotion::parse(other).ok_or_else(|| GrammarError::Parse {
                    line: idx + 1,
                    message: format!("unknown emotion `{other}`"),
                })?),
            };
            lex.insert(LexiconEntry { token: fields[0].to_string(), pos, emotion })
                .map_err(|e| GrammarError::Parse { line: idx + 1, message: e.to_string() })?;
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self, GrammarError> {
        let text = std::fs::read_to_string(path).map_err(|e| GrammarError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::parse(&text)
    }

    /// Serialize in the same tab-separated format, sorted by `(token, pos)`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for e in self.entries() {
            let emotion = e.emotion.map_or("neutral", |em| em.name());
            out.push_str(&format!("{}\t{}\t{}\n", e.token, e.pos.name(), emotion));
        }
        out
    }
}

/// Parse an emotion override file: `token<TAB>emotion|neutral` per line.
pub fn parse_emotion_overrides(text: &str) -> Result<Vec<(String, Option<Emotion>)>, GrammarError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(GrammarError::Parse {
                line: idx + 1,
                message: format!("expected 2 tab-separated fields, found {}", fields.len()),
            });
        }
        let emotion = match fields[1] {
            "neutral" => None,
            other => Some(Emotion::parse(other).ok_or_else(|| GrammarError::Parse {
                line: idx + 1,
                message: format!("unknown emotion `{other}`"),
            })?),
        };
        out.push((fields[0].to_string(), emotion));
    }
    Ok(out)
}

/// A sentence shape: an ordered sequence of parts of speech whose
/// concatenated types reduce to `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub id: String,
    pub pos_sequence: Vec<PartOfSpeech>,
}

impl Template {
    /// Build a template from a spec like `adj-n-tv-n`, validating that it
    /// reduces to a lone sentence wire and is 2 to 4 words long.
    pub fn parse(spec: &str) -> Result<Self, GrammarError> {
        let pos_sequence: Vec<PartOfSpeech> = spec
            .split('-')
            .map(|tag| {
                PartOfSpeech::parse(tag).ok_or_else(|| GrammarError::BadTemplate {
                    spec: spec.to_string(),
                    message: format!("unknown part of speech tag `{tag}`"),
                })
            })
            .collect::<Result<_, _>>()?;
        Self::new(spec.to_uppercase(), pos_sequence)
    }

    pub fn new(id: String, pos_sequence: Vec<PartOfSpeech>) -> Result<Self, GrammarError> {
        if !(2..=4).contains(&pos_sequence.len()) {
            return Err(GrammarError::BadTemplate {
                spec: id,
                message: format!("length {} outside 2..=4 words", pos_sequence.len()),
            });
        }
        let template = Self { id, pos_sequence };
        // Must reduce to [s]; surfaces NoReduction for ungrammatical shapes.
        reduce(&template.types())?;
        Ok(template)
    }

    pub fn types(&self) -> Vec<PregroupType> {
        self.pos_sequence.iter().map(|&pos| type_of(pos)).collect()
    }

    pub fn len(&self) -> usize {
        self.pos_sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos_sequence.is_empty()
    }
}

/// Cups and open wires of a reduced type sequence. Wire indices run over the
/// concatenated simple types of the whole sentence in reading order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupPattern {
    /// Cancelled pairs `(left wire, right wire)`, sorted by left index.
    pub pairs: Vec<(usize, usize)>,
    /// Wires left open after reduction, in order.
    pub open_wires: Vec<usize>,
}

/// Reduce a concatenation of word types to the sentence type.
///
/// Scans the surviving sequence left to right and cancels the first adjacent
/// pair `x · x^r` or `x^l · x`, then rescans. Repeats until nothing cancels.
/// The scan order makes the contraction innermost-first and the result
/// deterministic; cancelling only adjacent survivors keeps the cup pattern
/// planar.
pub fn reduce(types: &[PregroupType]) -> Result<CupPattern, GrammarError> {
    if types.is_empty() {
        return Err(GrammarError::NoReduction {
            sequence: String::from("(empty)"),
        });
    }
    let flat: Vec<SimpleType> = types.iter().flat_map(|t| t.0.iter().copied()).collect();

    let mut alive: Vec<usize> = (0..flat.len()).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    loop {
        let mut cancelled = None;
        for w in 0..alive.len().saturating_sub(1) {
            let (a, b) = (flat[alive[w]], flat[alive[w + 1]]);
            // x with order k cancels against x with order k+1 on its right:
            // covers x·x^r (0,+1) and x^l·x (-1,0).
            if a.base == b.base && i16::from(a.adjoint_order) + 1 == i16::from(b.adjoint_order) {
                cancelled = Some(w);
                break;
            }
        }
        match cancelled {
            Some(w) => {
                pairs.push((alive[w], alive[w + 1]));
                alive.drain(w..=w + 1);
            }
            None => break,
        }
    }

    let open_ok = alive.len() == 1 && flat[alive[0]].is_plain_s();
    if !open_ok {
        let seq: Vec<String> = flat.iter().map(|t| t.to_string()).collect();
        return Err(GrammarError::NoReduction {
            sequence: seq.join(" "),
        });
    }
    pairs.sort_unstable();
    Ok(CupPattern {
        pairs,
        open_wires: alive,
    })
}

/// A generated sentence with its template and emotion label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSentence {
    pub tokens: Vec<String>,
    pub template_id: String,
    pub label: Emotion,
}

impl LabeledSentence {
    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

/// Label a candidate sentence: the single distinct emotion of its
/// non-neutral words, or `None` when the words are all neutral or mix two
/// emotions (such candidates are excluded from the dataset).
pub fn label(
    tokens: &[String],
    template: &Template,
    lexicon: &Lexicon,
) -> Result<Option<Emotion>, GrammarError> {
    assert_eq!(
        tokens.len(),
        template.pos_sequence.len(),
        "token/template length mismatch"
    );
    let mut found: Option<Emotion> = None;
    for (token, &pos) in tokens.iter().zip(&template.pos_sequence) {
        let emotion = lexicon
            .lookup(token, pos)
            .ok_or_else(|| GrammarError::UnknownToken {
                token: token.clone(),
                pos: Some(pos),
                suggestions: suggest(token, &lexicon.all_tokens()),
            })?;
        if let Some(e) = emotion {
            match found {
                None => found = Some(e),
                Some(prev) if prev != e => return Ok(None),
                Some(_) => {}
            }
        }
    }
    Ok(found)
}

/// Exhaustively fill every template slot with every matching lexicon token
/// (alphabetical per slot, leftmost slot slowest) and keep the candidates
/// that [`label`] accepts. Deterministic for a fixed lexicon and template
/// list.
pub fn generate_dataset(
    lexicon: &Lexicon,
    templates: &[Template],
) -> Result<Vec<LabeledSentence>, GrammarError> {
    let mut dataset = Vec::new();
    for template in templates {
        let slots: Vec<Vec<String>> = template
            .pos_sequence
            .iter()
            .map(|&pos| lexicon.tokens_of(pos))
            .collect();
        if slots.iter().any(|s| s.is_empty()) {
            continue;
        }
        let mut index = vec![0usize; slots.len()];
        loop {
            let tokens: Vec<String> = index
                .iter()
                .zip(&slots)
                .map(|(&i, slot)| slot[i].clone())
                .collect();
            if let Some(emotion) = label(&tokens, template, lexicon)? {
                dataset.push(LabeledSentence {
                    tokens,
                    template_id: template.id.clone(),
                    label: emotion,
                });
            }
            if !advance_odometer(&mut index, &slots) {
                break;
            }
        }
    }
    Ok(dataset)
}

/// Increment a mixed-radix counter, rightmost digit fastest. Returns false
/// once every combination has been visited.
fn advance_odometer(index: &mut [usize], slots: &[Vec<String>]) -> bool {
    for slot in (0..index.len()).rev() {
        index[slot] += 1;
        if index[slot] < slots[slot].len() {
            return true;
        }
        index[slot] = 0;
    }
    false
}

/// Count the raw candidates (before label filtering) per template.
pub fn candidate_count(lexicon: &Lexicon, templates: &[Template]) -> usize {
    templates
        .iter()
        .map(|t| {
            t.pos_sequence
                .iter()
                .map(|&pos| lexicon.tokens_of(pos).len())
                .product::<usize>()
        })
        .sum()
}

/// Deterministic seeded shuffle-and-cut: Fisher-Yates driven by SplitMix64,
/// then the last `test_size` records form the test set.
pub fn split(
    dataset: &[LabeledSentence],
    seed: u64,
    test_size: usize,
) -> Result<(Vec<LabeledSentence>, Vec<LabeledSentence>), GrammarError> {
    if dataset.len() <= test_size {
        return Err(GrammarError::DatasetTooSmall {
            size: dataset.len(),
            test_size,
        });
    }
    let mut shuffled: Vec<LabeledSentence> = dataset.to_vec();
    let mut rng = SplitMix64::derive(seed, streams::SPLIT);
    for i in (1..shuffled.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        shuffled.swap(i, j);
    }
    let cut = shuffled.len() - test_size;
    let test = shuffled.split_off(cut);
    Ok((shuffled, test))
}

/// Per-class sentence counts, indexed by class.
pub fn class_histogram(dataset: &[LabeledSentence]) -> [usize; 4] {
    let mut counts = [0usize; 4];
    for s in dataset {
        counts[s.label.class_index()] += 1;
    }
    counts
}

/// Serialize a dataset in the tab-separated exchange format:
/// `tokens (space-joined)<TAB>template_id<TAB>label`, LF line endings.
pub fn dataset_to_tsv(dataset: &[LabeledSentence]) -> String {
    let mut out = String::new();
    for s in dataset {
        out.push_str(&format!("{}\t{}\t{}\n", s.text(), s.template_id, s.label));
    }
    out
}

/// Parse the dataset exchange format.
pub fn dataset_from_tsv(text: &str) -> Result<Vec<LabeledSentence>, GrammarError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(GrammarError::Parse {
                line: idx + 1,
                message: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
        }
        let label = Emotion::parse(fields[2]).ok_or_else(|| GrammarError::Parse {
            line: idx + 1,
            message: format!("unknown emotion `{}`", fields[2]),
        })?;
        out.push(LabeledSentence {
            tokens: fields[0].split(' ').map(str::to_string).collect(),
            template_id: fields[1].to_string(),
            label,
        });
    }
    Ok(out)
}

/// Closest lexicon tokens to an unknown one, for error messages. Tokens are
/// stored in citation form, so surface inflections (`attacks`, `cries`) are
/// stripped before distance matching.
pub fn suggest(token: &str, vocabulary: &[String]) -> Vec<String> {
    let mut variants = vec![token.to_string()];
    if let Some(stem) = token.strip_suffix("ies") {
        variants.push(format!("{stem}y"));
    }
    for suffix in ["ing", "ed", "es", "s"] {
        if let Some(stem) = token.strip_suffix(suffix) {
            variants.push(stem.to_string());
        }
    }
    let mut scored: Vec<(usize, &String)> = vocabulary
        .iter()
        .map(|v| {
            let d = variants.iter().map(|q| edit_distance(q, v)).min().unwrap();
            (d, v)
        })
        .filter(|(d, _)| *d <= 2)
        .collect();
    scored.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    scored.into_iter().take(3).map(|(_, v)| v.clone()).collect()
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

#[derive(Debug, thiserror::Error)]
pub enum GrammarError {
    #[error("type sequence `{sequence}` does not reduce to s")]
    NoReduction { sequence: String },
    #[error("unknown token `{token}`{}{}",
        pos.map(|p| format!(" as {p}")).unwrap_or_default(),
        if suggestions.is_empty() { String::new() } else { format!(" (did you mean: {}?)", suggestions.join(", ")) })]
    UnknownToken {
        token: String,
        pos: Option<PartOfSpeech>,
        suggestions: Vec<String>,
    },
    #[error("duplicate lexicon entry `{token}` as {pos}")]
    DuplicateEntry { token: String, pos: PartOfSpeech },
    #[error("dataset of {size} sentences cannot supply a test set of {test_size}")]
    DatasetTooSmall { size: usize, test_size: usize },
    #[error("invalid template `{spec}`: {message}")]
    BadTemplate { spec: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
