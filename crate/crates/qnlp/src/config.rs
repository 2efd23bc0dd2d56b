//! Run configuration: a flat `key = value` text file.
//!
//! Unknown keys, malformed values and missing files are reported with the
//! offending file and line. Paths are resolved relative to the config file's
//! directory.

use std::path::{Path, PathBuf};

use crate::grammar::{GrammarError, Lexicon, Template};
use crate::trainer::{Algorithm, OptimizerConfig};

/// Exact outcome probabilities (the default) or multinomial shot noise at
/// evaluation time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Exact,
    Shots(u64),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub lexicon_path: PathBuf,
    /// Optional `token<TAB>emotion` override applied on top of the lexicon.
    pub emotion_lexicon_path: Option<PathBuf>,
    pub templates: Vec<Template>,
    pub seed: u64,
    pub qubits_per_n: usize,
    pub depth: usize,
    pub test_size: usize,
    pub optimizer: OptimizerConfig,
    pub mode: EvalMode,
}

impl RunConfig {
    /// Parse and validate a config file; referenced paths must exist.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self, ConfigError> {
        let dir = origin.parent().unwrap_or_else(|| Path::new("."));
        let file = origin.display().to_string();
        let err = |line: usize, message: String| ConfigError::Parse {
            file: file.clone(),
            line,
            message,
        };

        let mut lexicon_path = None;
        let mut emotion_lexicon_path = None;
        let mut templates = None;
        let mut seed = 0u64;
        let mut qubits_per_n = 2usize;
        let mut depth = 2usize;
        let mut test_size = 180usize;
        let mut optimizer = OptimizerConfig::default();
        let mut mode = EvalMode::Exact;
        let mut shots: Option<u64> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(line_no, format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim();
            let value = value.trim();
            let parse_u64 = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| err(line_no, format!("`{key}` must be a non-negative integer, got `{v}`")))
            };
            let parse_f64 = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| err(line_no, format!("`{key}` must be a number, got `{v}`")))
            };
            match key {
                "lexicon" => lexicon_path = Some(dir.join(value)),
                "emotion_lexicon" => emotion_lexicon_path = Some(dir.join(value)),
                "templates" => {
                    let parsed: Result<Vec<Template>, GrammarError> =
                        value.split(',').map(|t| Template::parse(t.trim())).collect();
                    templates = Some(parsed.map_err(|e| err(line_no, e.to_string()))?);
                }
                "seed" => seed = parse_u64(value)?,
                "qubits_per_n" => {
                    qubits_per_n = parse_u64(value)? as usize;
                    if qubits_per_n == 0 {
                        return Err(err(line_no, "`qubits_per_n` must be at least 1".into()));
                    }
                }
                "depth" => depth = parse_u64(value)? as usize,
                "test_size" => test_size = parse_u64(value)? as usize,
                "optimizer" => {
                    optimizer.algorithm = Algorithm::parse(value).ok_or_else(|| {
                        err(line_no, format!("unknown optimizer `{value}` (spsa or nelder_mead)"))
                    })?;
                }
                "max_iterations" => optimizer.max_iterations = parse_u64(value)?,
                "spsa_a" => optimizer.a = parse_f64(value)?,
                "spsa_c" => optimizer.c = parse_f64(value)?,
                "spsa_big_a" => optimizer.big_a = parse_f64(value)?,
                "spsa_alpha" => optimizer.alpha = parse_f64(value)?,
                "spsa_gamma" => optimizer.gamma = parse_f64(value)?,
                "tolerance" => optimizer.tolerance = parse_f64(value)?,
                "mode" => match value {
                    "exact" => mode = EvalMode::Exact,
                    "shots" => mode = EvalMode::Shots(0),
                    other => {
                        return Err(err(line_no, format!("unknown mode `{other}` (exact or shots)")))
                    }
                },
                "shots" => shots = Some(parse_u64(value)?),
                other => return Err(err(line_no, format!("unknown key `{other}`"))),
            }
        }

        let lexicon_path = lexicon_path
            .ok_or_else(|| err(0, "missing required key `lexicon`".into()))?;
        let templates = templates
            .ok_or_else(|| err(0, "missing required key `templates`".into()))?;
        if let EvalMode::Shots(_) = mode {
            let n = shots.ok_or_else(|| err(0, "`mode = shots` requires a `shots` count".into()))?;
            mode = EvalMode::Shots(n);
        }
        optimizer.seed = seed;

        let config = Self {
            lexicon_path,
            emotion_lexicon_path,
            templates,
            seed,
            qubits_per_n,
            depth,
            test_size,
            optimizer,
            mode,
        };
        config.check_paths(&file)?;
        Ok(config)
    }

    fn check_paths(&self, file: &str) -> Result<(), ConfigError> {
        let mut required = vec![self.lexicon_path.clone()];
        if let Some(p) = &self.emotion_lexicon_path {
            required.push(p.clone());
        }
        for path in required {
            if !path.exists() {
                return Err(ConfigError::MissingPath {
                    file: file.to_string(),
                    path: path.display().to_string(),
                });
            }
        }
        Ok(())
    }

    /// Load the lexicon and apply the emotion override, when configured.
    pub fn load_lexicon(&self) -> Result<Lexicon, ConfigError> {
        let mut lexicon = Lexicon::load(&self.lexicon_path).map_err(ConfigError::from)?;
        if let Some(path) = &self.emotion_lexicon_path {
            let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            let overrides = crate::grammar::parse_emotion_overrides(&text)?;
            lexicon.apply_emotion_overrides(&overrides)?;
        }
        Ok(lexicon)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("{file}: referenced path `{path}` does not exist")]
    MissingPath { file: String, path: String },
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}
