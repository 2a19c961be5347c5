use std::path::{Path, PathBuf};

use selattice::{TokenizerConfig, TopicConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Run configuration, read from TOML.
///
/// ```toml
/// seed = 7
/// trials = 20
/// output_dir = "out"
///
/// [tokenizer]
/// lowercase = true
/// split = "non-alphanumeric"
///
/// [topic]
/// keywords = ["sword", "hand", "arm", "helmet", "shield"]
/// topic_width = 10
/// max_width = 8
/// tau = 0.5
/// mu = 1.0
/// convention = "written"
///
/// [inputs]
/// text = "data/quixote_en.txt"
/// language = "en"
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Null-model trials for `compare --baseline`.
    pub trials: usize,
    pub output_dir: PathBuf,
    pub tokenizer: TokenizerConfig,
    pub topic: TopicConfig,
    pub inputs: Inputs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Inputs {
    pub text: Option<PathBuf>,
    pub language: String,
    /// Cut Project Gutenberg header and licence before tokenizing.
    pub strip_gutenberg: bool,
}

impl Default for Inputs {
    fn default() -> Self {
        Self {
            text: None,
            language: "und".into(),
            strip_gutenberg: true,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 20,
            output_dir: PathBuf::from("out"),
            tokenizer: TokenizerConfig::default(),
            topic: TopicConfig::default(),
            inputs: Inputs::default(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        cfg.tokenizer.validate()?;
        if cfg.trials == 0 {
            return Err(CliError::Usage("config: trials must be at least 1".into()));
        }
        Ok(cfg)
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => Self::parse(&crate::read_text(p)?),
        }
    }
}
