use std::path::PathBuf;
use thiserror::Error;

/// Errors from graph construction, competence math, sampling, the scheduler
/// state machine, and fixture/scenario parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("invalid k: vocabulary profile size must be at least 1")]
    InvalidK,
    #[error("profile size mismatch: k={left} vs k={right}")]
    ProfileSizeMismatch { left: usize, right: usize },
    #[error("language on both sides: {0}")]
    LanguageOnBothSides(String),
    #[error("missing profile: {0}")]
    MissingProfile(String),
    #[error("unknown language: {0}")]
    UnknownLanguage(String),
    #[error("invalid loss: {0}")]
    InvalidLoss(f64),
    #[error("no benchmark: {0}")]
    MissingBenchmark(String),
    #[error("missing competence: {0}")]
    MissingCompetence(String),
    #[error("isolated LRL: {0} has no positive-weight edge from any HRL")]
    IsolatedLrl(String),
    #[error("empty support")]
    EmptySupport,
    #[error("missing size: {0}")]
    MissingSize(String),
    #[error("invalid temperature: {0}")]
    InvalidTemperature(f64),
    #[error("non-positive competence: {language} = {value}")]
    NonPositiveCompetence { language: String, value: f64 },
    #[error("invalid weight: {language} = {value}")]
    InvalidWeight { language: String, value: f64 },
    #[error("report missing language: {0}")]
    ReportMissingLanguage(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("invalid curve for {language}: {reason}")]
    InvalidCurve { language: String, reason: String },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("train step count must be positive")]
    ZeroSteps,
    #[error("dev sample size must be positive")]
    ZeroSampleSize,
    #[error("trainer failure at step {step}: {source}")]
    Trainer {
        step: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(path: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_string(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
