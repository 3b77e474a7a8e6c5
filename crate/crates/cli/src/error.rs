use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid range: lo={lo} must be below hi={hi}")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("temperature axis must start above zero, got lo={0}")]
    NonPositiveTemperatureAxis(f64),
    #[error("a sweep needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown axis `{0}`")]
    UnknownAxis(String),
    #[error("unknown observable `{0}`")]
    UnknownObservable(String),
    #[error("unknown critical kind `{0}`")]
    UnknownKind(String),
    #[error("unknown model `{0}`, expected imp or host")]
    UnknownModel(String),
    #[error("no {kind} crossing in [{lo}, {hi}]")]
    NoCrossingFound {
        kind: &'static str,
        lo: f64,
        hi: f64,
    },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("bad value for `{key}`: `{value}`")]
    BadValue { key: String, value: String },
    #[error(transparent)]
    Physics(#[from] diamond_chain::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
