use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid label ({0},{1}): x + y must be even")]
    InvalidLabel(i32, i32),
    #[error("duplicate robot position ({0},{1})")]
    DuplicateRobot(i32, i32),
    #[error("configuration has no robots")]
    EmptyConfiguration,
    #[error("initial configuration is not connected")]
    Disconnected,
    #[error("robot ({0},{1}) is not part of the configuration")]
    NotARobot(i32, i32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("rule table line {line}: {msg}")]
    RuleTable { line: usize, msg: String },
    #[error("malformed configuration: {0}")]
    ConfigFormat(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
