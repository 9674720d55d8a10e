use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: expected two node tokens, found {found}")]
    Arity { line: usize, found: usize },
    #[error("{}read failed: {source}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Io {
        line: Option<usize>,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("neighborhood too large for canonical labeling: {nodes} nodes exceeds limit {limit}")]
    TooLarge { nodes: usize, limit: usize },
    #[error("brute-force isomorphism refused: {nodes} nodes exceeds oracle limit {limit}")]
    OracleLimit { nodes: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("invalid measure spec {0:?}; expected degree, count:d, degdist:d, dk:d, vrq:d or hybrid:d with d >= 1")]
    InvalidSpec(String),
    #[error("partitions cover different node sets ({left} vs {right} nodes)")]
    UniverseMismatch { left: usize, right: usize },
    #[error("deadline exceeded")]
    TimedOut,
    #[error(transparent)]
    Canon(#[from] CanonError),
}
