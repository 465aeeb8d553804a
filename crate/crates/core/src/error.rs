use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("polynomial is not squarefree: roots {0} and {1} closer than tolerance")]
    NonSquarefree(String, String),
    #[error("root finder did not converge after {iterations} iterations")]
    DidNotConverge { iterations: usize },
    #[error("genericity condition {index} violated: {witness}")]
    ConditionViolation { index: u8, witness: String },
    #[error("{function} is not Morse: {detail}")]
    NotMorse { function: String, detail: String },
    #[error("base value {0} is not regular")]
    NotRegularValue(String),
    #[error("no target point within tolerance of {0}")]
    UnmatchedPoint(String),
    #[error("unknown critical value label {0}")]
    UnknownCriticalValue(String),
    #[error("unknown cycle label {0}")]
    UnknownCycle(String),
    #[error("loop radius {radius} too large: nearest other critical value at distance {distance}")]
    ClearanceViolation { radius: f64, distance: f64 },
    #[error("continuation lost track at t = {0}")]
    TrackingLoss(String),
    #[error("roots collided during continuation: {0}")]
    RootCollision(String),
    #[error("inconsistent intersection table: {0}")]
    InconsistentTable(String),
    #[error("generator {0} is not unimodular")]
    NonUnimodularGenerator(usize),
    #[error("polynomial is not of the form g(x)+h(y)")]
    NotDirectSum,
    #[error("polynomial is not transversal to infinity")]
    NotTransversal,
    #[error("coefficient of eta_{i}{j} is not constant: {h}")]
    NonConstantCoefficient { i: usize, j: usize, h: String },
    #[error("degree bound violated: {0}")]
    DegreeViolation(String),
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("{0} is prime")]
    PrimeInput(u64),
    #[error("subgraph decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InconsistentTable(_)
            | Error::DidNotConverge { .. }
            | Error::TrackingLoss(_)
            | Error::RootCollision(_)
            | Error::DecompositionFailure(_)
            | Error::UnmatchedPoint(_) => 2,
            _ => 1,
        }
    }

    /// Variant name, e.g. `ConditionViolation`.
    pub fn kind(&self) -> String {
        let dbg = format!("{self:?}");
        dbg.split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or_default()
            .to_string()
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::json!({ "error": self.kind(), "message": self.to_string() });
        match self {
            Error::ConditionViolation { index, witness } => {
                v["index"] = (*index).into();
                v["witness"] = witness.clone().into();
            }
            Error::NotMorse { function, detail } => {
                v["function"] = function.clone().into();
                v["detail"] = detail.clone().into();
            }
            _ => {}
        }
        v.to_string()
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
