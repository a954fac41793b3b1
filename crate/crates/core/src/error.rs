use thiserror::Error;

use crate::group::ElementId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("not a group: {0}")]
    NonGroup(String),

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("no element labelled `{0}`")]
    UnknownElement(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("map is not a bijection fixing the identity")]
    NotBijective,

    #[error("map violates the {kind} rule at ({a}, {b}): expected {expected}, found {found}")]
    HomomorphismViolation {
        kind: &'static str,
        a: ElementId,
        b: ElementId,
        expected: ElementId,
        found: ElementId,
    },

    #[error("expected an {expected}, got an {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("map is not involutory: applying it twice moves element {0}")]
    NotInvolutory(ElementId),

    #[error("generator images are inconsistent at element {0}")]
    InconsistentImages(ElementId),

    #[error("group was not built by the clifford family")]
    NotCliffordGroup,

    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("map does not commute with the action at generator {generator}")]
    NotCommuting { generator: usize },

    #[error("averaged count {numerator}/{denominator} is not an integer")]
    NotInteger { numerator: u128, denominator: u128 },

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: usize,
        budget: usize,
    },

    #[error("eigenvalues stayed clustered after {attempts} random combinations")]
    DegenerateEigenspaces { attempts: usize },

    #[error("class functions belong to different groups")]
    GroupMismatch,

    #[error("{what} is not integral (value {value}, residual {residual:e})")]
    NonIntegral {
        what: &'static str,
        value: f64,
        residual: f64,
    },

    #[error("indicator {value} of row {row} is outside {{-1, 0, 1}}")]
    ValueOutOfRange { row: usize, value: i64 },

    #[error("no character row matches the twisted row {0}")]
    NoMatchingRow(usize),

    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),

    #[error("character {0} fits neither index-two case")]
    CaseClassificationFailed(usize),

    #[error("(G, K) is not a Gelfand pair")]
    NotGelfand,
}

impl Error {
    /// Errors that signal a failed mathematical consistency check rather
    /// than bad input.
    pub fn is_cross_check(&self) -> bool {
        matches!(
            self,
            Error::NotInteger { .. }
                | Error::DegenerateEigenspaces { .. }
                | Error::NonIntegral { .. }
                | Error::ValueOutOfRange { .. }
                | Error::NoMatchingRow(_)
                | Error::CrossCheckFailed(_)
                | Error::CaseClassificationFailed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
