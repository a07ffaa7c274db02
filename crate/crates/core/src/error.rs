use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice has no elements")]
    EmptyLattice,

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("cover relation has a cycle through `{0}` and `{1}`")]
    NotAntisymmetric(String, String),

    #[error("pair (`{a}`, `{b}`) has {problem}")]
    NotALattice {
        a: String,
        b: String,
        problem: &'static str,
    },

    #[error("invalid element {0}")]
    InvalidElement(String),

    #[error("{what} too large: {estimate} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        estimate: u128,
        cap: u128,
    },

    #[error("operands live on different lattices")]
    LatticeMismatch,

    #[error("lattice is not distributive: witness ({0}, {1}, {2})")]
    NotDistributive(String, String, String),

    #[error("not a space function: {0}")]
    NotASpaceFunction(String),

    #[error("unknown agent `{0}`")]
    UnknownAgent(String),

    #[error("unknown proposition `{0}`")]
    UnknownProp(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid partition for agent `{agent}`: {detail}")]
    InvalidPartition { agent: String, detail: String },

    #[error("{0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("erosion by the empty structuring element is unbounded")]
    EmptyStructuringElement,

    #[error("coordinate overflow")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyLattice => "EmptyLattice",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::NotAntisymmetric(..) => "NotAntisymmetric",
            Error::NotALattice { .. } => "NotALattice",
            Error::InvalidElement(_) => "InvalidElement",
            Error::TooLarge { .. } => "TooLarge",
            Error::LatticeMismatch => "LatticeMismatch",
            Error::NotDistributive(..) => "NotDistributive",
            Error::NotASpaceFunction(_) => "NotASpaceFunction",
            Error::UnknownAgent(_) => "UnknownAgent",
            Error::UnknownProp(_) => "UnknownProp",
            Error::UnknownState(_) => "UnknownState",
            Error::InvalidPartition { .. } => "InvalidPartition",
            Error::Unsupported(_) => "Unsupported",
            Error::DimMismatch(..) => "DimMismatch",
            Error::EmptyStructuringElement => "EmptyStructuringElement",
            Error::Overflow => "Overflow",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
        }
    }

    pub(crate) fn too_large(what: &'static str, estimate: u128, cap: u128) -> Self {
        Error::TooLarge {
            what,
            estimate,
            cap,
        }
    }
}
