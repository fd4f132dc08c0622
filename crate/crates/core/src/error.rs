use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("the curve does not separate the surface: {0}")]
    NoSeparation(String),
    #[error("search too large: {estimate} candidates exceed the limit {limit}")]
    SearchTooLarge { estimate: u128, limit: u128 },
    #[error("form is not informative: q does not vanish on the kernel")]
    NotInformative,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not an involutive isometry: {0}")]
    InvalidInvolution(String),
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("no golden table for {0}")]
    NoTable(String),
}

impl Error {
    /// Stable short name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::NotApplicable(_) => "not-applicable",
            Error::NoSeparation(_) => "no-separation",
            Error::SearchTooLarge { .. } => "search-too-large",
            Error::NotInformative => "not-informative",
            Error::Degenerate(_) => "degenerate",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidInvolution(_) => "invalid-involution",
            Error::NotIsotropic => "not-isotropic",
            Error::InvalidScheme(_) => "invalid-scheme",
            Error::InvalidForm(_) => "invalid-form",
            Error::NoTable(_) => "no-table",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
