use dynquant_scalars::Q;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("sl_{0} requested; need n >= 2")]
    RankTooSmall(usize),
    #[error("simple root index {index} out of range for rank {rank}")]
    BadSimpleRoot { index: usize, rank: usize },
    #[error("highest weight {0:?} is not dominant integral")]
    NotDominant(Vec<i64>),
    #[error("character coordinate {coordinate} is integral ({value}); λ lies in the excluded locus Y")]
    NonGeneric { coordinate: usize, value: Q },
    #[error("singular grade-{grade} system: λ lies in the excluded locus")]
    NonGenericSingular { grade: usize },
    #[error("leading vector is not an l0-invariant vector of c-weight λ-μ")]
    WeightMismatch,
    #[error("depth {got} below the required {need}")]
    DepthInsufficient { need: usize, got: usize },
    #[error("action leaves depth {depth}")]
    DepthExceeded { depth: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("pole at t = 0 in the λ/t expansion")]
    PoleAtOrigin,
    #[error("product leaves the enumerated block set (highest weight {0:?})")]
    NotClosed(Vec<i64>),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Both ways a character can fail genericity.
    pub fn is_non_generic(&self) -> bool {
        matches!(self, Error::NonGeneric { .. } | Error::NonGenericSingular { .. })
    }
}
