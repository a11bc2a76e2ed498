use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by the solver, correlation and observable layers.
///
/// The variants fall into three families which the CLI maps onto distinct
/// exit codes: invalid input ([`Error::InvalidParams`], [`Error::OutOfRange`],
/// [`Error::InsufficientData`]), numerical consistency violations
/// ([`Error::NonHermitian`], [`Error::Numerical`], ...), and the exact
/// diagonalisation size guard ([`Error::SizeLimit`]).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("momentum {0} is a special point (0 or pi) and has no 8x8 block")]
    SpecialMomentum(String),

    #[error("momentum {momentum} is not on the {bc} grid for N'={n_cells}")]
    OffGrid {
        momentum: String,
        bc: String,
        n_cells: usize,
    },

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NonHermitian(f64),

    #[error("matrix is not antisymmetric (max deviation {0:.3e})")]
    NotAntisymmetric(f64),

    #[error("pfaffian of odd dimension {0}")]
    OddDimension(usize),

    #[error("{0} is only defined for antiperiodic fermion boundary conditions")]
    RequiresAbc(&'static str),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("numerical consistency error: {0}")]
    Numerical(String),

    #[error("exact diagonalisation limited to {limit} sites, requested {requested}")]
    SizeLimit { limit: usize, requested: usize },

    #[error("entropy curve saturates (upper-window slope {slope:.4} bits/octave)")]
    Saturated { slope: f64 },
}

impl Error {
    /// Whether the error reports a broken numerical invariant rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonHermitian(_)
                | Error::NotAntisymmetric(_)
                | Error::Numerical(_)
                | Error::Saturated { .. }
        )
    }
}
