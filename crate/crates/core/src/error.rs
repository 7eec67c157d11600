use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("genus out of scope: {0}")]
    GenusOutOfScope(usize),
    #[error("genus mismatch: expected {expected}, found {found}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("character value {0} is zero")]
    ZeroValue(usize),
    #[error("{0} is undecidable in floating mode")]
    UndecidableInFloatingMode(&'static str),
    #[error("operation requires floating mode")]
    RequiresFloatingMode,
    #[error("cocycle constraint violated, residual {residual}")]
    ConstraintViolated { residual: Complex64 },
    #[error("fiber undefined at trivial character")]
    TrivialCharacter,
    #[error("character is not unitary")]
    NotUnitary,
    #[error("cocycles are over different characters")]
    CharacterMismatch,
    #[error("inconsistent beta data, residual {residual}")]
    InconsistentBetaData { residual: Complex64 },
    #[error("beta data for generator {generator} does not alternate starting with +")]
    BetaOrder { generator: usize },
    #[error("twist is not unipotent: mu(curve) = {value}")]
    NotUnipotent { value: Complex64 },
    #[error("basis degenerate at this character: {factor} vanishes")]
    Degenerate { factor: String },
    #[error("matrix is not Hermitian, defect {defect:e}")]
    NonHermitian { defect: f64 },
    #[error("matrix determinant {det} is not 1")]
    Determinant { det: Complex64 },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("empty input")]
    Empty,
    #[error("least-squares residual {0:e} exceeds tolerance")]
    NotInSpan(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse class of an error, for callers that map errors to exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input.
    Input,
    /// Well-formed input outside the domain of the mathematics
    /// (trivial, degenerate or non-unitary characters).
    Precondition,
    /// A numerical check failed its tolerance.
    Tolerance,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            GenusOutOfScope(_)
            | GenusMismatch { .. }
            | DimensionMismatch { .. }
            | Parse(_)
            | ZeroValue(_)
            | ConstraintViolated { .. }
            | CharacterMismatch
            | InconsistentBetaData { .. }
            | BetaOrder { .. }
            | IndexOutOfRange { .. }
            | ZeroScalar
            | Empty => ErrorKind::Input,
            UndecidableInFloatingMode(_) | RequiresFloatingMode | TrivialCharacter | NotUnitary | Degenerate { .. } => {
                ErrorKind::Precondition
            }
            NotUnipotent { .. } | NonHermitian { .. } | Determinant { .. } | NotInSpan(_) => ErrorKind::Tolerance,
        }
    }

    /// Stable machine-readable name.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            GenusOutOfScope(_) => "genus_out_of_scope",
            GenusMismatch { .. } => "genus_mismatch",
            DimensionMismatch { .. } => "dimension_mismatch",
            Parse(_) => "parse",
            ZeroValue(_) => "zero_value",
            UndecidableInFloatingMode(_) => "undecidable_in_floating_mode",
            RequiresFloatingMode => "requires_floating_mode",
            ConstraintViolated { .. } => "constraint_violated",
            TrivialCharacter => "trivial_character",
            NotUnitary => "not_unitary",
            CharacterMismatch => "character_mismatch",
            InconsistentBetaData { .. } => "inconsistent_beta_data",
            BetaOrder { .. } => "beta_order",
            NotUnipotent { .. } => "not_unipotent",
            Degenerate { .. } => "degenerate",
            NonHermitian { .. } => "non_hermitian",
            Determinant { .. } => "determinant",
            IndexOutOfRange { .. } => "index_out_of_range",
            ZeroScalar => "zero_scalar",
            Empty => "empty",
            NotInSpan(_) => "not_in_span",
        }
    }
}
