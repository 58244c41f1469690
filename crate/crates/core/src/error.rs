use crate::linalg::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("not an algebra morphism: {0}")]
    InvalidAlgebraMorphism(String),
    #[error("ideal contains the unit")]
    ImproperIdeal,
    #[error("unsupported characteristic {characteristic} for an algebra of dimension {dim} (trace-form radical needs char 0 or char > dim)")]
    UnsupportedCharacteristic { characteristic: u64, dim: usize },
    #[error("algebra is not semisimple (radical has dimension {0})")]
    NotSemisimple(usize),
    #[error("non-split: {0}; the endomorphism algebra of each simple object must be the ground field")]
    NonSplit(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a module morphism: {0}")]
    InvalidModuleMorphism(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("invalid presented category: {0}")]
    InvalidCategory(String),
    #[error("category mismatch: {0}")]
    CategoryMismatch(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("weak kernels unavailable for this category")]
    WeakKernelsUnavailable,
    #[error("weak kernel oracle violated its contract: {0}")]
    WeakKernelIntegrity(String),
    #[error("category is not of the required shape: {0}")]
    WrongShape(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}
