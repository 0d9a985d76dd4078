use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has a zero on the unit circle")]
    ZeroOnCircle,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("symbol denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("symbol has a pole on the unit circle")]
    PoleOnCircle,
    #[error("factor {0} lies on the unit circle")]
    FactorOnCircle(String),
    #[error("operation is undefined for the zero symbol")]
    ZeroSymbol,
    #[error("symbol has a zero on the unit circle")]
    ZeroOnCircle,
    #[error("symbol carries no circle-split factorization ({0})")]
    MissingSplit(&'static str),
}

impl From<ExactError> for SymbolError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::ZeroOnCircle => SymbolError::ZeroOnCircle,
            ExactError::ZeroPolynomial => SymbolError::ZeroSymbol,
            ExactError::DivisionByZero => SymbolError::ZeroDenominator,
            ExactError::Parse(_) => SymbolError::ZeroSymbol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("tail ratio {0} has modulus >= 1; sequence is not square summable")]
    NotSquareSummable(String),
    #[error("negative tail start {0}")]
    NegativeStart(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("index ({0}, {1}) out of range")]
    IndexOutOfRange(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("block signatures differ: {0}")]
    SignatureMismatch(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("block index {0} out of range")]
    BlockOutOfRange(usize),
    #[error("block {0} has a nonzero symbol, so the operator is not in the ideal")]
    NotInIdeal(usize),
}

impl OperatorError {
    pub fn is_missing_split(&self) -> bool {
        matches!(self, OperatorError::Symbol(SymbolError::MissingSplit(_)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("operator is not B-Fredholm within the representation class")]
    NotBFredholm,
    #[error("trace of the commutator is not an integer: {value}\n{dump}")]
    NonIntegerTrace { value: String, dump: String },
    #[error("operators do not commute pairwise: {0}")]
    NotCommuting(String),
    #[error("u1*a1 + u2*a2 is not the identity")]
    NotBezout,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

impl From<SymbolError> for EngineError {
    fn from(e: SymbolError) -> Self {
        EngineError::Operator(OperatorError::Symbol(e))
    }
}

impl From<MatrixError> for EngineError {
    fn from(e: MatrixError) -> Self {
        EngineError::Operator(OperatorError::Matrix(e))
    }
}

impl EngineError {
    /// Internal-consistency failures are bugs, not user errors.
    pub fn is_internal(&self) -> bool {
        matches!(self, EngineError::NonIntegerTrace { .. } | EngineError::Consistency(_))
    }
}
