use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("denominator vanishes at the expansion center")]
    PoleAtCenter,
    #[error("leading coefficient vanishes at n = {0}")]
    SingularLeadingCoefficient(i64),
    #[error("primary solution vanishes at n = {0}")]
    ZeroPrimaryTerm(i64),
    #[error("coefficient c_{0} grows faster than the leading coefficient")]
    DivergentCoefficient(usize),
    #[error("root iteration did not converge (max residual 10^{max_residual_log10:.1})")]
    NoConvergence { max_residual_log10: f64 },
    #[error("characteristic roots have equal moduli")]
    EqualModuli,
    #[error("sequence vanishes over the sampled tail")]
    ZeroTail,
    #[error("insufficient terms: need {required}, have {available}")]
    InsufficientTerms { required: usize, available: usize },
    #[error("rescaling ratio vanishes at n = {0}")]
    ZeroRatio(i64),
    #[error("denominator sequence vanishes at n = {0}")]
    ZeroDenominatorTerm(i64),
    #[error("sequence is not converging: {0}")]
    NotConverging(String),
    #[error("series coefficient {0} does not stabilize")]
    NoStabilization(usize),
    #[error("solution not determined: {0} free parameter(s) remain")]
    UnderdeterminedSolution(usize),
    #[error("conditions are inconsistent at n = {0}")]
    InconsistentConditions(i64),
    #[error("recognition failed: {0}")]
    RecognitionFailed(String),
    #[error("degenerate system: {0}")]
    DegenerateSystem(String),
    #[error("convergent denominator vanishes at n = {0}")]
    ZeroDenominatorConvergent(usize),
    #[error("recurrence is not of continued-fraction form: {0}")]
    NotReducible(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("precision {have} too low, need at least {need} digits")]
    PrecisionTooLow { have: u32, need: u32 },
    #[error("basis rows are linearly dependent")]
    DependentRows,
    #[error("no recurrence found within the search bounds")]
    NoRecurrenceFound,
}
