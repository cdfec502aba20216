use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants are grouped by how a caller is expected to react; the grouping is
/// what [`Error::exit_code`] exposes to the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // --- input syntax ---
    #[error("line {line}: {message} (near `{token}`)")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },

    // --- structural validation ---
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("d^2 != 0: entry from `{source_gen}` to `{target}` is {entry}")]
    DifferentialNotSquareZero {
        source_gen: String,
        target: String,
        entry: String,
    },
    #[error("entry from `{source_gen}` (grading {source_grading}) to `{target}` (grading {target_grading}) does not shift grading by {expected}")]
    GradingViolation {
        source_gen: String,
        target: String,
        source_grading: i64,
        target_grading: i64,
        expected: i64,
    },
    #[error(
        "not a chain map: d F + F d has entry from `{source_gen}` to `{target}` equal to {entry}"
    )]
    NotAChainMap {
        source_gen: String,
        target: String,
        entry: String,
    },
    #[error("complex mismatch: {0}")]
    ComplexMismatch(String),

    // --- scalar arithmetic ---
    #[error("{0} is not a unit of the local ring")]
    NotAUnit(String),
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("exponent {0} exceeds the supported bound 2^20")]
    ExponentOverflow(u64),

    // --- preconditions of an operation ---
    #[error("chain map has degree {found}, expected {expected}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("H^infinity is nonzero (total rank {0}); the connecting map is not invertible")]
    InfinityNotZero(usize),
    #[error("chain is not a cycle in C^+")]
    NotACycleInPlus,
    #[error("chain is not a cycle in C^-")]
    NotACycle,
    #[error("class is not in the image of the connecting map")]
    NotInImage,
    #[error("complex has {rank} generators; this operation is limited to {limit}")]
    RankTooLarge { rank: usize, limit: usize },
    #[error("differential or map entry {0} depends on U")]
    NotUFree(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    // --- internal cross-checks ---
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

impl Error {
    /// Machine-readable name used in the CLI error payload.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::DuplicateGenerator(_) => "duplicate_generator",
            Error::UnknownGenerator(_) => "unknown_generator",
            Error::DifferentialNotSquareZero { .. } => "differential_not_square_zero",
            Error::GradingViolation { .. } => "grading_violation",
            Error::NotAChainMap { .. } => "not_a_chain_map",
            Error::ComplexMismatch(_) => "complex_mismatch",
            Error::NotAUnit(_) => "not_a_unit",
            Error::BothZero => "both_zero",
            Error::ExponentOverflow(_) => "exponent_overflow",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::InfinityNotZero(_) => "infinity_not_zero",
            Error::NotACycleInPlus => "not_a_cycle_in_plus",
            Error::NotACycle => "not_a_cycle",
            Error::NotInImage => "not_in_image",
            Error::RankTooLarge { .. } => "rank_too_large",
            Error::NotUFree(_) => "not_u_free",
            Error::ParameterOutOfRange(_) => "parameter_out_of_range",
            Error::CrossCheck(_) => "cross_check",
        }
    }

    /// 3 = parse, 1 = validation, 2 = precondition, 4 = internal assertion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 3,
            Error::DuplicateGenerator(_)
            | Error::UnknownGenerator(_)
            | Error::DifferentialNotSquareZero { .. }
            | Error::GradingViolation { .. }
            | Error::NotAChainMap { .. }
            | Error::ComplexMismatch(_)
            | Error::ExponentOverflow(_) => 1,
            Error::NotAUnit(_)
            | Error::BothZero
            | Error::DegreeMismatch { .. }
            | Error::InfinityNotZero(_)
            | Error::NotACycleInPlus
            | Error::NotACycle
            | Error::NotInImage
            | Error::RankTooLarge { .. }
            | Error::NotUFree(_)
            | Error::ParameterOutOfRange(_) => 2,
            Error::CrossCheck(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
