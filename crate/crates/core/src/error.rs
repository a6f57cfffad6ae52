//! Error type shared by all modules.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The annulus parameter must satisfy R > 1 (finite).
    #[error("R must exceed 1 (got {0})")]
    RadiusOutOfRange(f64),

    /// The construction is only defined for n >= 2.
    #[error("n must be >= 2 (got {0})")]
    OrderTooSmall(u32),

    /// The witness parameter must satisfy m >= 3.
    #[error("m must be >= 3 (got {0})")]
    WitnessParamTooSmall(u32),

    /// A truncation window was given with lo > hi.
    #[error("window [{lo}, {hi}] is empty")]
    EmptyWindow { lo: i64, hi: i64 },

    /// Strict-mode application would move a nonzero component outside the window.
    #[error("component at index {index} would leave window [{lo}, {hi}]")]
    WindowOverflow { index: i64, lo: i64, hi: i64 },

    /// Operator-norm facts need the window to cover at least one full weight period.
    #[error("window [{lo}, {hi}] spans less than one full period of length {period}")]
    WindowTooShort { lo: i64, hi: i64, period: i64 },

    /// The window is too narrow for the polynomial's degrees applied twice.
    #[error("window of length {len} cannot accommodate degree span {span} applied twice")]
    WindowTooNarrow { len: usize, span: i64 },

    /// Two vectors (or a vector and an operator) live on different windows.
    #[error("window mismatch: [{lo_a}, {hi_a}] vs [{lo_b}, {hi_b}]")]
    WindowMismatch {
        lo_a: i64,
        hi_a: i64,
        lo_b: i64,
        hi_b: i64,
    },

    /// R^q is not representable in f64 for the requested parameters.
    #[error("R^{exponent} overflows f64 (R = {radius})")]
    PowerOverflow { radius: f64, exponent: u32 },

    /// The canonical witness window would exceed the configured memory cap.
    #[error("window length {len} exceeds cap {cap}")]
    WindowCapExceeded { len: u64, cap: u64 },

    /// Boundary sampling needs an even sample count of at least 16.
    #[error("samples must be even and >= 16 (got {0})")]
    SampleCount(usize),

    /// A convergence tolerance must be positive.
    #[error("tolerance must be positive (got {0})")]
    InvalidTolerance(f64),

    /// Norm-estimation probes must be nonzero.
    #[error("probe {index} is the zero vector")]
    ZeroProbe { index: usize },

    /// A computed quantity failed an exact self-check. Always a bug.
    #[error("internal invariant violated: {check} (expected {expected}, got {got})")]
    InvariantViolation {
        check: &'static str,
        expected: f64,
        got: f64,
    },

    /// The bound table's lower bounds exceeded its upper bounds. Always a bug.
    #[error("bound table inconsistent at R = {radius}: max lower {max_lower} > min upper {min_upper}")]
    ConsistencyViolation {
        radius: f64,
        max_lower: f64,
        min_upper: f64,
    },
}
