//! Crate-wide error type.
//!
//! Every fallible operation returns one of these variants; the names match
//! the failure modes they guard (division by a vanishing constant term,
//! resonance in the series ODE recursion, and so on).

use thiserror::Error;

/// Errors produced by series algebra, geometry checks, operators and the
/// harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Division, logarithm or fractional power attempted on a series whose
    /// constant term is (numerically) zero.
    #[error("constant term too close to zero ({modulus:.3e}) for {op}")]
    NearZeroConstantTerm { op: &'static str, modulus: f64 },

    /// Termwise operation would introduce a pole or essential singularity at
    /// the origin (e.g. integrating c/z without a matching exponent).
    #[error("operation {op} would be singular at the origin")]
    SingularAtOrigin { op: &'static str },

    /// Termwise integration hit exponent -1, which would produce a log term
    /// outside the representable algebra.
    #[error("integration would produce a logarithmic term at power {power:.6}")]
    LogarithmicTerm { power: f64 },

    /// The Briot-Bouquet recursion denominator k + Q0(2 beta p0 + alpha) - beta Psi0
    /// vanished at order k.
    #[error("resonant order {order}: recursion denominator modulus {modulus:.3e}")]
    ResonantOrder { order: usize, modulus: f64 },

    /// beta*p + alpha (or another operator denominator) has vanishing constant
    /// term, so the defining fraction does not exist as a series.
    #[error("denominator vanishes at the origin in {op} (|value| = {modulus:.3e})")]
    DenominatorVanishes { op: &'static str, modulus: f64 },

    /// Exact membership was requested for a dominant that only supports the
    /// winding-number fallback.
    #[error("dominant {tag} has no exact membership predicate")]
    NoExactPredicate { tag: String },

    /// A winding-number query point lies on (or numerically on) the curve.
    #[error("query point within {distance:.3e} of the sampled curve")]
    PointOnCurve { distance: f64 },

    /// An operation required a specific valuation (e.g. f of class A with
    /// f(0)=0, f'(0)=1-like normalization) and the input does not have it.
    #[error("valuation mismatch in {op}: expected {expected}, found {found}")]
    ValuationMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },

    /// The angle passed to a boundary-radius formula is degenerate (sin = 0).
    #[error("degenerate angle {theta:.6} for {op}")]
    DegenerateAngle { op: &'static str, theta: f64 },

    /// Unknown theorem-case identifier.
    #[error("unknown case id `{id}`")]
    UnknownCase { id: String },

    /// A constructed instance failed its own hypothesis gate where the
    /// construction should have guaranteed it.
    #[error("hypothesis gate failed for case `{id}`: {detail}")]
    HypothesisFailed { id: String, detail: String },

    /// Generator could not produce an admissible instance within its retry
    /// budget.
    #[error("generator starved for case `{id}`: {attempts} attempts without an admissible instance")]
    GeneratorStarved { id: String, attempts: usize },

    /// File or serialization failure in the CLI / report paths.
    #[error("I/O failure: {0}")]
    IoFailure(String),

    /// A parameter combination is outside the supported domain.
    #[error("invalid parameter for {op}: {detail}")]
    InvalidParameter { op: &'static str, detail: String },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
