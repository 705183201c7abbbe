//! Validated numerics for a three-map family of self-similar sets on the line.
//!
//! Everything a certificate depends on runs in exact rational arithmetic:
//! rational scalars, rational-endpoint intervals, integer-coefficient
//! polynomials and their quotients. Machine floats appear only in search
//! heuristics (root proposals, sort keys) and in human-facing reports.
//!
//! The crate is organized around the pipeline:
//!
//! * [`numerics`] — scalars, intervals, polynomials, rational functions,
//!   branch-and-bound positivity certificates, root isolation.
//! * [`words`] — finite words over the base alphabet `{1,2,3}` and over the
//!   seven-letter planar alphabet, and the pair coding between them.
//! * [`ifs`] — the parametrized maps, orbit points, and the slope function
//!   of planar orbits as an exact rational function of the contraction.
//! * [`separation`] — exhaustive level-`n` orbit enumeration, minimum gaps,
//!   average condensation counts, exact-overlap detection.
//! * [`dimension`] — dyadic partition entropy and the entropy/count routes
//!   to the dimension of the natural measure.
//! * [`geometry`] — the planar hull, slope intervals of translated hulls,
//!   and the seven-child covering certificates.
//! * [`transversality`] — certified two-sided bounds on the derivative of
//!   slope differences, uniform over admissible tails.
//! * [`eta`] — certified super-exponentially decaying gap schedules.
//! * [`construction`] — the binary tree of parameter intervals and the
//!   per-leaf certificate bundles.

pub mod certify;
pub mod construction;
pub mod dimension;
pub mod eta;
pub mod geometry;
pub mod ifs;
pub mod interval;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod scalar;
pub mod separation;
pub mod transversality;
pub mod words;

pub mod numerics {
    //! Re-exports of the exact-arithmetic substrate.
    pub use crate::certify::{certify_positive, isolate_root, CertOutcome, Certificate};
    pub use crate::interval::Interval;
    pub use crate::poly::Poly;
    pub use crate::ratfunc::RatFunc;
    pub use crate::scalar::{parse_rat, Budget, Scalar};
}

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, the exact scalar of every certificate.
pub type Rat = num_rational::BigRational;
/// Interval with exact rational endpoints.
pub type RatInterval = interval::Interval<Rat>;
/// Interval with `f64` endpoints, for heuristics only.
pub type F64Interval = interval::Interval<f64>;
/// Polynomial with integer coefficients, indexed by power.
pub type IntPoly = poly::Poly<Int>;
/// Polynomial with rational coefficients.
pub type RatPoly = poly::Poly<Rat>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("length mismatch: |i| = {0}, |j| = {1}")]
    LengthMismatch(usize, usize),
    #[error("word has no symbol with nonzero second coordinate")]
    NoSecondCoordinate,
    #[error("denominator interval contains zero on an undecided box [{0}, {1}]")]
    DenominatorVanishes(String, String),
    #[error("no sign change: sign {0} at both endpoints")]
    NoSignChange(i32),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("gap schedule decays too slowly: {0}")]
    EtaTooSlow(String),
    #[error("gap schedule table exhausted at index {0}")]
    EtaTableExhausted(usize),
    #[error("root not found: {0}")]
    RootNotFound(String),
    #[error("domain margin violated: {0}")]
    MarginViolation(String),
    #[error("no branch point within descent budget: {0}")]
    NoBranchPoint(String),
    #[error("minimum-gap bound too weak: {0}")]
    GapBoundTooWeak(String),
}

pub type Result<T> = std::result::Result<T, Error>;
