//! Error types shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Search failures ("no witness found within the depth limit", "matrix is not
/// a member of the subgroup") are *values*, not errors — see the individual
/// operations. Only genuine contract violations live here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text did not match the polynomial or word grammar.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A polynomial operation required a monic input.
    #[error("polynomial is not monic")]
    NotMonic,

    /// A polynomial is not a product of cyclotomic polynomials.
    #[error("polynomial has a non-cyclotomic factor")]
    NotCyclotomicProduct,

    /// `difference_profile` was handed a pair with f = g.
    #[error("f - g is identically zero")]
    ZeroDifference,

    /// The pair (f,g) fails one of the standing hypotheses
    /// (monic, even degree, reciprocal, f(0)=g(0)=1, coprime, primitive).
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    /// Matrix dimensions do not conform.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Inversion (or a negative power) of a singular matrix.
    #[error("matrix is singular")]
    Singular,

    /// `nilpotent_log` was handed a matrix with non-nilpotent `u - I`.
    #[error("matrix is not unipotent")]
    NotUnipotent,

    /// The invariance equations for the symplectic form have no nonzero solution.
    #[error("no invariant bilinear form exists")]
    NoInvariantForm,

    /// The space of invariant forms has dimension >= 2; the pair is degenerate
    /// (the group cannot be Zariski dense in a symplectic group).
    #[error("invariant form is not unique (solution space has dimension {0})")]
    NonUniqueForm(usize),

    /// The invariant form is degenerate (determinant zero).
    #[error("invariant form is degenerate")]
    DegenerateForm,

    /// The Unit12 normalization divides by Omega(e1,e2), which is zero here.
    #[error("Unit12 normalization undefined: Omega(e1,e2) = 0 for this pair")]
    Unit12Undefined,

    /// A matrix expected to be a transvection is not one.
    #[error("matrix is not a transvection: {0}")]
    NotTransvection(String),

    /// Neither the A-conjugated nor the B-conjugated standard triple has
    /// independent directions.
    #[error("transvection triple is degenerate for both conjugation choices")]
    TripleDegenerate,

    /// An internal invariant that should be unbreakable was breached.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// `sl2_membership` only supports |c| in {1, 2}.
    #[error("unsupported multiplier |c| = {0} (only 1 and 2 are supported)")]
    UnsupportedC(String),

    /// A word references a symbol with no binding.
    #[error("unbound symbol `{0}` in word")]
    UnboundSymbol(String),

    /// The flag-basis constraints were unsolvable.
    #[error("degenerate flag: {0}")]
    DegenerateFlag(String),

    /// A candidate matrix does not have the root-group shape.
    #[error("matrix does not match the root-group shape: {0}")]
    ShapeMismatch(String),

    /// The Lie closure of the generators' logarithms is too small.
    #[error("insufficient Lie closure: dimension {0} found")]
    InsufficientClosure(usize),

    /// Table emission failed on the filesystem.
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
