//! Essential-signature monomial bases for the orthogonal Lie algebras.
//!
//! For a simple Lie algebra of type `B_n` or `D_n` and a dominant integral
//! weight λ, every tuple of exponents over the positive roots determines a
//! vector in the irreducible module `V(λ)`: apply divided powers of the
//! lowering operators, in a fixed numeration of the roots, to a highest
//! weight vector.  A signature is *essential* when its vector does not lie
//! in the span of the vectors of strictly smaller signatures (in a fixed
//! monomial order); the essential signatures form a basis of `V(λ)` and,
//! taken over all λ, a semigroup under componentwise addition.
//!
//! The crate computes essential sets two independent ways and checks them
//! against each other:
//!
//! * [`essential_oracle`] — ground truth.  Build an explicit realization of
//!   `V(λ)` ([`rep_modules`]), enumerate every signature with a nonzero
//!   vector, and run exact ordered Gaussian elimination inside each weight
//!   space.
//! * [`semigroup`] — closed forms.  Recursive descriptions of the essential
//!   sets of the generator weights, projection/lifting maps between ranks
//!   and types, the explicit inequality systems cutting out the semigroup,
//!   and verifiers for its generation, rewriting, and saturation properties.
//!
//! [`root_system`] fixes the root numeration and the two-layer signature
//! order everything else depends on; [`weyl`] supplies exact dimensions as
//! the cardinality referee.

pub mod essential_oracle;
pub mod export;
pub mod rep_modules;
pub mod root_system;
pub mod semigroup;
pub mod weyl;

pub use essential_oracle::EssentialSet;
pub use root_system::{AlgKind, AlgebraType, LexDirection, Root, Signature, Weight};

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("rank {0} is out of range: both families need rank >= 2")]
    InvalidRank(usize),
    #[error("exponent tuple has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weight {0:?} (eps doubled) is not dominant integral for this algebra")]
    NotDominant(Vec<i64>),
    #[error("signature highest weight does not match the module highest weight")]
    WeightMismatch,
    #[error("algebra mismatch between operands")]
    AlgebraMismatch,
    #[error("exterior power {p} out of range 1..={n}")]
    PowerOutOfRange { p: usize, n: usize },
    #[error("spin parity {0} is not available for this algebra type")]
    BadParity(&'static str),
    #[error("essential set has {got} signatures but the module dimension is {expected}; the realization is not cyclic over the chosen highest vector")]
    Cardinality { expected: String, got: usize },
    #[error("weight is not in the generator list for this algebra")]
    NotGenerator,
    #[error("projection lands outside the dominant cone: coefficient {coeff} at position {pos}")]
    NotInImage { pos: usize, coeff: i64 },
    #[error("no lift: {0}")]
    NoLift(String),
    #[error("point is not in the cone: {0}")]
    NotInCone(String),
    #[error("signature does not decompose over the generator essential sets")]
    NotDecomposable,
    #[error("rescaling factor must be nonzero")]
    ZeroScale,
    #[error("closed-form invariant violated: {0}")]
    Invariant(String),
    #[error("realization invariant violated: {0}")]
    BrokenRealization(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
