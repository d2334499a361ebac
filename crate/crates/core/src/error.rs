use alloc::string::String;
use core::fmt;

use crate::jet::JetError;

/// Errors raised by the analysis pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A substitution germ does not fix the origin.
    NonOriginPreserving,
    /// A germ has a nonzero constant term where a germ through the origin was required.
    NotAtOrigin,
    /// The answer depends on terms above the available truncation order.
    TruncationInsufficient { order: u32 },
    /// None of E, F, G is nonzero at the origin (impossible for a regular patch).
    NoNonzeroMetricCoefficient,
    /// The local algebra defining m(omega) has odd dimension.
    OddDimension(u64),
    /// The 1-jet of the BDE vanishes, so the configuration is not 1-determined.
    ZeroOneJet,
    /// Preconditions of the saddle/node rule fail.
    DegenerateConfig(Degeneracy),
    /// The cubic form is identically zero.
    ZeroCubic,
    /// The cubic has a timelike root whose orthogonal spacelike direction is a
    /// double root; no normal form of the list applies.
    NoNormalForm,
    UnknownModel(String),
    NotUmbilic,
    UnsupportedCausalType,
    /// The patch is not in the adapted form the operation needs (e.g. nonzero 1-jet).
    NotAdapted(&'static str),
    /// An enclosure is too wide to decide a sign.
    UndeterminedAtPrecision,
    /// The umbilics near the origin are not isolated (common component).
    NonIsolatedUmbilics,
    /// A root cluster straddles the search disk boundary.
    IllConditioned,
    /// No metric coefficient is sign-definite on the search disk.
    BranchInvalid,
    SeedOutsideDomain,
    /// A sanity check of the pipeline failed; indicates a bug.
    Internal(&'static str),
}

/// Which precondition of the configuration analysis failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// The discriminant is not a Morse singularity.
    NonMorseDiscriminant,
    /// phi has a repeated root.
    RepeatedRoot,
    /// phi and alpha share a root.
    CommonRoot,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Degeneracy::NonMorseDiscriminant => "discriminant singularity is not Morse",
            Degeneracy::RepeatedRoot => "phi has a repeated root",
            Degeneracy::CommonRoot => "phi and alpha have a common root",
        })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonOriginPreserving => f.write_str("substitution does not fix the origin"),
            Error::NotAtOrigin => f.write_str("germ does not vanish at the origin"),
            Error::TruncationInsufficient { order } => {
                write!(f, "truncation order {} is insufficient to determine the answer", order)
            }
            Error::NoNonzeroMetricCoefficient => f.write_str("E, F and G all vanish at the origin"),
            Error::OddDimension(d) => write!(f, "local algebra for m(omega) has odd dimension {}", d),
            Error::ZeroOneJet => f.write_str("1-jet of the BDE vanishes"),
            Error::DegenerateConfig(d) => write!(f, "degenerate configuration: {}", d),
            Error::ZeroCubic => f.write_str("cubic form is zero"),
            Error::NoNormalForm => f.write_str("cubic has no normal form in the reduction list"),
            Error::UnknownModel(name) => write!(f, "unknown model '{}'", name),
            Error::NotUmbilic => f.write_str("origin is not an umbilic point"),
            Error::NonIsolatedUmbilics => f.write_str("umbilics are not isolated"),
            Error::UnsupportedCausalType => f.write_str("operation not available for this causal type"),
            Error::NotAdapted(what) => write!(f, "patch is not in adapted form: {}", what),
            Error::UndeterminedAtPrecision => f.write_str("undetermined at the working precision"),
            Error::IllConditioned => f.write_str("roots lie on the search disk boundary"),
            Error::BranchInvalid => f.write_str("no metric coefficient is sign-definite on the disk"),
            Error::SeedOutsideDomain => f.write_str("seed lies outside the portrait domain"),
            Error::Internal(what) => write!(f, "internal consistency check failed: {}", what),
        }
    }
}

impl From<JetError> for Error {
    fn from(e: JetError) -> Self {
        match e {
            JetError::NonOriginPreserving => Error::NonOriginPreserving,
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
