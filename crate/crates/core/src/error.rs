use alloc::string::String;
use core::fmt;

use crate::exact::{Int, Rat};

pub type Result<T> = core::result::Result<T, Error>;

/// Which side of a composition law a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `det(x∘)` against `f`.
    Left,
    /// `det(∘x')` against `f'`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the arguments was not met.
    Usage(&'static str),
    /// Malformed form literal.
    Parse {
        token: String,
        reason: &'static str,
    },
    /// All three coefficients vanish.
    ZeroForm,
    /// Generators do not span a rank-2 group.
    Rank {
        rank: usize,
    },
    NotPositiveDefinite,
    /// `F(x∘x') - f(x)f'(x')` is not identically zero.
    Eq1Violation,
    /// The products `e_i ∘ e_j` do not generate `Z^2`.
    SpanViolation,
    NotProportional {
        side: Side,
    },
    /// `Q(x,y) - Δ det(x,y)^2` is not the zero bi-quadratic.
    LemmaViolation,
    /// A numbered clause of the invariant relations failed on an input that
    /// already satisfied the defining identity and the span condition.
    TheoremAViolation {
        clause: &'static str,
    },
    AmbientMismatch {
        left: Int,
        right: Int,
    },
    NonzeroLeadRequired,
    /// Zero discriminant where a nondegenerate form is required.
    DegenerateForm,
    RatioMismatch,
    NotInLattice,
    /// `d'/d` is not the square of a rational.
    NonSquareRatio {
        ratio: Rat,
    },
    ZeroDiscriminant,
    /// The construction produced something that fails verification.
    InternalBug(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Parse { token, reason } => write!(f, "cannot parse `{token}`: {reason}"),
            Error::ZeroForm => f.write_str("zero form"),
            Error::Rank { rank } => write!(f, "generators have rank {rank}, need 2"),
            Error::NotPositiveDefinite => f.write_str("form is not positive definite"),
            Error::Eq1Violation => f.write_str("F(x∘x') = f(x)f'(x') does not hold identically"),
            Error::SpanViolation => f.write_str("products e_i∘e_j do not span Z^2"),
            Error::NotProportional { side: Side::Left } => {
                f.write_str("det(x∘) is not proportional to f")
            }
            Error::NotProportional { side: Side::Right } => {
                f.write_str("det(∘x') is not proportional to f'")
            }
            Error::LemmaViolation => {
                f.write_str("Q(x,y) - Δ det(x,y)^2 is nonzero; this indicates an arithmetic bug")
            }
            Error::TheoremAViolation { clause } => write!(
                f,
                "clause `{clause}` failed on a law satisfying F(x∘x')=f(x)f'(x'); arithmetic bug"
            ),
            Error::AmbientMismatch { left, right } => {
                write!(
                    f,
                    "elements live in different algebras (d={left} vs d={right})"
                )
            }
            Error::NonzeroLeadRequired => f.write_str("leading coefficient must be nonzero"),
            Error::DegenerateForm => f.write_str("form has zero discriminant"),
            Error::RatioMismatch => f.write_str("d(f') != d * r^2"),
            Error::NotInLattice => f.write_str("element is not in the lattice"),
            Error::NonSquareRatio { ratio } => {
                if ratio < &Rat::from_integer(Int::from(0)) {
                    write!(
                        f,
                        "discriminant ratio {ratio} is not a rational square \
                         (discriminants have opposite signs)"
                    )
                } else {
                    write!(f, "discriminant ratio {ratio} is not a rational square")
                }
            }
            Error::ZeroDiscriminant => f.write_str("zero discriminant"),
            Error::InternalBug(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
