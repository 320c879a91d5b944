//! Exact computation of open Gromov-Witten potentials of orbifold spheres
//! `P1(a,b,c)`.
//!
//! The potential is assembled from three independent pipelines:
//!
//! * hyperbolic signatures: combinatorial enumeration of boundary words by
//!   cut-glue rewriting ([`cutglue`]), converted to monomials by the exact
//!   area and coefficient formulas ([`potential`]), with a numeric triangle
//!   group representation as a triviality oracle ([`grouporacle`]);
//! * the elliptic signatures (2,3,6) and (2,4,4): closed-form lattice sums
//!   with a brute-force shape enumeration oracle ([`closedforms`]);
//! * spherical (ADE) signatures: fixed polynomials ([`closedforms`]).
//!
//! The elliptic coefficient series feed the inverse mirror maps of
//! [`mirrormap`], which are verified against the j-function expansion using
//! exact truncated Laurent arithmetic over Q and Q(cbrt 2) ([`qseries`]).

use std::fmt;

pub mod closedforms;
pub mod cutglue;
pub mod grouporacle;
pub mod mirrormap;
pub mod potential;
pub mod qseries;
pub mod words;

pub use words::{CornerData, CyclicWord, Letter, OrbifoldSignature, SpaceForm};

/// Truncated Laurent series over the rationals.
pub type RatSeries = qseries::LaurentSeries<qseries::Rat>;
/// Truncated Laurent series over Q(cbrt 2).
pub type CubicSeries = qseries::LaurentSeries<qseries::Cubic>;
/// Double-precision triangle group representation (the default oracle).
pub type TriangleRep = grouporacle::TriangleRep<f64>;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Empty letter sequence where a word was required.
    EmptyWord,
    /// Word fails the boundary-word length constraints.
    NotBoundaryWord(String),
    /// Cut word parameters outside the allowed families.
    ForbiddenCut(String),
    /// Enumeration requested for a signature it does not cover.
    NonHyperbolic(String),
    /// Isometry representation failed its defining-relation residuals.
    RepresentationFailed(String),
    /// Area formula degenerates (elliptic signature).
    DegenerateArea,
    /// eta does not divide the raw coefficient: enumeration bug.
    SymmetryViolation(String),
    /// Area is not a non-negative integer in sigma-units.
    NonIntegerArea(String),
    /// Diagram counts came out negative or non-integral.
    UnrealizableCornerData(String),
    /// Fractional power with inconsistent branch data.
    InvalidBranch(String),
    /// Inversion of the zero series.
    DivisionByZeroSeries,
    /// Coefficient requested beyond the guaranteed truncation order.
    BeyondTruncation { wanted: i64, ord: i64 },
    /// Malformed textual or JSON input.
    Parse(String),
    /// Generic domain error (bad CLI arguments, unsupported signature...).
    Domain(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyWord => write!(f, "empty word"),
            Error::NotBoundaryWord(w) => write!(f, "not a boundary word: {w}"),
            Error::ForbiddenCut(m) => write!(f, "forbidden cut: {m}"),
            Error::NonHyperbolic(m) => {
                write!(f, "cut-glue enumeration requires hyperbolic signature: {m}")
            }
            Error::RepresentationFailed(m) => write!(f, "representation failed: {m}"),
            Error::DegenerateArea => write!(f, "area formula degenerate for elliptic"),
            Error::SymmetryViolation(m) => write!(f, "symmetry violation: {m}"),
            Error::NonIntegerArea(m) => write!(f, "non-integer area: {m}"),
            Error::UnrealizableCornerData(m) => write!(f, "unrealizable corner data: {m}"),
            Error::InvalidBranch(m) => write!(f, "invalid branch data: {m}"),
            Error::DivisionByZeroSeries => write!(f, "division by zero series"),
            Error::BeyondTruncation { wanted, ord } => {
                write!(f, "coefficient q^{wanted} beyond guaranteed order {ord}")
            }
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Domain(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
