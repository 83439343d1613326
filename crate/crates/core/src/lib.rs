//! Exact asymptotics of powers of monomial ideals.
//!
//! Given monomial ideals `I` and `J ⊆ √I`, this crate computes Samuel's
//! functions `v_I(J, m)` and `w_J(I, n)`, their limits `l_I(J)` and
//! `L_J(I)`, the Rees valuations of `I` from its Newton polyhedron, and the
//! closure of the cone of exponents `(m_1, .., m_k, n)` with
//! `J_1^{m_1}...J_k^{m_k} ⊆ I^n`. Every number is an exact rational.
//!
//! The numeric code is generic over [`Scalar`]; the aliases below fix the
//! arbitrary-precision choice used by the command-line tool.

pub mod cone;
pub mod error;
pub mod limits;
pub mod linalg;
pub mod monomial;
pub mod newton;
pub mod scalar;
pub mod sequence;
pub mod simplex;

pub use error::{Error, Result};
pub use monomial::{MembershipCertificate, Monomial, MonomialIdeal};
pub use newton::{MonomialValuation, ValuationSet, ValuationSource};
pub use scalar::{dot, rat_cmp, rat_make, Scalar};

/// Arbitrary-precision exact fraction.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
pub type RatVector = Vec<Rational>;

pub type LinearProgram = simplex::LinearProgram<Rational>;
pub type LpResult = simplex::LpResult<Rational>;
pub type LimitResult = limits::LimitResult<Rational>;
pub type AlphaMatrix = cone::AlphaMatrix<Rational>;
pub type ConeClosure = cone::ConeClosure<Rational>;
pub type RegionD = cone::RegionD<Rational>;
pub type Mesh = cone::Mesh<Rational>;
pub type SequenceReport = sequence::SequenceReport<Rational>;
pub type CrossCheck = limits::CrossCheck<Rational>;

/// Fixed-width exact fraction for small instances; overflow panics.
pub type SmallRational = num_rational::Ratio<i128>;
