//! Skeleton ideals of rooted multigraphs and the determinants they are
//! compared against.
//!
//! The crate builds the G-parking function ideal `M_G`, its k-skeleton
//! subideals `M_G^(k)`, the lambda-parking ideals `M_lambda`, the ideals
//! `I_{n,r}^<a>` and `J_H`, counts standard monomials of their Artinian
//! quotients exactly, and evaluates truncated (signless) Laplacian
//! determinants over an exact scalar ring. The [`verify`] module wires
//! these into seeded verification suites.
//!
//! Linear algebra is generic over [`Scalar`]; the aliases below fix the
//! arbitrary-precision instantiations used throughout the suites.

pub mod error;
pub mod formulas;
pub mod ideal;
pub mod linalg;
pub mod multigraph;
pub mod scalar;
pub mod standard;
pub mod verify;

pub use error::{Error, Result};
pub use formulas::LambdaSeq;
pub use ideal::{
    i_n_r_a, j_h, lambda_ideal, m_a, minimalize, parking_ideal, skeleton_ideal, Monomial,
    MonomialIdeal, WeightFunction,
};
pub use linalg::{CharPoly, Matrix};
pub use multigraph::{Laplacians, Multigraph, VertexSet};
pub use scalar::Scalar;
pub use standard::{
    count_lambda_parking, count_standard, count_standard_ie, enumerate_standard, is_g_parking,
    is_lambda_parking, ArtinianBox,
};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
/// Dense square matrix of arbitrary-precision integers.
pub type IntegerMatrix = Matrix<Integer>;
/// Dense square matrix of exact rationals.
pub type RationalMatrix = Matrix<Rational>;
/// Characteristic polynomial with arbitrary-precision coefficients.
pub type IntegerCharPoly = CharPoly<Integer>;
