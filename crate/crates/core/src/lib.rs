//! Exact computations with pseudo-roots of noncommutative polynomials.
//!
//! The algebra is generic over a [`ring::Ring`] (in practice square matrices
//! over a [`scalar::Scalar`]); the graph side works on any finite DAG, with
//! the subset lattices `Γ_n` and partition orders provided in [`hasse`].
//! The aliases below fix the scalars to arbitrary-precision rationals.

pub mod closure;
pub mod divisor;
pub mod error;
pub mod graph;
pub mod hasse;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod pseudoroots;
pub mod ring;
pub mod scalar;
pub mod verify;

pub use scalar::Rational;

pub type RatMatrix = matrix::Matrix<Rational>;
pub type RatPoly = poly::NCPoly<RatMatrix>;
pub type RatRootSet = pseudoroots::RootSet<Rational>;
pub type RatTable = pseudoroots::PseudoRootTable<Rational>;
pub type RatDivisorGraph = divisor::DivisorGraph<RatMatrix>;
