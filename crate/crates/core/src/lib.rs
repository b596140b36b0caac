//! Decide one-variable equations `w(a, t, x) = 1` over the lamplighter group
//! `ℤ₂ ≀ ℤ`, and produce verified solutions.
//!
//! The pipeline: a [`Word`] is traced into δ-parametric numerator and
//! denominator polynomials ([`tracer`]), and the equation reduces to a
//! divisibility question over Laurent polynomials in `GF(2)[z^±]`
//! ([`gf2poly`]) that [`solver`] settles with witness bounds derived from
//! division automata ([`divauto`]).

pub mod divauto;
pub mod gf2poly;
pub mod lamplighter;
pub mod parametric;
pub mod solver;
pub mod stats;
pub mod tracer;
pub mod wordlang;

pub use gf2poly::LaurentPoly;
pub use lamplighter::GroupElement;
pub use parametric::ParametricPoly;
pub use solver::{decide, SolveOutcome, Solver};
pub use wordlang::Word;
