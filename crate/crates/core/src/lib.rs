//! Twist deformations of symplectic structures.
//!
//! The crate is layered bottom-up:
//!
//! * [`lie`]: real Lie algebras given by exact rational structure constants,
//!   with builders for `su(n)` in the Chevalley-type basis `X_ij, Y_ij, Z_k`
//!   and for abelian algebras.
//! * [`exterior`]: sparse multivectors in `Λ^k g`, the wedge product, the
//!   algebraic Schouten square of a bivector, the adjoint derivation and the
//!   projection to `Λ(g/h)`.
//! * [`admissibility`]: the matrix `A_t(ξ)` of a twisted complement, its
//!   determinant and scans over sampled moment images.
//! * [`cpn`]: chart geometry on the affine chart `U_1` of `CP^n`: fundamental
//!   fields, Fubini–Study form, moment maps, form/bivector inversion and the
//!   deformation `π − t_M`.
//! * [`volume`]: symplectic volumes of the deformed forms on `CP^1`.
//! * [`grassmann`]: the algebraic check that the canonical r-matrix of
//!   `su(n)` has a Schouten square supported on `h = s(u(r) ⊕ u(n−r))`.
//!
//! Data-parallel loops go through [`exec::Execution`]; with the `parallel`
//! feature disabled every loop runs sequentially.

pub mod admissibility;
pub mod cpn;
pub mod error;
pub mod exec;
pub mod exterior;
pub mod grassmann;
pub mod lie;
pub mod quadrature;
pub mod rational;
pub mod volume;

pub use error::{Error, Result};
pub use exec::Execution;
pub use exterior::{Multivector, SubalgebraBasisSet};
pub use lie::{AlgebraVector, DualPoint, LieAlgebra};
pub use rational::Rational;
