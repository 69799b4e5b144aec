//! Norms, exact differentiation operators and Bernstein-type inequality
//! checks for trigonometric and algebraic polynomials.
//!
//! * [`poly`], [`roots`], [`generate`]: polynomial types, Aberth–Ehrlich
//!   roots and seeded families.
//! * [`norms`]: sup, `L^p`, Mahler, Wiener and Besov (semi)norms.
//! * [`interp`]: the Riesz and Boas differentiation measures.
//! * [`kernels`]: Dirichlet-kernel representations of `P'`, `P''` and `T'`.
//! * [`inequalities`]: one check per inequality or identity, each returning a
//!   [`report::VerificationReport`].
//! * [`sweep`]: seeded, reproducible randomized sweeps over the checks.

pub mod error;
pub mod format;
pub mod generate;
pub mod inequalities;
pub mod interp;
pub mod kernels;
pub mod norms;
pub mod poly;
pub mod quadrature;
pub mod report;
pub mod roots;
pub mod sweep;

pub use error::{Error, Result};
pub use format::{PolyFile, Polynomial};
pub use poly::{AlgebraicPoly, ExponentialSum, TrigPoly, C64};
pub use roots::RootSet;
