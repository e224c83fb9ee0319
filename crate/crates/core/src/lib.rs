//! Exact computations with linear differential operators over ℚ[z].
//!
//! The crate is organized around a small number of exact algebraic layers:
//!
//! - [`kernel`]: arbitrary-precision rationals, dense polynomials over ℚ,
//!   and normalized rational functions.
//! - [`opalg`]: the Weyl algebra ℚ[z]⟨D⟩ with `D·z = z·D + 1`, its θ = zD
//!   presentation, the difference ring ℚ[x]⟨Δ⟩, and formal Puiseux-log
//!   series with opaque Γ-seed coefficients.
//! - [`parser`]: a small expression grammar for operators and recurrences.
//! - [`newton`]: Newton polygons, slopes, singularity classification and
//!   indicial polynomials.
//! - [`solutions`]: Frobenius bases at finite points, exponential bases at
//!   infinity for slope ≤ 1 operators, p-curvature.
//! - [`arith`]: holonomic recurrences, exact term generation, and growth
//!   diagnostics for coefficient sequences.
//! - [`laplace`]: the formal Laplace/Borel dictionary on power series and
//!   Puiseux-log elements, and operator-level transform pipelines.
//! - [`mellin`]: generalized factorial series and the formal Mellin
//!   correspondence with difference operators.

pub mod arith;
pub mod error;
pub mod kernel;
pub mod laplace;
pub mod mellin;
pub mod newton;
pub mod opalg;
pub mod parser;
pub mod solutions;

pub use error::Error;
pub use kernel::{Poly, Rat, RatFun};
pub use opalg::{DiffOp, DifferenceOp, PuiseuxLogSeries, SeedCombo, ThetaOp};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
