//! Noncommutative operator rings: the Weyl algebra ℚ[z]⟨D⟩ with
//! `D·z = z·D + 1`, its θ = zD presentation, the difference ring
//! ℚ[x]⟨Δ⟩ with `Δ·x = x·Δ + Δ + 1`, and formal Puiseux-log series.

mod difference;
mod diffop;
mod ratop;
mod seed;
mod series;
mod theta;

pub use difference::DifferenceOp;
pub use diffop::DiffOp;
pub use ratop::{lclm, right_divide, RatOp};
pub use seed::{SeedCombo, SeedMonomial};
pub use series::{Branch, Direction, PuiseuxLogSeries};
pub use theta::ThetaOp;
