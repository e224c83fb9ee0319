//! Coefficient substrate: exact rationals, dense polynomials over ℚ, and
//! normalized rational functions.

mod poly;
mod rat;
mod ratfun;

pub use poly::Poly;
pub use rat::{
    den_lcm, ln_rat_abs, pochhammer, poly_compose_truncated, rat, rat_from_big, rat_i, Rat,
};
pub use ratfun::RatFun;
