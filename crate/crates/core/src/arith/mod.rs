//! Exact and high-precision arithmetic: rationals, binary floats,
//! polynomials, rational functions and truncated series.

pub mod bigfloat;
pub mod cf_approx;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use bigfloat::{BigFloat, Complex};
pub use cf_approx::rational_from_decimal;
pub use parse::{parse_int_poly, parse_poly, parse_ratfunc};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{binomial, fmt_rational, int, parse_rational, rat, Rational};
pub use series::{ratfunc_series, Center, Series};
